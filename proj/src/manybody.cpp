#include "thermalwp/manybody.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

namespace thermalwp {

namespace {

// Overlap of two equal-width packets from an explicit displacement; lets the
// periodic variant substitute the minimum-image displacement.
cplx overlap_from_displacement(const Vec3& dr, const Vec3& pa, const Vec3& pb, double ls,
                               double hbar) {
  const Vec3 dp = pb - pa;
  const double mag =
      -kPi * dr.squaredNorm() / (ls * ls) - ls * ls * dp.squaredNorm() / (16.0 * kPi * hbar * hbar);
  const double phase = -(pa + pb).dot(dr) / (2.0 * hbar);
  return std::exp(mag) * std::exp(cplx(0.0, phase));
}

Vec3 minimum_image(Vec3 dr, double box_side) {
  for (int i = 0; i < 3; ++i) dr[i] -= box_side * std::round(dr[i] / box_side);
  return dr;
}

Eigen::MatrixXcd gram(const PacketSet& ps, double hbar, double box_side) {
  const auto n = static_cast<Eigen::Index>(ps.size());
  const double ls = ps.width();
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    m(a, a) = 1.0;
    for (Eigen::Index b = a + 1; b < n; ++b) {
      Vec3 dr = ps.packets[b].center - ps.packets[a].center;
      if (box_side > 0.0) dr = minimum_image(dr, box_side);
      m(a, b) = overlap_from_displacement(dr, ps.packets[a].momentum, ps.packets[b].momentum, ls,
                                          hbar);
      m(b, a) = std::conj(m(a, b));
    }
  }
  return m;
}

double norm_from_gram(const Eigen::MatrixXcd& m, Statistics statistics) {
  const cplx v =
      statistics == Statistics::Fermion ? cplx(m.determinant()) : permanent_ryser(m);
  const double scale = std::max(1.0, std::abs(v));
  if (std::abs(v.imag()) > 1e-9 * scale)
    throw std::runtime_error("state_norm: Gram reduction produced a non-real value");
  if (v.real() < -1e-12 * scale)
    throw std::runtime_error("state_norm: Gram reduction produced a negative norm");
  return std::max(0.0, v.real());
}

// Minor of m with one row and one column removed.
Eigen::MatrixXcd strike(const Eigen::MatrixXcd& m, Eigen::Index row, Eigen::Index col) {
  const Eigen::Index n = m.rows();
  Eigen::MatrixXcd out(n - 1, n - 1);
  for (Eigen::Index i = 0, io = 0; i < n; ++i) {
    if (i == row) continue;
    for (Eigen::Index j = 0, jo = 0; j < n; ++j) {
      if (j == col) continue;
      out(io, jo) = m(i, j);
      ++jo;
    }
    ++io;
  }
  return out;
}

}  // namespace

Eigen::MatrixXcd overlap_matrix(const PacketSet& ps, double hbar) { return gram(ps, hbar, 0.0); }

Eigen::MatrixXcd overlap_matrix_periodic(const PacketSet& ps, double box_side, double hbar) {
  if (!(box_side > 0.0) || !std::isfinite(box_side))
    throw std::domain_error("overlap_matrix_periodic: box_side must be positive and finite");
  return gram(ps, hbar, box_side);
}

cplx permanent_ryser(const Eigen::MatrixXcd& m) {
  const int n = static_cast<int>(m.rows());
  if (m.rows() != m.cols()) throw std::invalid_argument("permanent_ryser: matrix must be square");
  if (n == 0) return 1.0;
  if (n > 24) throw std::length_error("permanent_ryser: matrix too large for 2^n enumeration");
  std::vector<cplx> rowsum(static_cast<std::size_t>(n), cplx(0.0));
  cplx total = 0.0;
  std::uint32_t gray = 0;
  for (std::uint32_t k = 1; k < (1u << n); ++k) {
    const std::uint32_t next = k ^ (k >> 1);
    const std::uint32_t changed = next ^ gray;
    const int col = std::countr_zero(changed);
    const double dir = (next & changed) ? 1.0 : -1.0;
    for (int i = 0; i < n; ++i) rowsum[static_cast<std::size_t>(i)] += dir * m(i, col);
    gray = next;
    cplx prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= rowsum[static_cast<std::size_t>(i)];
    total += ((n - std::popcount(next)) % 2 == 0 ? 1.0 : -1.0) * prod;
  }
  return total;
}

double state_norm(const PacketSet& ps, double hbar) {
  return norm_from_gram(gram(ps, hbar, 0.0), ps.statistics);
}

double state_norm_periodic(const PacketSet& ps, double box_side, double hbar) {
  return norm_from_gram(overlap_matrix_periodic(ps, box_side, hbar), ps.statistics);
}

cplx coord_rep_2(const PacketSet& ps, const Vec3& R, const Vec3& R_prime, double hbar) {
  if (ps.size() != 2) throw std::invalid_argument("coord_rep_2: exactly two packets required");
  const double s = statistics_sign(ps.statistics);
  const WavePacket& p1 = ps.packets[0];
  const WavePacket& p2 = ps.packets[1];
  return (packet_amplitude(p1, R_prime, hbar) * packet_amplitude(p2, R, hbar) +
          s * packet_amplitude(p1, R, hbar) * packet_amplitude(p2, R_prime, hbar)) /
         std::numbers::sqrt2;
}

double partition_exact(int n, double volume, const ThermalParams& params, Statistics statistics) {
  if (!(volume > 0.0) || !std::isfinite(volume))
    throw std::domain_error("partition_exact: volume must be positive and finite");
  const double lam = thermal_wavelength(params);
  const double z1 = volume / (lam * lam * lam);
  if (n == 1) return z1;
  if (n == 2)
    return 0.5 * z1 * z1 *
           (1.0 + statistics_sign(statistics) / (z1 * 2.0 * std::numbers::sqrt2));
  throw std::domain_error("partition_exact: closed form available for n in {1, 2} only");
}

cplx two_packet_g1(const PacketSet& ps, const SpacetimePoint& x1, const SpacetimePoint& x2,
                   const ThermalParams& params) {
  if (ps.size() != 2) throw std::invalid_argument("two_packet_g1: exactly two packets required");
  if (!ps.packets[0].momentum.isZero(0.0) || !ps.packets[1].momentum.isZero(0.0))
    throw std::invalid_argument(
        "two_packet_g1: closed form covers zero momenta; use n_packet_g1 for moving packets");
  const double s = statistics_sign(ps.statistics);
  const double ls = ps.width();
  const double m12 =
      std::exp(-kPi * (ps.packets[0].center - ps.packets[1].center).squaredNorm() / (ls * ls));
  const cplx f1a = propagated_amplitude(ps.packets[0], x1, params);
  const cplx f2a = propagated_amplitude(ps.packets[1], x1, params);
  const cplx f1b = propagated_amplitude(ps.packets[0], x2, params);
  const cplx f2b = propagated_amplitude(ps.packets[1], x2, params);
  return f1a * std::conj(f1b) + f2a * std::conj(f2b) +
         s * m12 * (f1a * std::conj(f2b) + f2a * std::conj(f1b));
}

cplx n_packet_g1(const PacketSet& ps, const SpacetimePoint& x1, const SpacetimePoint& x2,
                 const ThermalParams& params, std::size_t max_packets) {
  const auto n = static_cast<Eigen::Index>(ps.size());
  if (ps.size() > max_packets)
    throw std::length_error("n_packet_g1: packet count exceeds the configured maximum");
  Eigen::VectorXcd f1(n), f2c(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    f1(i) = propagated_amplitude(ps.packets[static_cast<std::size_t>(i)], x1, params);
    f2c(i) = std::conj(propagated_amplitude(ps.packets[static_cast<std::size_t>(i)], x2, params));
  }
  if (n == 1) return f1(0) * f2c(0);
  const Eigen::MatrixXcd m = overlap_matrix(ps, params.hbar);
  const bool fermion = ps.statistics == Statistics::Fermion;
  cplx total = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index l = 0; l < n; ++l) {
      const Eigen::MatrixXcd sub = strike(m, j, l);
      const cplx k = fermion ? cplx(sub.determinant()) : permanent_ryser(sub);
      const double sign = fermion && ((j + l) % 2 != 0) ? -1.0 : 1.0;
      total += sign * k * f1(l) * f2c(j);
    }
  }
  return total;
}

std::vector<double> gc_weights(double mu, const std::vector<double>& z_list) {
  if (z_list.empty()) throw std::invalid_argument("gc_weights: need at least one entry");
  std::vector<double> logw(z_list.size());
  for (std::size_t i = 0; i < z_list.size(); ++i) {
    if (!(z_list[i] > 0.0) || !std::isfinite(z_list[i]))
      throw std::domain_error("gc_weights: partition values must be positive and finite");
    logw[i] = -mu * static_cast<double>(i + 1) + std::log(z_list[i]);
  }
  const double top = *std::max_element(logw.begin(), logw.end());
  double sum = 0.0;
  for (double& w : logw) {
    w = std::exp(w - top);
    sum += w;
  }
  for (double& w : logw) w /= sum;
  return logw;
}

}  // namespace thermalwp
