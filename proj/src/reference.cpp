#include "thermalwp/reference.hpp"

#include <algorithm>
#include <numeric>

namespace thermalwp {

namespace {

// Per-axis packet factor: the cube root of the normalization times the 1D
// phase/Gaussian profile, so the product over axes is packet_amplitude.
cplx axis_packet_factor(double u, double p, double ls, double hbar) {
  const double norm = std::numbers::sqrt2 / std::sqrt(ls);
  return norm * std::exp(-2.0 * kPi * u * u / (ls * ls)) * std::exp(cplx(0.0, p * u / hbar));
}

// Parity of a permutation by counting inversions (n <= 6, O(n^2) is fine).
int permutation_sign(const std::vector<int>& perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

cplx spectral_free_evolution(const WavePacket& wp, const SpacetimePoint& x,
                             const ThermalParams& params, int grid_points,
                             double half_width_in_widths) {
  if (grid_points < 16 || grid_points % 2 != 0)
    throw std::domain_error("spectral_free_evolution: grid_points must be even and >= 16");
  const double ls = wp.width;
  const double half_width = half_width_in_widths * ls;
  const double dx = 2.0 * half_width / grid_points;
  cplx value = 1.0;
  for (int axis = 0; axis < 3; ++axis) {
    // Offset sample grid around the packet center.
    std::vector<cplx> f(static_cast<std::size_t>(grid_points));
    for (int j = 0; j < grid_points; ++j) {
      const double u = -half_width + (j + 0.5) * dx;
      f[static_cast<std::size_t>(j)] = axis_packet_factor(u, wp.momentum[axis], ls, params.hbar);
    }
    // Forward transform, exact free phase per mode, semidiscrete inverse at
    // the target coordinate (relative to the packet center).
    const double target = x.position[axis] - wp.center[axis];
    cplx axis_value = 0.0;
    for (int m = -grid_points / 2; m < grid_points / 2; ++m) {
      const double k = kPi * m / half_width;
      cplx f_tilde = 0.0;
      for (int j = 0; j < grid_points; ++j) {
        const double u = -half_width + (j + 0.5) * dx;
        f_tilde += f[static_cast<std::size_t>(j)] * std::exp(cplx(0.0, -k * u));
      }
      f_tilde *= dx;
      const double phase = -params.hbar * k * k * x.time / (2.0 * params.mass);
      axis_value += f_tilde * std::exp(cplx(0.0, phase + k * target));
    }
    value *= axis_value / (2.0 * half_width);
  }
  return value;
}

double brute_force_norm(const PacketSet& ps, double hbar) {
  const auto n = static_cast<int>(ps.size());
  if (n > 6) throw std::length_error("brute_force_norm: factorial sum limited to N <= 6");
  const Eigen::MatrixXcd m = overlap_matrix(ps, hbar);
  const bool fermion = ps.statistics == Statistics::Fermion;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  cplx total = 0.0;
  do {
    cplx prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= m(i, perm[static_cast<std::size_t>(i)]);
    total += static_cast<double>(fermion ? permutation_sign(perm) : 1) * prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total.real();
}

double diffusion_residual(const ThermalParams& params, double nu, double spacing) {
  if (!(nu > 0.0) || !(spacing > 0.0))
    throw std::domain_error("diffusion_residual: nu and spacing must be positive");
  const double h = spacing;
  const double k = nu / 200.0;
  const double diffusivity = params.hbar * params.hbar / (4.0 * params.mass);
  const auto width = [&](double nu_val) {
    return std::sqrt(2.0 * kPi * params.hbar * params.hbar * nu_val / params.mass);
  };
  const auto psi = [&](const Vec3& r, double nu_val) { return gaussian_kernel(r, width(nu_val)); };

  // Probe points spread over ~1.6 current widths in skew directions, so all
  // three axis stencils are exercised.
  const double w = width(nu);
  const Vec3 probes[6] = {Vec3(0.0, 0.0, 0.0) * w,     Vec3(0.3, 0.1, -0.2) * w,
                          Vec3(0.5, 0.4, 0.2) * w,     Vec3(0.8, -0.3, 0.5) * w,
                          Vec3(1.0, 0.7, -0.4) * w,    Vec3(1.2, -0.9, 0.6) * w};

  double worst_gap = 0.0;
  double scale = 0.0;
  for (const Vec3& r : probes) {
    // 4th-order central first difference in nu.
    const double dnu = (psi(r, nu - 2.0 * k) - 8.0 * psi(r, nu - k) + 8.0 * psi(r, nu + k) -
                        psi(r, nu + 2.0 * k)) /
                       (12.0 * k);
    // 4th-order central second differences per axis.
    double lap = 0.0;
    for (int axis = 0; axis < 3; ++axis) {
      Vec3 step = Vec3::Zero();
      step[axis] = h;
      lap += (-psi(r + 2.0 * step, nu) + 16.0 * psi(r + step, nu) - 30.0 * psi(r, nu) +
              16.0 * psi(r - step, nu) - psi(r - 2.0 * step, nu)) /
             (12.0 * h * h);
    }
    const double rhs = diffusivity * lap;
    worst_gap = std::max(worst_gap, std::abs(dnu - rhs));
    scale = std::max({scale, std::abs(dnu), std::abs(rhs)});
  }
  return worst_gap / scale;
}

}  // namespace thermalwp
