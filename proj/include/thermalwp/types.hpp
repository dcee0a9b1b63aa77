#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace thermalwp {

using Vec3 = Eigen::Vector3d;
using Vec3c = Eigen::Vector3cd;
using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr std::size_t kDefaultMaxPackets = 8;

enum class Statistics { Fermion, Boson };

/// Exchange sign: -1 for fermions, +1 for bosons.
inline double statistics_sign(Statistics s) {
  return s == Statistics::Fermion ? -1.0 : 1.0;
}

/// Single-species free-gas parameters. Reduced units (hbar = m = kB = 1) are
/// the default; SI values may be supplied instead, all formulas carry the
/// constants explicitly.
struct ThermalParams {
  double beta = 1.0;  // inverse temperature, 1/(kB T)
  double mass = 1.0;
  double hbar = 1.0;
  double kB = 1.0;

  ThermalParams() = default;
  ThermalParams(double beta_, double mass_, double hbar_ = 1.0, double kB_ = 1.0)
      : beta(beta_), mass(mass_), hbar(hbar_), kB(kB_) {
    if (!(beta > 0.0) || !std::isfinite(beta) || !(mass > 0.0) || !std::isfinite(mass) ||
        !(hbar > 0.0) || !(kB > 0.0))
      throw std::domain_error("ThermalParams: beta, mass, hbar, kB must be positive and finite");
  }

  double temperature() const { return 1.0 / (kB * beta); }
};

/// Gaussian wave packet: amplitude centered at `center` with mean momentum
/// `momentum` and real-space 1/e-ish width `width` (the lambda_s scale).
struct WavePacket {
  Vec3 center = Vec3::Zero();
  Vec3 momentum = Vec3::Zero();
  double width = 1.0;

  WavePacket() = default;
  WavePacket(const Vec3& center_, const Vec3& momentum_, double width_)
      : center(center_), momentum(momentum_), width(width_) {
    if (!(width > 0.0) || !std::isfinite(width))
      throw std::domain_error("WavePacket: width must be positive and finite");
    if (!center.allFinite() || !momentum.allFinite())
      throw std::domain_error("WavePacket: center and momentum must be finite");
  }
};

/// Partition of the thermal wavelength into a packet width lambda_s and a
/// momentum-spread width lambda_m with lambda^-2 = lambda_s^-2 + lambda_m^-2.
/// ts_fraction = 1 puts all of the wavelength into the packet width; lambda_m
/// is then +infinity and the momentum distribution degenerates to a point
/// mass at p = 0.
struct WidthSplit {
  double lambda = 0.0;    // parent thermal wavelength
  double lambda_s = 0.0;  // packet width
  double lambda_m = 0.0;  // momentum-spread width; +inf for ts_fraction = 1
  double ts_fraction = 1.0;

  bool degenerate_momentum() const { return !std::isfinite(lambda_m); }
};

/// Space-time evaluation point for correlation functions.
struct SpacetimePoint {
  Vec3 position = Vec3::Zero();
  double time = 0.0;

  SpacetimePoint() = default;
  SpacetimePoint(const Vec3& position_, double time_) : position(position_), time(time_) {
    if (!position.allFinite() || !std::isfinite(time))
      throw std::domain_error("SpacetimePoint: position and time must be finite");
  }
};

/// Dimensionless time b = t / (beta hbar).
struct ReducedTime {
  double b = 0.0;
};

inline ReducedTime reduced_time(double t, const ThermalParams& params) {
  return ReducedTime{t / (params.beta * params.hbar)};
}

/// A fixed collection of equal-width packets with an exchange statistics tag.
struct PacketSet {
  std::vector<WavePacket> packets;
  Statistics statistics = Statistics::Fermion;

  PacketSet() = default;
  PacketSet(std::vector<WavePacket> packets_, Statistics statistics_,
            std::size_t max_packets = kDefaultMaxPackets)
      : packets(std::move(packets_)), statistics(statistics_) {
    if (packets.empty())
      throw std::invalid_argument("PacketSet: need at least one packet");
    if (packets.size() > max_packets)
      throw std::invalid_argument("PacketSet: packet count exceeds the supported maximum");
    const double w = packets.front().width;
    for (const auto& p : packets)
      if (p.width != w)
        throw std::invalid_argument("PacketSet: all packets must share one width");
  }

  std::size_t size() const { return packets.size(); }
  double width() const { return packets.front().width; }
};

}  // namespace thermalwp
