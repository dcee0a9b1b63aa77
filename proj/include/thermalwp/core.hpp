#pragma once

#include "thermalwp/types.hpp"

#include <limits>
#include <numbers>

namespace thermalwp {

/// Thermal de Broglie wavelength lambda = sqrt(2 pi hbar^2 beta / m).
inline double thermal_wavelength(const ThermalParams& params) {
  return std::sqrt(2.0 * kPi * params.hbar * params.hbar * params.beta / params.mass);
}

/// Unit-integral Gaussian kernel (2 sqrt(2)/lambda^3) exp(-2 pi |dr|^2 / lambda^2).
/// Forms a delta family as lambda -> 0+.
inline double gaussian_kernel(const Vec3& dr, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::domain_error("gaussian_kernel: lambda must be positive and finite");
  const double l3 = lambda * lambda * lambda;
  return 2.0 * std::numbers::sqrt2 / l3 * std::exp(-2.0 * kPi * dr.squaredNorm() / (lambda * lambda));
}

/// Normalized packet amplitude at r_prime:
///   (2 sqrt(2)/lambda_s^{3/2}) exp(i p.(r'-r)/hbar) exp(-2 pi |r'-r|^2 / lambda_s^2).
inline cplx packet_amplitude(const WavePacket& wp, const Vec3& r_prime, double hbar = 1.0) {
  const Vec3 u = r_prime - wp.center;
  const double ls = wp.width;
  const double gauss = std::exp(-2.0 * kPi * u.squaredNorm() / (ls * ls));
  const double norm = 2.0 * std::numbers::sqrt2 / (ls * std::sqrt(ls));
  return norm * gauss * std::exp(cplx(0.0, wp.momentum.dot(u) / hbar));
}

/// Isotropic Gaussian momentum density (lambda_m/(2 pi hbar))^3
/// exp(-lambda_m^2 p^2 / (4 pi hbar^2)); integrates to one. Per-component
/// variance is 2 pi hbar^2 / lambda_m^2. Requires a finite lambda_m; the
/// degenerate point-mass split is handled by callers.
inline double momentum_pdf(const Vec3& p, double lambda_m, double hbar = 1.0) {
  if (!(lambda_m > 0.0) || !std::isfinite(lambda_m))
    throw std::domain_error("momentum_pdf: lambda_m must be positive and finite");
  const double pref = lambda_m / (2.0 * kPi * hbar);
  return pref * pref * pref *
         std::exp(-lambda_m * lambda_m * p.squaredNorm() / (4.0 * kPi * hbar * hbar));
}

/// Standard deviation of each momentum component under momentum_pdf.
inline double momentum_sigma(double lambda_m, double hbar = 1.0) {
  return std::sqrt(2.0 * kPi) * hbar / lambda_m;
}

/// Split the thermal wavelength by the width-temperature fraction
/// ts_fraction = T_s / T in (0, 1]: lambda_s = lambda/sqrt(ts),
/// lambda_m = lambda/sqrt(1-ts). ts = 1 yields the degenerate split with
/// lambda_m = +inf (momenta identically zero).
inline WidthSplit split_width(const ThermalParams& params, double ts_fraction) {
  if (!(ts_fraction > 0.0) || ts_fraction > 1.0)
    throw std::domain_error("split_width: ts_fraction must lie in (0, 1]");
  const double lambda = thermal_wavelength(params);
  WidthSplit s;
  s.lambda = lambda;
  s.ts_fraction = ts_fraction;
  s.lambda_s = lambda / std::sqrt(ts_fraction);
  s.lambda_m = ts_fraction == 1.0 ? std::numeric_limits<double>::infinity()
                                  : lambda / std::sqrt(1.0 - ts_fraction);
  return s;
}

/// Closed form of the position-integrated kernel pair product:
///   integral d^3r phi_{r,lambda}(r') conj(phi_{r,lambda}(r'')) = exp(-pi |r'-r''|^2 / lambda^2).
inline double kernel_pair_integral(const Vec3& r_prime, const Vec3& r_dprime, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::domain_error("kernel_pair_integral: lambda must be positive and finite");
  return std::exp(-kPi * (r_prime - r_dprime).squaredNorm() / (lambda * lambda));
}

/// Overlap <a|b> of two equal-width packets. Closed form:
///   exp(-pi |dr|^2/lambda_s^2) exp(-lambda_s^2 |dp|^2/(16 pi hbar^2))
///   exp(-i (p_a+p_b).dr / (2 hbar)),   dr = r_b - r_a, dp = p_b - p_a.
inline cplx packet_overlap(const WavePacket& a, const WavePacket& b, double hbar = 1.0) {
  if (a.width != b.width)
    throw std::invalid_argument("packet_overlap: packets must share one width");
  const double ls = a.width;
  const Vec3 dr = b.center - a.center;
  const Vec3 dp = b.momentum - a.momentum;
  const double mag = -kPi * dr.squaredNorm() / (ls * ls) -
                     ls * ls * dp.squaredNorm() / (16.0 * kPi * hbar * hbar);
  const double phase = -(a.momentum + b.momentum).dot(dr) / (2.0 * hbar);
  return std::exp(mag) * std::exp(cplx(0.0, phase));
}

/// Position spread (per axis) of a packet of width lambda_s.
inline double packet_sigma_x(double lambda_s) { return lambda_s / std::sqrt(8.0 * kPi); }

/// Momentum spread (per axis) of a packet of width lambda_s.
inline double packet_sigma_p(double lambda_s, double hbar = 1.0) {
  return std::sqrt(2.0 * kPi) * hbar / lambda_s;
}

/// Full width at half maximum of the packet's probability density |phi|^2.
inline double packet_fwhm(double lambda_s) {
  return lambda_s * std::sqrt(std::log(2.0) / kPi);
}

}  // namespace thermalwp
