#pragma once

#include "thermalwp/core.hpp"

namespace thermalwp {

/// Freely propagated packet amplitude at the space-time point x:
///
///   F(R, t) = (2 sqrt2 / lambda_s^{3/2}) D^{-3/2} exp(-(lambda_s p / hbar)^2 / (8 pi))
///             exp(-(2 pi / D) z.z),
///   z = (R - r)/lambda_s - (i/(4 pi)) lambda_s p / hbar,
///   D = 1 + 2 i b (lambda/lambda_s)^2,   b = t / (beta hbar),
///
/// i.e. the exact forward free evolution of packet_amplitude (momentum
/// representation multiplied by exp(-i hbar k^2 t / (2m))). z.z is the
/// componentwise complex square (no conjugation); the complex power -3/2 is
/// the principal branch (Re D = 1 > 0, so the branch cut is never crossed).
/// The dilation carries the packet's own width: D reduces to 1 + 2ib only in
/// the undivided case lambda_s = lambda. At t = 0 this is packet_amplitude
/// exactly.
inline cplx propagated_amplitude(const WavePacket& wp, const SpacetimePoint& x,
                                 const ThermalParams& params) {
  if (x.time == 0.0) return packet_amplitude(wp, x.position, params.hbar);
  const double ls = wp.width;
  const double lam = thermal_wavelength(params);
  const double b = x.time / (params.beta * params.hbar);
  const cplx D(1.0, 2.0 * b * lam * lam / (ls * ls));
  const Vec3 u = (x.position - wp.center) / ls;
  const Vec3 c = (ls / (4.0 * kPi * params.hbar)) * wp.momentum;
  // z.z = |u|^2 - |c|^2 - 2 i u.c
  const cplx zz(u.squaredNorm() - c.squaredNorm(), -2.0 * u.dot(c));
  const double kin = ls * ls * wp.momentum.squaredNorm() /
                     (8.0 * kPi * params.hbar * params.hbar);
  const double norm = 2.0 * std::numbers::sqrt2 / (ls * std::sqrt(ls));
  return norm * std::pow(D, -1.5) * std::exp(-kin) * std::exp(-2.0 * kPi * zz / D);
}

/// Single-packet first-order correlation, the product form
///   G(x1; x2) = F(x1) conj(F(x2)).
inline cplx packet_g1(const WavePacket& wp, const SpacetimePoint& x1, const SpacetimePoint& x2,
                      const ThermalParams& params) {
  return propagated_amplitude(wp, x1, params) * std::conj(propagated_amplitude(wp, x2, params));
}

/// Closed form of the single-particle thermal correlation reconstructed from
/// the packet decomposition:
///
///   G(x1; x2) = (1/V) (1 + i db)^{-3/2} exp(-pi |dR|^2 / (lambda^2 (1 + i db))),
///   db = (t1 - t2) / (beta hbar),  dR = R2 - R1.
///
/// The phase orientation (t1 - t2) is the one consistent with averaging
/// packet_g1 over the packet ensemble; its modulus is even in db.
inline cplx thermal_g1_single(const SpacetimePoint& x1, const SpacetimePoint& x2,
                              const ThermalParams& params, double volume) {
  if (!(volume > 0.0) || !std::isfinite(volume))
    throw std::domain_error("thermal_g1_single: volume must be positive and finite");
  const double lam = thermal_wavelength(params);
  const double db = (x1.time - x2.time) / (params.beta * params.hbar);
  const cplx den(1.0, db);
  const double dr2 = (x2.position - x1.position).squaredNorm();
  return std::pow(den, -1.5) * std::exp(-kPi * dr2 / (lam * lam) / den) / volume;
}

}  // namespace thermalwp
