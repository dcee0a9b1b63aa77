#pragma once

#include "thermalwp/core.hpp"

#include <string>

namespace thermalwp {

/// Periodic plane-wave mode grid in a cubic box of side L: per axis
/// k = 2 pi n / L with n in [-n_cutoff, n_cutoff], so beta E_n per axis is
/// pi (n lambda / L)^2.
struct PlaneWaveBasis {
  double box_side;
  int n_cutoff;

  PlaneWaveBasis(double box_side_, int n_cutoff_) : box_side(box_side_), n_cutoff(n_cutoff_) {
    if (!(box_side > 0.0) || !std::isfinite(box_side))
      throw std::domain_error("PlaneWaveBasis: box_side must be positive and finite");
    if (n_cutoff < 1) throw std::domain_error("PlaneWaveBasis: n_cutoff must be at least 1");
  }

  double volume() const { return box_side * box_side * box_side; }
};

namespace detail {

// beta E per axis for mode n: pi (n lambda / L)^2.
inline double mode_exponent(int n, double lambda_over_box) {
  const double x = static_cast<double>(n) * lambda_over_box;
  return kPi * x * x;
}

// The largest dropped Boltzmann weight must stay below 1e-12 of the retained
// 1D sum; otherwise refuse, suggesting a sufficient cutoff.
inline void require_converged_cutoff(int n_cutoff, double lambda_over_box, double axis_sum) {
  const double dropped = std::exp(-mode_exponent(n_cutoff + 1, lambda_over_box));
  if (dropped < 1e-12 * axis_sum) return;
  const int needed = static_cast<int>(
      std::ceil(std::sqrt(std::log(std::max(axis_sum, 1.0) * 1e12) / kPi) / lambda_over_box));
  throw std::runtime_error("plane-wave cutoff too small: n_cutoff >= " + std::to_string(needed) +
                           " is required for a 1e-12 mode-sum truncation");
}

// 1D Boltzmann mode sum sum_n exp(-pi (n lambda/L)^2), n in [-nc, nc].
inline double axis_partition(int n_cutoff, double lambda_over_box) {
  double sum = 1.0;
  for (int n = 1; n <= n_cutoff; ++n) sum += 2.0 * std::exp(-mode_exponent(n, lambda_over_box));
  require_converged_cutoff(n_cutoff, lambda_over_box, sum);
  return sum;
}

}  // namespace detail

/// Single-particle partition function over the mode grid, computed as the
/// cube of the 1D sum (the 3D sum separates). Refuses with a cutoff estimate
/// when the truncation would exceed 1e-12 relative.
inline double plane_wave_partition(const PlaneWaveBasis& basis, const ThermalParams& params) {
  const double z1d = detail::axis_partition(basis.n_cutoff, thermal_wavelength(params) / basis.box_side);
  return z1d * z1d * z1d;
}

/// Thermal first-order correlation from the explicit eigenstate sum,
///   (1/Z) sum_k e^{-beta E_k} e^{i k . dR} e^{i E_k dt / hbar} / V,
/// a function of the separations only. With dR = R1 - R2 and dt = t2 - t1
/// this matches thermal_g1_single(x1, x2, ...) as a complex number.
inline cplx eigenstate_g1(const PlaneWaveBasis& basis, const ThermalParams& params, const Vec3& dR,
                          double dt) {
  const double lambda_over_box = thermal_wavelength(params) / basis.box_side;
  // Per-axis exponent -beta E_n (1 - i dt / (beta hbar)): the modulus of every
  // term is its Boltzmann weight, so the real 1D sum sets the cutoff scale.
  const cplx decay(1.0, -dt / (params.beta * params.hbar));
  cplx weighted = 1.0;
  double z1d_cubed = 1.0;
  for (int axis = 0; axis < 3; ++axis) {
    cplx s = 1.0;
    double z1d = 1.0;
    for (int n = 1; n <= basis.n_cutoff; ++n) {
      const double e = detail::mode_exponent(n, lambda_over_box);
      const double phase = 2.0 * kPi * static_cast<double>(n) * dR[axis] / basis.box_side;
      s += 2.0 * std::exp(-e * decay) * std::cos(phase);
      z1d += 2.0 * std::exp(-e);
    }
    detail::require_converged_cutoff(basis.n_cutoff, lambda_over_box, z1d);
    weighted *= s;
    z1d_cubed *= z1d;
  }
  return weighted / (z1d_cubed * basis.volume());
}

}  // namespace thermalwp
