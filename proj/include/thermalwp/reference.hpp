#pragma once

#include "thermalwp/correlation.hpp"
#include "thermalwp/manybody.hpp"

namespace thermalwp {

/// Free propagation of a packet computed spectrally, as an independent
/// reference for propagated_amplitude: per axis, the amplitude is sampled on
/// a grid of `grid_points` points spanning +-`half_width_in_widths` packet
/// widths around the center, transformed to momentum space (direct O(M^2)
/// sums — a reference, not a hot path), each mode is multiplied by the exact
/// free phase exp(-i hbar k^2 t / (2 m)), and the semidiscrete inverse is
/// evaluated at the target point. Wrap-around and k-truncation errors stay
/// below ~1e-9 relative for |p| width / hbar <= 5 and targets well inside
/// the grid.
cplx spectral_free_evolution(const WavePacket& wp, const SpacetimePoint& x,
                             const ThermalParams& params, int grid_points = 128,
                             double half_width_in_widths = 8.0);

/// State norm by explicit sum over all N! permutations of overlap products
/// (Leibniz form, fermion signs from permutation parity) — the brute-force
/// reference for the determinant/permanent path. N <= 6.
double brute_force_norm(const PacketSet& ps, double hbar = 1.0);

/// Residual of the width-diffusion identity
///   d Psi / d nu = (hbar^2 / (4 m)) laplacian Psi
/// for Psi(r, nu) = gaussian_kernel(r - r0, lambda(nu)) with
/// lambda(nu) = sqrt(2 pi hbar^2 nu / m), measured by 4th-order central
/// differences: `spacing` in each space direction, nu/200 in nu. Returns the
/// largest |lhs - rhs| over a fixed probe set spanning ~1.6 current widths,
/// normalized by the largest term magnitude over the same set.
double diffusion_residual(const ThermalParams& params, double nu, double spacing);

}  // namespace thermalwp
