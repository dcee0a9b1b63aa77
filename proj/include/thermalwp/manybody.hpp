#pragma once

#include "thermalwp/correlation.hpp"

namespace thermalwp {

/// Gram matrix M_ab = <phi_a|phi_b> of the packet set. Hermitian with unit
/// diagonal and positive semidefinite.
Eigen::MatrixXcd overlap_matrix(const PacketSet& ps, double hbar = 1.0);

/// Gram matrix with pair displacements wrapped by the minimum-image rule in a
/// cubic box of the given side (packets on a torus). Used by the Monte Carlo
/// partition estimators so that boundary effects vanish to exponential
/// accuracy instead of polluting the exchange statistics.
Eigen::MatrixXcd overlap_matrix_periodic(const PacketSet& ps, double box_side, double hbar = 1.0);

/// Permanent by Ryser's formula with Gray-code subset updates, O(2^n n).
cplx permanent_ryser(const Eigen::MatrixXcd& m);

/// Norm <Phi|Phi> of the (unnormalized) N-packet state: determinant of the
/// Gram matrix for fermions, permanent for bosons. Real and nonnegative;
/// tiny negative round-off is clamped to zero, anything below -1e-12 raises
/// an internal consistency error.
double state_norm(const PacketSet& ps, double hbar = 1.0);

/// state_norm with minimum-image pair displacements (see overlap_matrix_periodic).
double state_norm_periodic(const PacketSet& ps, double box_side, double hbar = 1.0);

/// Two-particle coordinate representation
///   (1/sqrt2) (phi_1(R') phi_2(R) -+ phi_1(R) phi_2(R')),
/// upper sign fermions. Requires exactly two packets.
cplx coord_rep_2(const PacketSet& ps, const Vec3& R, const Vec3& R_prime, double hbar = 1.0);

/// Closed-form canonical partition function for one or two particles:
///   Z(1) = V/lambda^3,
///   Z(2) = (1/2) (V/lambda^3)^2 (1 -+ (lambda^3/V)/(2 sqrt2)),
/// upper sign fermions. Valid in the dilute regime V >> lambda^3.
double partition_exact(int n, double volume, const ThermalParams& params, Statistics statistics);

/// First-order correlation of the unnormalized two-packet state with zero
/// momenta:
///   G(x1; x2) = G_1(x1; x2) + G_2(x1; x2)
///               -+ exp(-pi |r1-r2|^2/lambda_s^2)
///                  (F_1(x1) conj(F_2(x2)) + F_2(x1) conj(F_1(x2))),
/// upper sign fermions, G_i = packet_g1 of packet i. Nonzero momenta are
/// routed to n_packet_g1.
cplx two_packet_g1(const PacketSet& ps, const SpacetimePoint& x1, const SpacetimePoint& x2,
                   const ThermalParams& params);

/// First-order correlation of the unnormalized N-packet state, general
/// momenta. Cofactor (fermion) / permanental-minor (boson) expansion of the
/// static Gram matrix bordered by propagated amplitudes:
///   G(x1; x2) = sum_{l,j} s^{l+j} K_jl F_l(x1) conj(F_j(x2)),
/// K_jl the determinant/permanent of the Gram minor with row j and column l
/// removed, s the exchange sign. Reduces to packet_g1 for N = 1 and to
/// two_packet_g1 for N = 2 with zero momenta.
cplx n_packet_g1(const PacketSet& ps, const SpacetimePoint& x1, const SpacetimePoint& x2,
                 const ThermalParams& params, std::size_t max_packets = kDefaultMaxPackets);

/// n_packet_g1 divided by the state norm — the plotting convention when a
/// per-state normalized correlation is wanted. Degenerate states (fermion
/// norm 0) make this undefined; callers decide how to present that.
inline cplx n_packet_g1_normalized(const PacketSet& ps, const SpacetimePoint& x1,
                                   const SpacetimePoint& x2, const ThermalParams& params,
                                   std::size_t max_packets = kDefaultMaxPackets) {
  return n_packet_g1(ps, x1, x2, params, max_packets) / state_norm(ps, params.hbar);
}

/// Grand-canonical weights w_i proportional to exp(-mu N_i) Z_i with
/// N_i = i+1 for the given single-N partition functions Z_i, normalized to
/// sum to one. Computed in log space, immune to exp overflow.
std::vector<double> gc_weights(double mu, const std::vector<double>& z_list);

}  // namespace thermalwp
