#pragma once

#include "thermalwp/manybody.hpp"
#include "thermalwp/rng.hpp"

#include <cstdint>

namespace thermalwp {

/// One particle drawn from the decomposition measure: position uniform over
/// the origin-centered cube, momentum isotropic normal with per-component
/// sigma sqrt(2 pi) hbar / lambda_m (exactly zero for the degenerate split).
struct ParticleDraw {
  Vec3 position;
  Vec3 momentum;
};

struct PacketEnsembleSample {
  std::vector<ParticleDraw> draws;
};

/// Monte Carlo mean with its standard error.
struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
};

/// Complex Monte Carlo mean; std_error is the larger of the real/imaginary
/// component standard errors.
struct McEstimateC {
  cplx value{0.0, 0.0};
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
};

/// Draw n particles for sample `index` of the stream: positions i.i.d.
/// uniform over the cube [-L/2, L/2)^3, momenta i.i.d. normals from the
/// split's momentum law. Particle i consumes slots [6i, 6i+6) of the index,
/// so draws are independent across (index, particle).
PacketEnsembleSample sample_ensemble(int n, double box_side, const WidthSplit& split,
                                     const RngStream& rng, std::uint64_t index = 0,
                                     double hbar = 1.0);

/// Sample mean of packet_g1 over the single-particle measure (positions in
/// the cube of volume `volume`, momenta from the split's momentum law) —
/// the Monte Carlo reconstruction of thermal_g1_single. The split must
/// belong to `params` (same thermal wavelength).
McEstimateC mc_thermal_g1(const SpacetimePoint& x1, const SpacetimePoint& x2,
                          const ThermalParams& params, double volume, const WidthSplit& split,
                          std::uint64_t n_samples, const RngStream& rng, int n_threads = 1);

/// Sample mean of the N-packet state norm over the measure. Pair
/// displacements in the overlap matrix are wrapped by the minimum-image rule
/// (see overlap_matrix_periodic), so box-edge effects are exponentially small
/// rather than O(lambda_s / L).
McEstimate mc_norm_mean(int n, double box_side, const WidthSplit& split, Statistics statistics,
                        std::uint64_t n_samples, const RngStream& rng, int n_threads = 1,
                        double hbar = 1.0);

/// Monte Carlo partition function: (1/N!) (V/lambda^3)^N times the sample
/// mean of the state norm. n = 1 gives exactly V/lambda^3 with zero error.
McEstimate partition_mc(int n, double volume, const WidthSplit& split, Statistics statistics,
                        const RngStream& rng, std::uint64_t n_samples, int n_threads = 1);

}  // namespace thermalwp
