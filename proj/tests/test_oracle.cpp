#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "thermalwp/plane_waves.hpp"
#include "thermalwp/reference.hpp"

#include <string>

using namespace thermalwp;

namespace {
const ThermalParams unit_params(1.0 / (2.0 * kPi), 1.0);  // lambda = 1
}

TEST_CASE("mode-sum partition function") {
  SUBCASE("dilute box: V/lambda^3 to machine precision") {
    const PlaneWaveBasis basis(10.0, 40);
    CHECK(plane_wave_partition(basis, unit_params) == doctest::Approx(1000.0).epsilon(1e-12));
  }
  SUBCASE("tight box agrees with the explicit triple sum") {
    const PlaneWaveBasis basis(1.0, 6);
    double triple = 0.0;
    for (int nx = -6; nx <= 6; ++nx)
      for (int ny = -6; ny <= 6; ++ny)
        for (int nz = -6; nz <= 6; ++nz)
          triple += std::exp(-kPi * static_cast<double>(nx * nx + ny * ny + nz * nz));
    CHECK(plane_wave_partition(basis, unit_params) == doctest::Approx(triple).epsilon(1e-14));
  }
  SUBCASE("monotone in the box side") {
    CHECK(plane_wave_partition(PlaneWaveBasis(8.0, 40), unit_params) <
          plane_wave_partition(PlaneWaveBasis(10.0, 40), unit_params));
  }
  SUBCASE("doubling an already-converged cutoff changes nothing") {
    const double z40 = plane_wave_partition(PlaneWaveBasis(10.0, 40), unit_params);
    const double z80 = plane_wave_partition(PlaneWaveBasis(10.0, 80), unit_params);
    CHECK(z40 == doctest::Approx(z80).epsilon(1e-13));
  }
  SUBCASE("an insufficient cutoff is refused with a sufficient one named") {
    try {
      plane_wave_partition(PlaneWaveBasis(10.0, 5), unit_params);
      FAIL("expected a cutoff refusal");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()).find("n_cutoff >= 31") != std::string::npos);
    }
  }
  SUBCASE("constructor guards") {
    CHECK_THROWS_AS(PlaneWaveBasis(0.0, 10), std::domain_error);
    CHECK_THROWS_AS(PlaneWaveBasis(5.0, 0), std::domain_error);
  }
}

TEST_CASE("eigenstate-sum correlation") {
  const PlaneWaveBasis basis(10.0, 40);
  const double volume = basis.volume();
  const double bh = unit_params.beta * unit_params.hbar;
  SUBCASE("zero separation: exactly 1/V at any converged cutoff") {
    const cplx g = eigenstate_g1(basis, unit_params, Vec3::Zero(), 0.0);
    CHECK(g.real() == doctest::Approx(1.0 / volume).epsilon(1e-15));
    CHECK(g.imag() == 0.0);
  }
  SUBCASE("pure time separation: modulus (1 + b^2)^{-3/4} / V") {
    const double b = 0.5;
    const cplx g = eigenstate_g1(basis, unit_params, Vec3::Zero(), b * bh);
    CHECK(std::abs(g) * volume ==
          doctest::Approx(std::pow(1.0 + b * b, -0.75)).epsilon(1e-9));
  }
  SUBCASE("matches the closed form as a complex number") {
    const SpacetimePoint x1(Vec3(0.8, -0.2, 0.4), 0.3 * bh);
    const SpacetimePoint x2(Vec3(0.1, 0.1, 0.0), -0.2 * bh);
    const cplx closed = thermal_g1_single(x1, x2, unit_params, volume);
    const cplx modes =
        eigenstate_g1(basis, unit_params, x1.position - x2.position, x2.time - x1.time);
    CHECK(std::abs(modes - closed) <= 1e-6 * std::abs(closed));
  }
  SUBCASE("insufficient cutoff is refused") {
    CHECK_THROWS_AS(eigenstate_g1(PlaneWaveBasis(10.0, 5), unit_params, Vec3::Zero(), 0.0),
                    std::runtime_error);
  }
}

TEST_CASE("spectral propagation reference") {
  SUBCASE("t = 0 reproduces the packet amplitude") {
    const WavePacket wp(Vec3(0.3, -0.2, 0.1), Vec3(2.0, -1.0, 0.5), 1.0);
    const Vec3 probes[3] = {wp.center, wp.center + Vec3(0.5, 0.3, -0.4), wp.center - Vec3(1.2, 0.0, 0.6)};
    for (const Vec3& r : probes) {
      const cplx spectral = spectral_free_evolution(wp, SpacetimePoint(r, 0.0), unit_params, 256);
      const cplx direct = packet_amplitude(wp, r);
      CHECK(std::abs(spectral - direct) <= 1e-10 * std::abs(direct));
    }
  }
  SUBCASE("free evolution of a kicked packet at b = 1") {
    const WavePacket wp(Vec3::Zero(), Vec3(3.0, 0.0, 0.0), 1.0);
    const double t = unit_params.beta * unit_params.hbar;
    const Vec3 drifted = (t / unit_params.mass) * wp.momentum;
    const SpacetimePoint x(drifted + Vec3(0.4, -0.3, 0.2), t);
    const cplx spectral = spectral_free_evolution(wp, x, unit_params, 256);
    const cplx closed = propagated_amplitude(wp, x, unit_params);
    CHECK(std::abs(spectral - closed) <= 1e-8 * std::abs(closed));
  }
  SUBCASE("grid validation") {
    const WavePacket wp(Vec3::Zero(), Vec3::Zero(), 1.0);
    const SpacetimePoint x(Vec3::Zero(), 0.0);
    CHECK_THROWS_AS(spectral_free_evolution(wp, x, unit_params, 15), std::domain_error);
    CHECK_THROWS_AS(spectral_free_evolution(wp, x, unit_params, 17), std::domain_error);
  }
}

TEST_CASE("permutation-sum norm reference") {
  // N = 2 with momenta: 1 -+ |<phi_1|phi_2>|^2 in closed form
  const std::vector<WavePacket> pair{WavePacket(Vec3::Zero(), Vec3(1.0, 0.0, 0.0), 1.0),
                                     WavePacket(Vec3(0.5, 0.2, 0.0), Vec3(0.0, -0.5, 0.0), 1.0)};
  const double cross = std::norm(packet_overlap(pair[0], pair[1]));
  CHECK(brute_force_norm(PacketSet(pair, Statistics::Fermion)) ==
        doctest::Approx(1.0 - cross).epsilon(1e-14));
  CHECK(brute_force_norm(PacketSet(pair, Statistics::Boson)) ==
        doctest::Approx(1.0 + cross).epsilon(1e-14));
  // the factorial sum is capped
  const std::vector<WavePacket> seven(7, WavePacket(Vec3::Zero(), Vec3::Zero(), 1.0));
  CHECK_THROWS_AS(brute_force_norm(PacketSet(seven, Statistics::Boson)), std::length_error);
}

TEST_CASE("width-diffusion residual") {
  const double lambda = thermal_wavelength(unit_params);
  const double nu = unit_params.beta / 2.0;
  const double fine = diffusion_residual(unit_params, nu, lambda / 50.0);
  CHECK(fine <= 1e-4);
  // 4th-order stencils: a 5x coarser grid costs roughly 5^4 in accuracy
  const double coarse = diffusion_residual(unit_params, nu, lambda / 10.0);
  CHECK(coarse > 10.0 * fine);
  CHECK(coarse < 1.0);
  CHECK_THROWS_AS(diffusion_residual(unit_params, -0.1, lambda / 50.0), std::domain_error);
  CHECK_THROWS_AS(diffusion_residual(unit_params, nu, 0.0), std::domain_error);
}
