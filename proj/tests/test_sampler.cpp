#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "thermalwp/sampler.hpp"

#include <cmath>

using namespace thermalwp;

namespace {
const ThermalParams unit_params(1.0 / (2.0 * kPi), 1.0);  // lambda = 1
}

TEST_CASE("counter-based stream: frozen values and independence") {
  const RngStream rng(42, 0);
  // fixed by the Philox arithmetic alone; platform-independent
  CHECK(rng.bits(0, 0) == 0x5141af1faa344870ull);
  CHECK(rng.bits(1, 3) == 0x95c06691b5e6749eull);
  CHECK(rng.uniform01(0, 0) == doctest::Approx(3.17408509474448042e-1).epsilon(1e-16));
  CHECK(rng.uniform01(7, 2) == doctest::Approx(1.82320692332873679e-1).epsilon(1e-16));
  CHECK(rng.normal01(3, 1) == doctest::Approx(2.21303289318614260e-1).epsilon(1e-13));
  // same key, same draw; other streams decorrelate
  CHECK(RngStream(42, 0).bits(0, 0) == rng.bits(0, 0));
  CHECK(RngStream(42, 5).bits(0, 0) == 0x020f798b1b4ece6aull);
  CHECK(RngStream(43, 0).bits(0, 0) != rng.bits(0, 0));
  // uniforms live strictly inside (0, 1)
  for (std::uint64_t i = 0; i < 3000; ++i) {
    const double u = rng.uniform01(i, 0);
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("probit: frozen quantiles, symmetry, domain") {
  CHECK(probit(0.25) == doctest::Approx(-0.67448975019608174).epsilon(1e-14));
  CHECK(probit(0.1) == doctest::Approx(-1.2815515655446004).epsilon(1e-14));
  CHECK(probit(0.01) == doctest::Approx(-2.3263478740408408).epsilon(1e-14));
  CHECK(probit(0.3) == doctest::Approx(-0.52440051270804078).epsilon(1e-14));
  CHECK(probit(1e-6) == doctest::Approx(-4.7534243088228990).epsilon(1e-14));
  CHECK(probit(1e-12) == doctest::Approx(-7.0344838253011319).epsilon(1e-14));
  CHECK(probit(0.5) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(probit(0.75) == -probit(0.25));
  CHECK_THROWS_AS(probit(0.0), std::domain_error);
  CHECK_THROWS_AS(probit(1.0), std::domain_error);
  CHECK_THROWS_AS(probit(-0.2), std::domain_error);
}

TEST_CASE("ensemble draws: support, moments, slot layout") {
  const double box = 4.0;
  const WidthSplit split = split_width(unit_params, 0.5);
  const RngStream rng(7, 0);
  SUBCASE("positions fill the centered cube, momenta follow the law") {
    const std::uint64_t n_draws = 20000;
    const double sp = momentum_sigma(split.lambda_m);
    double pos_mean = 0.0, mom_sq = 0.0, mom_cross = 0.0;
    for (std::uint64_t i = 0; i < n_draws; ++i) {
      const PacketEnsembleSample s = sample_ensemble(1, box, split, rng, i);
      const ParticleDraw& d = s.draws[0];
      for (int a = 0; a < 3; ++a) {
        CHECK(d.position[a] >= -box / 2.0);
        CHECK(d.position[a] < box / 2.0);
      }
      pos_mean += d.position.sum();
      mom_sq += d.momentum.squaredNorm();
      mom_cross += d.momentum[0] * d.momentum[1];
    }
    const auto n = static_cast<double>(n_draws);
    // 4-sigma bands around the law's moments
    CHECK(std::abs(pos_mean) <= 4.0 * box / std::sqrt(12.0) * std::sqrt(3.0 * n));
    CHECK(std::abs(mom_sq / n - 3.0 * sp * sp) <= 4.0 * sp * sp * std::sqrt(6.0 / n));
    CHECK(std::abs(mom_cross / n) <= 4.0 * sp * sp / std::sqrt(n));
  }
  SUBCASE("degenerate split pins every momentum at zero") {
    const WidthSplit frozen = split_width(unit_params, 1.0);
    const PacketEnsembleSample s = sample_ensemble(3, box, frozen, rng, 11);
    for (const ParticleDraw& d : s.draws) CHECK(d.momentum.norm() == 0.0);
  }
  SUBCASE("draws are pure functions of (stream, index, particle)") {
    const PacketEnsembleSample a = sample_ensemble(2, box, split, rng, 5);
    const PacketEnsembleSample b = sample_ensemble(2, box, split, RngStream(7, 0), 5);
    CHECK((a.draws[1].position - b.draws[1].position).norm() == 0.0);
    CHECK((a.draws[1].momentum - b.draws[1].momentum).norm() == 0.0);
    // particle 0 does not depend on how many particles follow it
    const PacketEnsembleSample wide = sample_ensemble(4, box, split, rng, 5);
    CHECK((a.draws[0].position - wide.draws[0].position).norm() == 0.0);
    CHECK((a.draws[0].momentum - wide.draws[0].momentum).norm() == 0.0);
  }
  SUBCASE("guards") {
    CHECK_THROWS_AS(sample_ensemble(0, box, split, rng), std::domain_error);
    CHECK_THROWS_AS(sample_ensemble(1, -2.0, split, rng), std::domain_error);
  }
}

TEST_CASE("norm-mean estimator") {
  const double box = std::cbrt(100.0);
  SUBCASE("a single packet has unit norm and zero variance") {
    const WidthSplit split = split_width(unit_params, 0.5);
    const McEstimate e = mc_norm_mean(1, box, split, Statistics::Fermion, 5000, RngStream(3, 0));
    CHECK(e.value == 1.0);
    CHECK(e.std_error == 0.0);
    CHECK(e.n_samples == 5000);
  }
  SUBCASE("two zero-momentum packets against the closed-form mean") {
    const WidthSplit split = split_width(unit_params, 1.0);
    const double lambda3 = 1.0;  // lambda = 1
    const double expected_shift = lambda3 / (2.0 * std::numbers::sqrt2 * box * box * box);
    for (Statistics stats : {Statistics::Fermion, Statistics::Boson}) {
      const McEstimate e = mc_norm_mean(2, box, split, stats, 200000, RngStream(3, 1));
      const double target = 1.0 + statistics_sign(stats) * expected_shift;
      CHECK(std::abs(e.value - target) <= 3.0 * e.std_error);
    }
  }
  SUBCASE("fermion and boson means are exact mirror images") {
    // det + perm of a 2x2 Gram matrix is exactly 2 for every draw
    const WidthSplit split = split_width(unit_params, 0.4);
    const McEstimate f = mc_norm_mean(2, box, split, Statistics::Fermion, 20000, RngStream(9, 2));
    const McEstimate b = mc_norm_mean(2, box, split, Statistics::Boson, 20000, RngStream(9, 2));
    CHECK(f.value + b.value == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(f.std_error == doctest::Approx(b.std_error).epsilon(1e-12));
  }
  SUBCASE("worker count cannot change a single bit") {
    const WidthSplit split = split_width(unit_params, 0.5);
    const McEstimate one = mc_norm_mean(3, box, split, Statistics::Boson, 30000, RngStream(5, 0), 1);
    const McEstimate three =
        mc_norm_mean(3, box, split, Statistics::Boson, 30000, RngStream(5, 0), 3);
    CHECK(one.value == three.value);
    CHECK(one.std_error == three.std_error);
  }
  SUBCASE("standard error scales as 1/sqrt(n)") {
    const WidthSplit split = split_width(unit_params, 1.0);
    const McEstimate small =
        mc_norm_mean(2, box, split, Statistics::Boson, 10000, RngStream(11, 0));
    const McEstimate large =
        mc_norm_mean(2, box, split, Statistics::Boson, 100000, RngStream(11, 0));
    const double ratio = small.std_error / large.std_error;
    CHECK(ratio > std::sqrt(10.0) * 0.8);
    CHECK(ratio < std::sqrt(10.0) * 1.2);
  }
  SUBCASE("sample-count guard") {
    const WidthSplit split = split_width(unit_params, 0.5);
    CHECK_THROWS_AS(mc_norm_mean(2, box, split, Statistics::Boson, 1, RngStream(3, 0)),
                    std::domain_error);
  }
}

TEST_CASE("partition estimator") {
  const double volume = 100.0;
  SUBCASE("one particle is exact with zero spread") {
    const WidthSplit split = split_width(unit_params, 0.7);
    const McEstimate e = partition_mc(1, volume, split, Statistics::Boson, RngStream(1, 0), 1000);
    CHECK(e.value == doctest::Approx(100.0).epsilon(1e-13));
    CHECK(e.std_error == 0.0);
  }
  SUBCASE("two particles within three sigma of the closed form") {
    const WidthSplit split = split_width(unit_params, 0.5);
    for (Statistics stats : {Statistics::Fermion, Statistics::Boson}) {
      const McEstimate e = partition_mc(2, volume, split, stats, RngStream(1, 1), 100000);
      const double exact = partition_exact(2, volume, unit_params, stats);
      CHECK(std::abs(e.value - exact) <= 3.0 * e.std_error);
    }
  }
  SUBCASE("volume guard") {
    const WidthSplit split = split_width(unit_params, 0.5);
    CHECK_THROWS_AS(partition_mc(1, 0.0, split, Statistics::Boson, RngStream(1, 0), 100),
                    std::domain_error);
  }
}

TEST_CASE("correlation estimator") {
  const double volume = 60.0;
  const WidthSplit split = split_width(unit_params, 1.0);
  SUBCASE("coincident point converges to 1/V") {
    const SpacetimePoint x(Vec3(0.2, -0.1, 0.3), 0.0);
    const McEstimateC e =
        mc_thermal_g1(x, x, unit_params, volume, split, 50000, RngStream(21, 0));
    CHECK(std::abs(e.value.real() - 1.0 / volume) <= 3.0 * e.std_error);
    CHECK(std::abs(e.value.imag()) <= 3.0 * e.std_error);
  }
  SUBCASE("threaded runs are bit-identical") {
    const double bh = unit_params.beta * unit_params.hbar;
    const SpacetimePoint x1(Vec3(0.5, 0.0, 0.0), 0.3 * bh);
    const SpacetimePoint x2(Vec3::Zero(), 0.0);
    const McEstimateC a =
        mc_thermal_g1(x1, x2, unit_params, volume, split, 40000, RngStream(21, 1), 1);
    const McEstimateC b =
        mc_thermal_g1(x1, x2, unit_params, volume, split, 40000, RngStream(21, 1), 4);
    CHECK(a.value.real() == b.value.real());
    CHECK(a.value.imag() == b.value.imag());
    CHECK(a.std_error == b.std_error);
  }
  SUBCASE("the split must belong to the thermal parameters") {
    const ThermalParams other(1.0 / kPi, 1.0);
    const WidthSplit mismatched = split_width(other, 0.5);
    const SpacetimePoint x(Vec3::Zero(), 0.0);
    CHECK_THROWS_AS(mc_thermal_g1(x, x, unit_params, volume, mismatched, 100, RngStream(1, 0)),
                    std::invalid_argument);
  }
  SUBCASE("volume guard") {
    const SpacetimePoint x(Vec3::Zero(), 0.0);
    CHECK_THROWS_AS(mc_thermal_g1(x, x, unit_params, -5.0, split, 100, RngStream(1, 0)),
                    std::domain_error);
  }
}
