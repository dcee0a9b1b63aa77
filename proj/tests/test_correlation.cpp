#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "thermalwp/correlation.hpp"
#include "thermalwp/plane_waves.hpp"
#include "thermalwp/quadrature.hpp"

using namespace thermalwp;

namespace {
const ThermalParams unit_params(1.0 / (2.0 * kPi), 1.0);  // lambda = 1
}

TEST_CASE("propagated amplitude reduces to the static packet at t = 0") {
  const WavePacket wp(Vec3(0.3, -0.1, 0.8), Vec3(2.0, 1.0, -0.5), 1.0);
  const Vec3 probes[3] = {wp.center, wp.center + Vec3(0.4, 0.0, -0.2), Vec3::Zero()};
  for (const Vec3& r : probes) {
    const cplx evolved = propagated_amplitude(wp, SpacetimePoint(r, 0.0), unit_params);
    const cplx still = packet_amplitude(wp, r);
    CHECK(evolved.real() == still.real());
    CHECK(evolved.imag() == still.imag());
  }
}

TEST_CASE("propagated amplitude stays normalized and drifts at p/m") {
  for (double ts : {1.0, 0.4}) {
    const double ls = split_width(unit_params, ts).lambda_s;
    const WavePacket wp(Vec3(0.2, 0.1, -0.3), Vec3(2.5 / ls, 0.0, 1.0 / ls), ls);
    const double t = 0.7 * unit_params.beta * unit_params.hbar;
    const Vec3 drifted = wp.center + (t / unit_params.mass) * wp.momentum;
    auto density = [&](const Vec3& r) {
      return std::norm(propagated_amplitude(wp, SpacetimePoint(r, t), unit_params));
    };
    // |F|^2 is a product of axis Gaussians, so slice integrals through any
    // point q recover the 3D integral as (prod_a slice_a) / density(q)^2.
    const double w = 4.0 * ls;  // the evolved width stays below ~1.7 ls here
    double norm3d = 1.0 / (density(drifted) * density(drifted));
    double mean_x = 0.0;
    for (int axis = 0; axis < 3; ++axis) {
      const Vec3 dir = Vec3::Unit(axis);
      const double slice = quad::integrate(
          [&](double u) { return density(drifted + (u - drifted[axis]) * dir); },
          drifted[axis] - w, drifted[axis] + w);
      norm3d *= slice;
      if (axis == 0)
        mean_x = quad::integrate(
                     [&](double u) { return u * density(drifted + (u - drifted[axis]) * dir); },
                     drifted[axis] - w, drifted[axis] + w) /
                 slice;
    }
    CHECK(norm3d == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(mean_x == doctest::Approx(drifted[0]).epsilon(1e-9));
  }
}

TEST_CASE("single-packet correlation: hermiticity and coincident value") {
  const double ls = 1.0;
  const WavePacket wp(Vec3(0.1, 0.2, -0.4), Vec3(1.5, -0.7, 0.3), ls);
  const SpacetimePoint x1(Vec3(0.5, 0.0, -0.2), 0.3 / (2.0 * kPi));
  const SpacetimePoint x2(Vec3(-0.1, 0.3, 0.1), -0.2 / (2.0 * kPi));
  const cplx g12 = packet_g1(wp, x1, x2, unit_params);
  const cplx g21 = packet_g1(wp, x2, x1, unit_params);
  CHECK(g12.real() == doctest::Approx(g21.real()).epsilon(1e-14));
  CHECK(g12.imag() == doctest::Approx(-g21.imag()).epsilon(1e-14));
  // coincident equal-time value is the density |phi|^2: 8/ls^3 at the center
  const SpacetimePoint at_center(wp.center, 0.0);
  const cplx peak = packet_g1(wp, at_center, at_center, unit_params);
  CHECK(peak.real() == doctest::Approx(8.0 / (ls * ls * ls)).epsilon(1e-14));
  CHECK(peak.imag() == 0.0);
}

TEST_CASE("closed-form thermal correlation values") {
  const double volume = 50.0;
  SUBCASE("coincident point: 1/V") {
    const SpacetimePoint x(Vec3(0.3, 0.0, -0.1), 0.2);
    const cplx g = thermal_g1_single(x, x, unit_params, volume);
    CHECK(g.real() == doctest::Approx(1.0 / volume).epsilon(1e-15));
    CHECK(g.imag() == 0.0);
  }
  SUBCASE("one wavelength, equal times: exp(-pi)/V") {
    const SpacetimePoint x1(Vec3::Zero(), 0.1);
    const SpacetimePoint x2(Vec3::UnitX(), 0.1);
    const cplx g = thermal_g1_single(x1, x2, unit_params, volume);
    CHECK(g.real() == doctest::Approx(4.3213918263772250e-2 / volume).epsilon(1e-13));
    CHECK(std::abs(g.imag()) <= 1e-17);
  }
  SUBCASE("pure time shift b = 1: modulus 2^{-3/4}/V, phase -3 pi/8") {
    const double bh = unit_params.beta * unit_params.hbar;
    const SpacetimePoint x1(Vec3::Zero(), bh);
    const SpacetimePoint x2(Vec3::Zero(), 0.0);
    const cplx g = thermal_g1_single(x1, x2, unit_params, volume);
    CHECK(std::abs(g) == doctest::Approx(0.59460355750136053 / volume).epsilon(1e-13));
    CHECK(std::arg(g) == doctest::Approx(-3.0 * kPi / 8.0).epsilon(1e-13));
    // modulus is even in the time order, the phase is odd
    const cplx flipped = thermal_g1_single(x2, x1, unit_params, volume);
    CHECK(std::abs(flipped) == doctest::Approx(std::abs(g)).epsilon(1e-15));
    CHECK(std::arg(flipped) == doctest::Approx(-std::arg(g)).epsilon(1e-13));
  }
  SUBCASE("volume must be positive") {
    const SpacetimePoint x(Vec3::Zero(), 0.0);
    CHECK_THROWS_AS(thermal_g1_single(x, x, unit_params, 0.0), std::domain_error);
  }
}

TEST_CASE("closed form matches the eigenstate sum as a complex number") {
  const PlaneWaveBasis basis(10.0, 40);
  const double volume = basis.volume();
  const double bh = unit_params.beta * unit_params.hbar;
  const SpacetimePoint x1(Vec3(0.7, -0.3, 0.2), 0.4 * bh);
  const SpacetimePoint x2(Vec3(0.0, 0.1, -0.2), -0.1 * bh);
  const cplx closed = thermal_g1_single(x1, x2, unit_params, volume);
  const cplx modes =
      eigenstate_g1(basis, unit_params, x1.position - x2.position, x2.time - x1.time);
  CHECK(std::abs(modes - closed) <= 1e-6 * std::abs(closed));
  // flipping the time order conjugates both routes the same way
  const cplx closed_rev = thermal_g1_single(x2, x1, unit_params, volume);
  const cplx modes_rev =
      eigenstate_g1(basis, unit_params, x2.position - x1.position, x1.time - x2.time);
  CHECK(std::abs(modes_rev - closed_rev) <= 1e-6 * std::abs(closed_rev));
  CHECK(std::abs(closed_rev - std::conj(closed)) <= 1e-15);
}

TEST_CASE("propagated amplitude dilation carries the packet width, not the parent wavelength") {
  // For the undivided split the same packet evolved under different parent
  // parameters must coincide when b lambda^2/ls^2 matches; here: halving
  // lambda^2 while doubling b leaves F unchanged.
  const double ls = 1.0;
  const WavePacket wp(Vec3::Zero(), Vec3(2.0, 0.0, 0.0), ls);
  const ThermalParams hot(unit_params.beta / 2.0, 1.0);  // lambda^2 halves
  const Vec3 r(0.4, -0.2, 0.3);
  const cplx cold_f =
      propagated_amplitude(wp, SpacetimePoint(r, 0.3 * unit_params.beta), unit_params);
  const cplx hot_f = propagated_amplitude(wp, SpacetimePoint(r, 0.6 * hot.beta), hot);
  CHECK(std::abs(cold_f - hot_f) <= 1e-14 * std::abs(cold_f));
}
