#pragma once

#include "thermalwp/core.hpp"
#include "thermalwp/quadrature.hpp"

namespace thermalwp {

/// Numerically evaluates the width-split representation of the kernel pair
/// integral,
///   integral d^3r d^3p f(p) phi_{r p, lambda_s}(r') conj(phi_{r p, lambda_s}(r'')),
/// by adaptive product quadrature and returns its absolute deviation from the
/// closed form exp(-pi |r'-r''|^2 / lambda^2). The integrand factorizes per
/// Cartesian axis, so the 6D integral is computed as a product of three
/// nested (position x momentum) quadratures over a box of half-width
/// 6 max(lambda, lambda_s) centered between the evaluation points.
inline double split_identity_check(const Vec3& r_prime, const Vec3& r_dprime,
                                   const WidthSplit& split, double hbar = 1.0) {
  const double ls = split.lambda_s;
  const double a = 2.0 * kPi / (ls * ls);
  const double axis_norm = std::sqrt(2.0 * a / kPi);  // |phi_1d|^2 prefactor
  const double rw = 6.0 * std::max(split.lambda, split.lambda_s);

  quad::AdaptiveOptions outer{1e-15, 1e-11, 4000};
  quad::AdaptiveOptions inner{1e-16, 1e-12, 4000};

  cplx product = 1.0;
  for (int axis = 0; axis < 3; ++axis) {
    const double x1 = r_prime[axis];
    const double x2 = r_dprime[axis];
    const double mid = 0.5 * (x1 + x2);
    auto pair_density = [&](double r) {
      const double d1 = x1 - r;
      const double d2 = x2 - r;
      return axis_norm * std::exp(-a * (d1 * d1 + d2 * d2));
    };
    cplx axis_value;
    if (split.degenerate_momentum()) {
      axis_value = quad::integrate([&](double r) { return pair_density(r); }, mid - rw, mid + rw,
                                   outer);
    } else {
      const double sp = momentum_sigma(split.lambda_m, hbar);
      const double f_norm = split.lambda_m / (2.0 * kPi * hbar);
      const double f_alpha = split.lambda_m * split.lambda_m / (4.0 * kPi * hbar * hbar);
      const double osc = (x1 - x2) / hbar;
      axis_value = quad::integrate(
          [&](double r) {
            const double rho = pair_density(r);
            return quad::integrate(
                [&](double p) {
                  return rho * f_norm * std::exp(-f_alpha * p * p) * std::exp(cplx(0.0, p * osc));
                },
                -10.0 * sp, 10.0 * sp, inner);
          },
          mid - rw, mid + rw, outer);
    }
    product *= axis_value;
  }
  return std::abs(product - cplx(kernel_pair_integral(r_prime, r_dprime, split.lambda)));
}

}  // namespace thermalwp
