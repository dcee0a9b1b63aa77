#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace thermalwp::quad {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1], symmetric half listed.
inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

/// One Gauss-Kronrod 7-15 panel. Returns the Kronrod value; `err` gets the
/// |K15 - G7| estimate. Works for real or complex integrands. The Gauss-7
/// nodes are the odd-indexed Kronrod nodes plus the center.
template <class F>
auto gk15(F&& f, double a, double b, double& err) {
  using R = decltype(f(a));
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  R gauss{};
  R kron{};
  for (int i = 0; i < 8; ++i) {
    const double dx = half * kKronrodNodes[i];
    const R fs = (i == 7) ? f(mid) : R(f(mid - dx) + f(mid + dx));
    kron += kKronrodWeights[i] * fs;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fs;
  }
  kron *= half;
  gauss *= half;
  err = std::abs(kron - gauss);
  return kron;
}

struct AdaptiveOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_panels = 4000;
};

/// Adaptive bisection driven by the GK15 error estimate. Throws on
/// non-convergence with the interval diagnostics in the message.
template <class F>
auto integrate(F&& f, double a, double b, AdaptiveOptions opt = {}) {
  using R = decltype(f(a));
  struct Panel {
    double a, b, err;
    R val;
  };
  std::vector<Panel> panels;
  double err0;
  panels.push_back({a, b, 0.0, R{}});
  panels.back().val = gk15(f, a, b, err0);
  panels.back().err = err0;
  auto total = [&panels] {
    R v{};
    double e = 0.0;
    for (const auto& p : panels) {
      v += p.val;
      e += p.err;
    }
    return std::pair<R, double>(v, e);
  };
  for (int iter = 0; iter < opt.max_panels; ++iter) {
    auto [value, err] = total();
    if (err <= opt.abs_tol || err <= opt.rel_tol * std::abs(value)) return value;
    // split the worst panel
    std::size_t worst = 0;
    for (std::size_t i = 1; i < panels.size(); ++i)
      if (panels[i].err > panels[worst].err) worst = i;
    Panel p = panels[worst];
    const double mid = 0.5 * (p.a + p.b);
    double e1, e2;
    Panel left{p.a, mid, 0.0, R{}};
    left.val = gk15(f, p.a, mid, e1);
    left.err = e1;
    Panel right{mid, p.b, 0.0, R{}};
    right.val = gk15(f, mid, p.b, e2);
    right.err = e2;
    panels[worst] = left;
    panels.push_back(right);
  }
  auto [value, err] = total();
  throw std::runtime_error("quad::integrate: no convergence after " +
                           std::to_string(opt.max_panels) + " panels, abs err " +
                           std::to_string(err) + " vs value " + std::to_string(std::abs(value)));
}

/// Nested 2D integral over [ax,bx] x [ay,by]; f(x, y).
template <class F>
auto integrate2(F&& f, double ax, double bx, double ay, double by, AdaptiveOptions outer = {},
                AdaptiveOptions inner = {}) {
  return integrate([&](double x) { return integrate([&, x](double y) { return f(x, y); }, ay, by, inner); },
                   ax, bx, outer);
}

/// Nested 3D integral over a box; f(x, y, z).
template <class F>
auto integrate3(F&& f, double ax, double bx, double ay, double by, double az, double bz,
                AdaptiveOptions outer = {}, AdaptiveOptions inner = {}) {
  return integrate(
      [&](double x) {
        return integrate(
            [&, x](double y) {
              return integrate([&, x, y](double z) { return f(x, y, z); }, az, bz, inner);
            },
            ay, by, inner);
      },
      ax, bx, outer);
}

}  // namespace thermalwp::quad
