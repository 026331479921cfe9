#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

// Fixed-order Gauss-Legendre rules and the panel schemes built on them for
// integrals over quantile functions, whose integrands are typically
// (integrably) singular at u = 0 and u = 1.
namespace kgen::quad {

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

GaussLegendreRule make_gauss_legendre(int n);

// Cached 64-point rule used by the decade-panel schemes.
const GaussLegendreRule& gauss_legendre_64();

template <class F>
double integrate(F&& f, double a, double b, const GaussLegendreRule& rule) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return half * sum;
}

// int_0^x g(s) ds over panels [x 10^-(k+1), x 10^-k], k = 0, 1, ...
// Panels are added until they stop contributing; a slowly decaying power-law
// remainder is closed with its geometric-series estimate.
template <class F>
double integrate_from_zero(F&& g, double x) {
  const auto& rule = gauss_legendre_64();
  constexpr int kMaxPanels = 330;
  double total = 0.0;
  double previous = 0.0;
  double panel = 0.0;
  int quiet = 0;
  double hi = x;
  int k = 0;
  for (; k < kMaxPanels && hi > 1e-305; ++k) {
    const double lo = 0.1 * hi;
    previous = panel;
    panel = integrate(g, lo, hi, rule);
    total += panel;
    if (std::fabs(panel) <= 1e-17 * std::fabs(total)) {
      if (++quiet >= 3) return total;
    } else {
      quiet = 0;
    }
    hi = lo;
  }
  if (k > 2 && previous != 0.0) {
    const double ratio = panel / previous;
    if (ratio > 0.0 && ratio < 1.0) total += panel * ratio / (1.0 - ratio);
  }
  return total;
}

// int_0^1 h(u) du where the integrand is supplied twice: `near_zero(u)` for
// u <= 1/2 and `near_one(t)` as a function of t = 1 - u for u > 1/2, so the
// caller can evaluate the upper tail without forming 1 - t.
template <class F, class G>
double integrate_unit(F&& near_zero, G&& near_one) {
  return integrate_from_zero(near_zero, 0.5) + integrate_from_zero(near_one, 0.5);
}

}  // namespace kgen::quad
