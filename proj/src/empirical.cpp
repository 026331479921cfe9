#include <algorithm>
#include <cmath>
#include <numeric>

#include "kgen/errors.hpp"
#include "kgen/inequality.hpp"

namespace kgen {
namespace {

void require_positive_values(const WeightedSample& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(s.values()[i] > 0.0)) {
      throw DomainError("generalized-entropy indices need positive values; observation " +
                        std::to_string(i + 1) + " is " + std::to_string(s.values()[i]));
    }
  }
}

}  // namespace

double LorenzCurve::at(double u) const {
  if (points.empty()) throw DomainError("empty Lorenz curve");
  if (u <= points.front().first) return points.front().second;
  if (u >= points.back().first) return points.back().second;
  const auto it = std::lower_bound(points.begin(), points.end(), u,
                                   [](const auto& pt, double v) { return pt.first < v; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double frac = (u - lo.first) / (hi.first - lo.first);
  return lo.second + frac * (hi.second - lo.second);
}

LorenzCurve empirical_lorenz(const WeightedSample& s) {
  const auto& x = s.values();
  const auto& w = s.weights();
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return x[i] < x[j]; });

  double total_value = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) total_value += w[i] * x[i];
  if (total_value == 0.0) {
    throw DegenerateNormalizationError("empirical Lorenz curve is undefined for zero total");
  }

  LorenzCurve curve;
  curve.source = "empirical";
  curve.points.emplace_back(0.0, 0.0);
  double cum_w = 0.0;
  double cum_v = 0.0;
  for (std::size_t k = 0; k < order.size();) {
    const double v = x[order[k]];
    while (k < order.size() && x[order[k]] == v) {
      cum_w += w[order[k]];
      cum_v += w[order[k]] * v;
      ++k;
    }
    const double u = cum_w / s.total_weight();
    if (u > curve.points.back().first) curve.points.emplace_back(u, cum_v / total_value);
  }
  curve.points.back() = {1.0, 1.0};
  return curve;
}

double empirical_gini(const WeightedSample& s) {
  const auto curve = empirical_lorenz(s);
  double area = 0.0;
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    const auto& [u0, l0] = curve.points[i - 1];
    const auto& [u1, l1] = curve.points[i];
    area += 0.5 * (u1 - u0) * (l0 + l1);
  }
  return 1.0 - 2.0 * area;
}

double empirical_mld(const WeightedSample& s) {
  require_positive_values(s);
  const double m = s.weighted_mean();
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) acc += s.weights()[i] * std::log(m / s.values()[i]);
  return acc / s.total_weight();
}

double empirical_theil(const WeightedSample& s) {
  require_positive_values(s);
  const double m = s.weighted_mean();
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double r = s.values()[i] / m;
    acc += s.weights()[i] * r * std::log(r);
  }
  return acc / s.total_weight();
}

double empirical_ge(double theta, const WeightedSample& s) {
  if (std::fabs(theta) < 1e-5) return empirical_mld(s);
  if (std::fabs(theta - 1.0) < 1e-5) return empirical_theil(s);
  require_positive_values(s);
  const double m = s.weighted_mean();
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    acc += s.weights()[i] * std::pow(s.values()[i] / m, theta);
  }
  return (acc / s.total_weight() - 1.0) / (theta * (theta - 1.0));
}

InequalityReport empirical_inequality_report(const WeightedSample& s,
                                             const std::vector<double>& thetas) {
  InequalityReport out;
  out.gini = empirical_gini(s);
  const bool positive =
      std::all_of(s.values().begin(), s.values().end(), [](double v) { return v > 0.0; });
  if (!positive) return out;
  out.mld = empirical_mld(s);
  out.theil = empirical_theil(s);
  for (double theta : thetas) out.ge_values.emplace_back(theta, empirical_ge(theta, s));
  return out;
}

}  // namespace kgen
