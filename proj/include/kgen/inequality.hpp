#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kgen/params.hpp"
#include "kgen/sample.hpp"

namespace kgen {

// ---------------------------------------------------------------------------
// kappa-generalized closed forms. All require alpha / kappa > 1.

double kgen_lorenz(double u, const KappaGenParams& p);
// 1 - L(1 - t), accurate for tiny t (the top share of the population).
double kgen_lorenz_upper(double t, const KappaGenParams& p);
double kgen_gini(const KappaGenParams& p);
// GE(theta) for -alpha < theta < alpha / kappa. Within 1e-5 of 0 or 1 the
// MLD and Theil limits are returned.
double kgen_ge(double theta, const KappaGenParams& p);
double kgen_mld(const KappaGenParams& p);
double kgen_theil(const KappaGenParams& p);

enum class LorenzOrder {
  FirstDominates,   // first curve nowhere below the second (less unequal)
  SecondDominates,
  Crossing,
};

struct LorenzComparison {
  LorenzOrder order;
  // False when both defining conditions hold with equality in the reported
  // direction; the curves may then coincide.
  bool strict;
};

LorenzComparison lorenz_dominates(const KappaGenParams& p1, const KappaGenParams& p2);

// ---------------------------------------------------------------------------
// Mixture and EkG2

// Requires the positive branch mean to exist and the mixture mean to be
// nonzero.
double mixture_lorenz(double u, const NetWealthMixtureParams& p);

struct MixtureGini {
  double value;
  // Set when the mean is negative: the two published normalizations of the
  // net-wealth Gini disagree there, and 1 - rho L(theta1) is used.
  bool ambiguous;
};
MixtureGini mixture_gini(const NetWealthMixtureParams& p);

// Requires q > 1 / (2a).
double ekg2_lorenz(double u, const Ekg2Params& p);

// ---------------------------------------------------------------------------
// Quantile-based numerics, for families without closed forms

// A quantile function given on both halves of the unit interval:
// of_u(u) for 0 < u <= 1/2 and of_tail(t) = F^-1(1 - t) for 0 < t <= 1/2.
struct QuantileFunction {
  std::function<double(double)> of_u;
  std::function<double(double)> of_tail;
};

QuantileFunction quantile_function(const AnyParams& p);
// Wraps a function of u alone (of_tail(t) = q(1 - t)).
QuantileFunction quantile_function(std::function<double(double)> q);

double quantile_mean(const QuantileFunction& q);
double quantile_lorenz(double u, const QuantileFunction& q, double mean);
double quantile_gini(const QuantileFunction& q);

// ---------------------------------------------------------------------------
// Any family

double lorenz(double u, const AnyParams& p);
double gini(const AnyParams& p);

struct InequalityReport {
  double gini = 0.0;
  std::optional<double> mld;    // absent for signed (net-wealth) models
  std::optional<double> theil;
  std::vector<std::pair<double, double>> ge_values;  // (theta, GE(theta))
  bool gini_ambiguous = false;
};

InequalityReport inequality_report(const AnyParams& p, const std::vector<double>& thetas);

// ---------------------------------------------------------------------------
// Empirical counterparts

struct LorenzCurve {
  // (u, L) with u strictly increasing from 0 to 1 and L(0) = 0, L(1) = 1.
  std::vector<std::pair<double, double>> points;
  std::string source;

  // Linear interpolation between points.
  double at(double u) const;
};

// Ties are grouped; weights are normalized to sum to one. The total of the
// values must be nonzero.
LorenzCurve empirical_lorenz(const WeightedSample& s);
// 1 - 2 x (trapezoid area under the empirical Lorenz curve).
double empirical_gini(const WeightedSample& s);
// GE family; these require strictly positive values.
double empirical_ge(double theta, const WeightedSample& s);
double empirical_mld(const WeightedSample& s);
double empirical_theil(const WeightedSample& s);

InequalityReport empirical_inequality_report(const WeightedSample& s,
                                             const std::vector<double>& thetas);

}  // namespace kgen
