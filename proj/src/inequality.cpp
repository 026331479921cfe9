#include "kgen/inequality.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <type_traits>
#include <variant>

#include "kgen/distributions.hpp"
#include "kgen/errors.hpp"
#include "kgen/quadrature.hpp"
#include "kgen/special_functions.hpp"

namespace kgen {
namespace {

// Below this kappa the incomplete-beta Lorenz curve is replaced by its
// incomplete-gamma limit, whose error is O(kappa^2).
constexpr double kLorenzGammaLimit = 1e-7;
constexpr double kNegligibleKappa = 1e-100;
constexpr double kGeLimitBand = 1e-5;

void require_curve(const KappaGenParams& p) {
  if (!(p.tail_exponent() > 1.0)) {
    throw CurveNonexistenceError(
        "Lorenz curve and Gini index exist only for alpha/kappa > 1 (alpha = " +
        std::to_string(p.alpha()) + ", kappa = " + std::to_string(p.kappa()) + ")");
  }
}

void require_mean(const KappaGenParams& p) {
  if (!(p.tail_exponent() > 1.0)) {
    throw MomentDivergenceError("inequality indices require a finite mean (alpha/kappa > 1)");
  }
}

void require_unit(double u, const char* fn) {
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError(std::string(fn) + " requires 0 <= u <= 1");
}

// ln(m / beta).
double log_relative_mean(const KappaGenParams& p) {
  return std::log(kgen_mean(p.with_beta(1.0)));
}

KappaGenParams as_kappa_gen(const WeibullParams& w) { return {w.shape(), w.scale(), 0.0}; }

}  // namespace

double kgen_lorenz(double u, const KappaGenParams& p) {
  require_curve(p);
  require_unit(u, "kgen_lorenz");
  if (u == 0.0) return 0.0;
  if (u == 1.0) return 1.0;
  const double a = p.alpha();
  const double k = p.kappa();
  if (k < kLorenzGammaLimit) return reg_lower_inc_gamma(1.0 + 1.0 / a, -std::log1p(-u));
  // y = 1 - x carries the precision once x is close to 1.
  const double log_y = 2.0 * k * std::log1p(-u);
  const double y = std::exp(log_y);
  if (y < 0.5) return 1.0 - reg_inc_beta(y, 0.5 / k - 0.5 / a, 1.0 + 1.0 / a);
  return reg_inc_beta(-std::expm1(log_y), 1.0 + 1.0 / a, 0.5 / k - 0.5 / a);
}

double kgen_lorenz_upper(double t, const KappaGenParams& p) {
  require_curve(p);
  require_unit(t, "kgen_lorenz_upper");
  if (t == 0.0) return 0.0;
  if (t == 1.0) return 1.0;
  const double a = p.alpha();
  const double k = p.kappa();
  if (k < kLorenzGammaLimit) return reg_upper_inc_gamma(1.0 + 1.0 / a, -std::log(t));
  const double log_y = 2.0 * k * std::log(t);
  const double y = std::exp(log_y);
  const double b = 0.5 / k - 0.5 / a;
  // I_y(b, a') ~ y^b / (b B(b, a')) once y underflows.
  if (log_y < -600.0) return std::exp(b * log_y - std::log(b) - log_beta(b, 1.0 + 1.0 / a));
  if (y < 0.5) return reg_inc_beta(y, b, 1.0 + 1.0 / a);
  return 1.0 - reg_inc_beta(-std::expm1(log_y), 1.0 + 1.0 / a, b);
}

double kgen_gini(const KappaGenParams& p) {
  require_curve(p);
  const double a = p.alpha();
  const double k = p.kappa();
  if (k < kNegligibleKappa) return -std::expm1(-std::numbers::ln2 / a);
  const double c = 0.5 / a;
  const double log_ratio = log_gamma_ratio(1.0 / k, -c, c) - log_gamma_ratio(0.5 / k, -c, c);
  return 1.0 - (2.0 * a + 2.0 * k) / (2.0 * a + k) * std::exp(log_ratio);
}

double kgen_mld(const KappaGenParams& p) {
  require_mean(p);
  const double a = p.alpha();
  const double k = p.kappa();
  const double deformation = k < kNegligibleKappa ? 0.0 : digamma_minus_log(0.5 / k) + k;
  return (std::numbers::egamma + deformation) / a + log_relative_mean(p);
}

double kgen_theil(const KappaGenParams& p) {
  require_mean(p);
  const double a = p.alpha();
  const double k = p.kappa();
  double deformation = 0.0;
  if (k >= kNegligibleKappa) {
    // -(psi(x - c) + psi(x + c)) / 2 - ln(2k) with x = 1/(2k), c = 1/(2a),
    // written through psi(z) - ln z.
    const double x = 0.5 / k;
    const double c = 0.5 / a;
    deformation = -0.5 * (digamma_minus_log(x - c) + digamma_minus_log(x + c) +
                          std::log1p(-k / a) + std::log1p(k / a)) -
                  a * k / (a + k);
  }
  return (digamma(1.0 + 1.0 / a) + deformation) / a - log_relative_mean(p);
}

double kgen_ge(double theta, const KappaGenParams& p) {
  require_mean(p);
  if (std::fabs(theta) < kGeLimitBand) return kgen_mld(p);
  if (std::fabs(theta - 1.0) < kGeLimitBand) return kgen_theil(p);
  const auto unit = p.with_beta(1.0);
  const double log_ratio = std::log(kgen_moment(theta, unit)) - theta * log_relative_mean(p);
  return std::expm1(log_ratio) / (theta * (theta - 1.0));
}

LorenzComparison lorenz_dominates(const KappaGenParams& p1, const KappaGenParams& p2) {
  require_curve(p1);
  require_curve(p2);
  const double a1 = p1.alpha();
  const double a2 = p2.alpha();
  const double t1 = p1.tail_exponent();
  const double t2 = p2.tail_exponent();
  if (a1 >= a2 && t1 >= t2) return {LorenzOrder::FirstDominates, a1 > a2 || t1 > t2};
  if (a2 >= a1 && t2 >= t1) return {LorenzOrder::SecondDominates, a2 > a1 || t2 > t1};
  return {LorenzOrder::Crossing, true};
}

// ---------------------------------------------------------------------------

namespace {

struct MixtureParts {
  double mean;
  double negative_total;  // lambda theta1 Gamma(1 + 1/s)
  double positive_mean;   // E_3(W)
};

MixtureParts mixture_parts(const NetWealthMixtureParams& p) {
  const auto& wb = p.negative_branch();
  const auto& kg = p.positive_branch();
  require_curve(kg);
  MixtureParts parts{};
  parts.negative_total = p.theta1() * wb.scale() * std::tgamma(1.0 + 1.0 / wb.shape());
  parts.positive_mean = kgen_mean(kg);
  parts.mean = p.theta3() * parts.positive_mean - parts.negative_total;
  return parts;
}

}  // namespace

double mixture_lorenz(double u, const NetWealthMixtureParams& p) {
  require_unit(u, "mixture_lorenz");
  const auto parts = mixture_parts(p);
  if (parts.mean == 0.0) {
    throw DegenerateNormalizationError("mixture Lorenz curve is undefined for zero mean wealth");
  }
  if (u == 0.0) return 0.0;
  if (u == 1.0) return 1.0;
  const auto& wb = p.negative_branch();
  if (u < p.theta1()) {
    const double g = upper_inc_gamma(1.0 + 1.0 / wb.shape(), std::log(p.theta1() / u));
    return -wb.scale() * p.theta1() * g / parts.mean;
  }
  if (u <= p.rho()) return -parts.negative_total / parts.mean;
  const double v = (u - p.rho()) / p.theta3();
  const double positive = v >= 1.0 ? 1.0 : kgen_lorenz(v, p.positive_branch());
  return (p.theta3() * parts.positive_mean * positive - parts.negative_total) / parts.mean;
}

MixtureGini mixture_gini(const NetWealthMixtureParams& p) {
  const auto parts = mixture_parts(p);
  const double denom = parts.mean + p.rho() * parts.negative_total;
  if (denom == 0.0 || !std::isfinite(denom)) {
    throw DegenerateNormalizationError(
        "mixture Gini normalization m + rho lambda theta1 Gamma(1 + 1/s) vanishes");
  }
  const auto& kg = p.positive_branch();
  const auto& wb = p.negative_branch();
  const double a = kg.alpha();
  const double k = kg.kappa();
  double positive = 0.0;
  if (p.theta3() > 0.0) {
    // (1 - rho)^2 beta (2k)^(-1 - 1/a) B(1/k - 1/(2a), 1 + 1/a)
    double log_term = std::log(kg.beta()) + log_gamma(1.0 + 1.0 / a);
    if (k < kNegligibleKappa) {
      log_term -= (1.0 + 1.0 / a) * std::numbers::ln2;
    } else {
      const double c = 0.5 / a;
      log_term += -(1.0 + 1.0 / a) * std::log(2.0 * k) + log_gamma_ratio(1.0 / k, -c, 1.0 + c);
    }
    positive = p.theta3() * p.theta3() * std::exp(log_term);
  }
  const double negative =
      (1.0 - p.theta1() * std::exp2(-1.0 - 1.0 / wb.shape())) * parts.negative_total;
  return {(parts.mean - 2.0 * (positive - negative)) / denom, parts.mean < 0.0};
}

double ekg2_lorenz(double u, const Ekg2Params& p) {
  require_unit(u, "ekg2_lorenz");
  const double b2 = p.q() - 0.5 / p.a();
  if (!(b2 > 0.0)) {
    throw CurveNonexistenceError("EkG2 Lorenz curve exists only for q > 1/(2a)");
  }
  if (u == 0.0) return 0.0;
  if (u == 1.0) return 1.0;
  const double a2 = p.p() + 1.0 / p.a();
  if (u <= 0.5) return reg_inc_beta(inv_reg_inc_beta(u, p.p(), p.q()), a2, b2);
  const double w = inv_reg_inc_beta(1.0 - u, p.q(), p.p());
  return 1.0 - reg_inc_beta(w, b2, a2);
}

// ---------------------------------------------------------------------------

QuantileFunction quantile_function(std::function<double(double)> q) {
  return {q, [q](double t) { return q(1.0 - t); }};
}

QuantileFunction quantile_function(const AnyParams& p) {
  return std::visit(
      [](const auto& params) -> QuantileFunction {
        using T = std::decay_t<decltype(params)>;
        if constexpr (std::is_same_v<T, KappaGenParams>) {
          return {[params](double u) { return kgen_quantile(u, params); },
                  [params](double t) { return kgen_quantile_upper(t, params); }};
        } else if constexpr (std::is_same_v<T, WeibullParams>) {
          return {[params](double u) { return weibull_quantile(u, params); },
                  [params](double t) { return weibull_quantile_upper(t, params); }};
        } else if constexpr (std::is_same_v<T, Ekg1Params>) {
          return {[params](double u) { return ekg1_quantile(u, params); },
                  [params](double t) { return ekg1_quantile_upper(t, params); }};
        } else if constexpr (std::is_same_v<T, Ekg2Params>) {
          return {[params](double u) { return ekg2_quantile(u, params); },
                  [params](double t) { return ekg2_quantile_upper(t, params); }};
        } else {
          return quantile_function([params](double u) { return mixture_quantile(u, params); });
        }
      },
      p);
}

double quantile_mean(const QuantileFunction& q) {
  const double m = quad::integrate_unit(q.of_u, q.of_tail);
  if (!std::isfinite(m)) throw MomentDivergenceError("quantile integral diverges");
  return m;
}

double quantile_lorenz(double u, const QuantileFunction& q, double mean) {
  require_unit(u, "quantile_lorenz");
  if (!std::isfinite(mean) || mean == 0.0) {
    throw DegenerateNormalizationError("quantile_lorenz requires a finite nonzero mean");
  }
  if (u == 0.0) return 0.0;
  if (u == 1.0) return 1.0;
  if (u <= 0.5) return quad::integrate_from_zero(q.of_u, u) / mean;
  return 1.0 - quad::integrate_from_zero(q.of_tail, 1.0 - u) / mean;
}

double quantile_gini(const QuantileFunction& q) {
  const double m = quantile_mean(q);
  if (m == 0.0) throw DegenerateNormalizationError("quantile_gini requires a nonzero mean");
  // integral of L = (1/m) int (1 - v) Q(v) dv
  const double weighted = quad::integrate_unit([&](double u) { return (1.0 - u) * q.of_u(u); },
                                               [&](double t) { return t * q.of_tail(t); });
  return 1.0 - 2.0 * weighted / m;
}

// ---------------------------------------------------------------------------

double lorenz(double u, const AnyParams& p) {
  if (const auto* k = std::get_if<KappaGenParams>(&p)) return kgen_lorenz(u, *k);
  if (const auto* w = std::get_if<WeibullParams>(&p)) return kgen_lorenz(u, as_kappa_gen(*w));
  if (const auto* e2 = std::get_if<Ekg2Params>(&p)) return ekg2_lorenz(u, *e2);
  if (const auto* m = std::get_if<NetWealthMixtureParams>(&p)) return mixture_lorenz(u, *m);
  const auto q = quantile_function(p);
  return quantile_lorenz(u, q, mean(p));
}

double gini(const AnyParams& p) {
  if (const auto* k = std::get_if<KappaGenParams>(&p)) return kgen_gini(*k);
  if (const auto* w = std::get_if<WeibullParams>(&p)) return kgen_gini(as_kappa_gen(*w));
  if (const auto* m = std::get_if<NetWealthMixtureParams>(&p)) return mixture_gini(*m).value;
  return quantile_gini(quantile_function(p));
}

namespace {

// GE family from the moment function and E[ln X], E[X ln X] by quadrature of
// the quantile function.
InequalityReport numeric_report(const AnyParams& p, const std::vector<double>& thetas,
                                const std::function<double(double)>& moment) {
  const auto q = quantile_function(p);
  const double m = mean(p);
  const double log_m = std::log(m);
  InequalityReport out;
  out.gini = quantile_gini(q);
  const double mean_log = quad::integrate_unit([&](double u) { return std::log(q.of_u(u)); },
                                               [&](double t) { return std::log(q.of_tail(t)); });
  const double mean_xlogx =
      quad::integrate_unit([&](double u) { const double x = q.of_u(u); return x * std::log(x); },
                           [&](double t) { const double x = q.of_tail(t); return x * std::log(x); });
  out.mld = log_m - mean_log;
  out.theil = mean_xlogx / m - log_m;
  for (double theta : thetas) {
    double value;
    if (std::fabs(theta) < kGeLimitBand) {
      value = *out.mld;
    } else if (std::fabs(theta - 1.0) < kGeLimitBand) {
      value = *out.theil;
    } else {
      value = std::expm1(std::log(moment(theta)) - theta * log_m) / (theta * (theta - 1.0));
    }
    out.ge_values.emplace_back(theta, value);
  }
  return out;
}

InequalityReport kgen_report(const KappaGenParams& p, const std::vector<double>& thetas) {
  InequalityReport out;
  out.gini = kgen_gini(p);
  out.mld = kgen_mld(p);
  out.theil = kgen_theil(p);
  for (double theta : thetas) out.ge_values.emplace_back(theta, kgen_ge(theta, p));
  return out;
}

}  // namespace

InequalityReport inequality_report(const AnyParams& p, const std::vector<double>& thetas) {
  if (const auto* k = std::get_if<KappaGenParams>(&p)) return kgen_report(*k, thetas);
  if (const auto* w = std::get_if<WeibullParams>(&p)) return kgen_report(as_kappa_gen(*w), thetas);
  if (const auto* m = std::get_if<NetWealthMixtureParams>(&p)) {
    const auto g = mixture_gini(*m);
    InequalityReport out;
    out.gini = g.value;
    out.gini_ambiguous = g.ambiguous;
    return out;
  }
  if (const auto* e1 = std::get_if<Ekg1Params>(&p)) {
    return numeric_report(p, thetas, [e1](double r) { return ekg1_moment(r, *e1); });
  }
  const auto& e2 = std::get<Ekg2Params>(p);
  return numeric_report(p, thetas, [&e2](double r) { return ekg2_moment(r, e2); });
}

}  // namespace kgen
