#include <cmath>
#include <string>

#include "kgen/distributions.hpp"
#include "kgen/errors.hpp"
#include "kgen/special_functions.hpp"
#include "kgen_kernel.hpp"
#include "uniform.hpp"

namespace kgen {
namespace {

// Below this kappa the deformation is invisible in double precision for the
// gamma-ratio formulas, which then reduce to their Weibull limits.
constexpr double kNegligibleKappa = 1e-100;

void require_probability(double u, const char* fn) {
  if (!(u >= 0.0 && u < 1.0)) {
    throw DomainError(std::string(fn) + " requires 0 <= u < 1");
  }
}

void require_tail(double t, const char* fn) {
  if (!(t > 0.0 && t <= 1.0)) {
    throw DomainError(std::string(fn) + " requires 0 < t <= 1");
  }
}

}  // namespace

double kgen_log_pdf(double x, const KappaGenParams& p) {
  if (!(x > 0.0)) throw DomainError("kappa-generalized density requires x > 0");
  const double a = p.alpha();
  const double lz = std::log(x / p.beta());
  const double y = std::exp(a * lz);
  const auto terms = detail::kgen_terms(y, p.kappa());
  return std::log(a / p.beta()) + (a - 1.0) * lz + terms.log_ccdf - terms.log_root;
}

double kgen_pdf(double x, const KappaGenParams& p) { return std::exp(kgen_log_pdf(x, p)); }

double kgen_ccdf(double x, const KappaGenParams& p) {
  if (!(x > 0.0)) return 1.0;
  const double y = std::pow(x / p.beta(), p.alpha());
  return std::exp(detail::kgen_terms(y, p.kappa()).log_ccdf);
}

double kgen_cdf(double x, const KappaGenParams& p) {
  if (!(x > 0.0)) return 0.0;
  const double y = std::pow(x / p.beta(), p.alpha());
  return -std::expm1(detail::kgen_terms(y, p.kappa()).log_ccdf);
}

double kgen_quantile_upper(double t, const KappaGenParams& p) {
  require_tail(t, "kgen_quantile_upper");
  if (t == 1.0) return 0.0;
  const double L = -std::log(t);
  return p.beta() * std::exp(detail::log_kappa_log_of_log(L, p.kappa()) / p.alpha());
}

double kgen_quantile(double u, const KappaGenParams& p) {
  require_probability(u, "kgen_quantile");
  if (u == 0.0) return 0.0;
  const double L = -std::log1p(-u);
  return p.beta() * std::exp(detail::log_kappa_log_of_log(L, p.kappa()) / p.alpha());
}

double kgen_moment(double r, const KappaGenParams& p) {
  const double a = p.alpha();
  const double k = p.kappa();
  if (!(r > -a) || !(r < p.tail_exponent())) {
    throw MomentDivergenceError("moment of order " + std::to_string(r) +
                                " exists only for -alpha < r < alpha/kappa");
  }
  if (r == 0.0) return 1.0;
  const double ra = r / a;
  double log_m = r * std::log(p.beta()) + log_gamma(1.0 + ra);
  if (k >= kNegligibleKappa) {
    log_m += -ra * std::log(2.0 * k) - std::log1p(ra * k) +
             log_gamma_ratio(1.0 / (2.0 * k), -0.5 * ra, 0.5 * ra);
  }
  return std::exp(log_m);
}

double kgen_mean(const KappaGenParams& p) { return kgen_moment(1.0, p); }

double kgen_variance(const KappaGenParams& p) {
  const double m = kgen_mean(p);
  return kgen_moment(2.0, p) - m * m;
}

std::optional<double> kgen_mode(const KappaGenParams& p) {
  const double a = p.alpha();
  if (a <= 1.0) return std::nullopt;
  const double k2 = p.kappa() * p.kappa();
  const double A = a * a + 2.0 * k2 * (a - 1.0);
  const double D = 2.0 * k2 * (a * a - k2);
  const double eps = 2.0 * D * (a - 1.0) * (a - 1.0) / (A * A);
  // x^(2 alpha) = (A / D)(sqrt(1 + eps) - 1) rewritten without the 0/0 at k = 0.
  const double log_x2a = std::log(2.0) + 2.0 * std::log(a - 1.0) - std::log(A) -
                         std::log(std::sqrt(1.0 + eps) + 1.0);
  return p.beta() * std::exp(log_x2a / (2.0 * a));
}

std::vector<double> kgen_sample(std::size_t n, const KappaGenParams& p, std::uint64_t seed) {
  return detail::sample_by_inversion(
      n, seed, [&](double u) { return kgen_quantile(u, p); },
      [&](double t) { return kgen_quantile_upper(t, p); });
}

KappaGenParams kgen_from_normalized(double alpha, double kappa) {
  const KappaGenParams unit(alpha, 1.0, kappa);
  if (!(unit.tail_exponent() > 1.0)) {
    throw MomentDivergenceError("unit-mean normalization requires alpha/kappa > 1");
  }
  if (kappa < kNegligibleKappa) return unit.with_beta(1.0 / std::tgamma(1.0 + 1.0 / alpha));
  // lambda = (1/(2k)) [Gamma(1/a) / (k + a) * Gamma(1/(2k) - 1/(2a)) / Gamma(1/(2k) + 1/(2a))]^a
  // and beta = lambda^(-1/a).
  const double log_bracket = log_gamma(1.0 / alpha) - std::log(kappa + alpha) +
                             log_gamma_ratio(0.5 / kappa, -0.5 / alpha, 0.5 / alpha);
  const double log_lambda = -std::log(2.0 * kappa) + alpha * log_bracket;
  return unit.with_beta(std::exp(-log_lambda / alpha));
}

double weibull_log_pdf(double x, const WeibullParams& p) {
  if (!(x > 0.0)) throw DomainError("Weibull density requires x > 0");
  const double s = p.shape();
  const double lz = std::log(x / p.scale());
  return std::log(s / p.scale()) + (s - 1.0) * lz - std::exp(s * lz);
}

double weibull_pdf(double x, const WeibullParams& p) { return std::exp(weibull_log_pdf(x, p)); }

double weibull_cdf(double x, const WeibullParams& p) {
  if (!(x > 0.0)) return 0.0;
  return -std::expm1(-std::pow(x / p.scale(), p.shape()));
}

double weibull_ccdf(double x, const WeibullParams& p) {
  if (!(x > 0.0)) return 1.0;
  return std::exp(-std::pow(x / p.scale(), p.shape()));
}

double weibull_quantile(double u, const WeibullParams& p) {
  require_probability(u, "weibull_quantile");
  if (u == 0.0) return 0.0;
  return p.scale() * std::pow(-std::log1p(-u), 1.0 / p.shape());
}

double weibull_quantile_upper(double t, const WeibullParams& p) {
  require_tail(t, "weibull_quantile_upper");
  if (t == 1.0) return 0.0;
  return p.scale() * std::pow(-std::log(t), 1.0 / p.shape());
}

double weibull_moment(double r, const WeibullParams& p) {
  if (!(r > -p.shape())) {
    throw MomentDivergenceError("Weibull moment of order r exists only for r > -s");
  }
  return std::exp(r * std::log(p.scale()) + log_gamma(1.0 + r / p.shape()));
}

double weibull_mean(const WeibullParams& p) { return weibull_moment(1.0, p); }

std::vector<double> weibull_sample(std::size_t n, const WeibullParams& p, std::uint64_t seed) {
  return detail::sample_by_inversion(
      n, seed, [&](double u) { return weibull_quantile(u, p); },
      [&](double t) { return weibull_quantile_upper(t, p); });
}

}  // namespace kgen
