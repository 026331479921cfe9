#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "kgen/params.hpp"

namespace kgen {

// ---------------------------------------------------------------------------
// kappa-generalized

double kgen_pdf(double x, const KappaGenParams& p);
double kgen_log_pdf(double x, const KappaGenParams& p);
double kgen_cdf(double x, const KappaGenParams& p);
double kgen_ccdf(double x, const KappaGenParams& p);
// beta [ln_k(1 / (1 - u))]^(1/alpha). DomainError unless 0 <= u < 1.
double kgen_quantile(double u, const KappaGenParams& p);
// Quantile at u = 1 - t, without rounding 1 - t. Requires 0 < t <= 1.
double kgen_quantile_upper(double t, const KappaGenParams& p);

// E[X^r], defined for -alpha < r < alpha / kappa.
double kgen_moment(double r, const KappaGenParams& p);
double kgen_mean(const KappaGenParams& p);
double kgen_variance(const KappaGenParams& p);
// Interior mode for alpha > 1; nullopt when the density has a pole at 0.
std::optional<double> kgen_mode(const KappaGenParams& p);

std::vector<double> kgen_sample(std::size_t n, const KappaGenParams& p, std::uint64_t seed);

// Unit-mean member with the given shape parameters.
KappaGenParams kgen_from_normalized(double alpha, double kappa);

// ---------------------------------------------------------------------------
// Weibull, F(x) = 1 - exp(-(x / lambda)^s)

double weibull_pdf(double x, const WeibullParams& p);
double weibull_log_pdf(double x, const WeibullParams& p);
double weibull_cdf(double x, const WeibullParams& p);
double weibull_ccdf(double x, const WeibullParams& p);
double weibull_quantile(double u, const WeibullParams& p);
double weibull_quantile_upper(double t, const WeibullParams& p);
double weibull_moment(double r, const WeibullParams& p);
double weibull_mean(const WeibullParams& p);
std::vector<double> weibull_sample(std::size_t n, const WeibullParams& p, std::uint64_t seed);

// ---------------------------------------------------------------------------
// EkG1

double ekg1_quantile(double u, const Ekg1Params& p);
double ekg1_quantile_upper(double t, const Ekg1Params& p);
// Inverts the quantile numerically; accurate to about 1e-14 in u.
double ekg1_cdf(double x, const Ekg1Params& p);
double ekg1_ccdf(double x, const Ekg1Params& p);
// Density as a function of the cumulative probability, 0 < u < 1.
double ekg1_density_at_u(double u, const Ekg1Params& p);
double ekg1_pdf(double x, const Ekg1Params& p);
double ekg1_log_pdf(double x, const Ekg1Params& p);
// Quadrature of the quantile function; exists for -a < r < a / (1/(2q) - r).
double ekg1_moment(double r, const Ekg1Params& p);
double ekg1_mean(const Ekg1Params& p);
std::vector<double> ekg1_sample(std::size_t n, const Ekg1Params& p, std::uint64_t seed);

// ---------------------------------------------------------------------------
// EkG2

double ekg2_cdf(double x, const Ekg2Params& p);
double ekg2_ccdf(double x, const Ekg2Params& p);
double ekg2_quantile(double u, const Ekg2Params& p);
double ekg2_quantile_upper(double t, const Ekg2Params& p);
double ekg2_pdf(double x, const Ekg2Params& p);
double ekg2_log_pdf(double x, const Ekg2Params& p);
// Quadrature of the quantile function; exists for -a p < r < 2 a q.
double ekg2_moment(double r, const Ekg2Params& p);
double ekg2_mean(const Ekg2Params& p);
std::vector<double> ekg2_sample(std::size_t n, const Ekg2Params& p, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Net-wealth mixture

// Continuous density at w plus the probability mass sitting exactly at w
// (theta2 at w == 0, zero elsewhere).
struct MixtureDensity {
  double density = 0.0;
  double atom_mass = 0.0;
};

MixtureDensity mixture_pdf(double w, const NetWealthMixtureParams& p);
double mixture_cdf(double w, const NetWealthMixtureParams& p);
double mixture_quantile(double u, const NetWealthMixtureParams& p);
// E[W^r] for integer r >= 0.
double mixture_moment(int r, const NetWealthMixtureParams& p);
double mixture_mean(const NetWealthMixtureParams& p);
std::vector<double> mixture_sample(std::size_t n, const NetWealthMixtureParams& p,
                                   std::uint64_t seed);

// ---------------------------------------------------------------------------
// Family-generic dispatch

double pdf(double x, const AnyParams& p);
double log_pdf(double x, const AnyParams& p);
double cdf(double x, const AnyParams& p);
double ccdf(double x, const AnyParams& p);
double quantile(double u, const AnyParams& p);
double mean(const AnyParams& p);
std::vector<double> sample(std::size_t n, const AnyParams& p, std::uint64_t seed);

}  // namespace kgen
