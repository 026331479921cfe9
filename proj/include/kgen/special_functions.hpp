#pragma once

// Gamma- and beta-family special functions used by the closed-form moments,
// Lorenz curves and inequality indices.
namespace kgen {

struct ToleranceConfig {
  double rel_tol = 1e-12;
  int max_iter = 300;

  // Throws DomainError unless rel_tol > 0 and max_iter >= 1.
  void validate() const;
};

// Gamma(z); DomainError at the poles z = 0, -1, -2, ...
double gamma_fn(double z);
// ln Gamma(z) for z > 0.
double log_gamma(double z);

// ln Gamma(x + a) - ln Gamma(x + b), accurate when x is large compared with
// a and b (where the individual log-gammas are huge and nearly cancel).
// Requires x + a > 0 and x + b > 0.
double log_gamma_ratio(double x, double a, double b);

// psi(z) = Gamma'(z) / Gamma(z) for z > 0.
double digamma(double z);
// psi(z) - ln z, without cancellation for large z.
double digamma_minus_log(double z);

double beta_fn(double a, double b);
double log_beta(double a, double b);

// Regularized incomplete beta I_x(a, b) for 0 <= x <= 1, a, b > 0.
double reg_inc_beta(double x, double a, double b, const ToleranceConfig& tol = {});
// Unregularized B_x(a, b) = I_x(a, b) * B(a, b).
double inc_beta(double x, double a, double b, const ToleranceConfig& tol = {});
// x in [0, 1] with I_x(a, b) = u.
double inv_reg_inc_beta(double u, double a, double b, const ToleranceConfig& tol = {});

// Upper incomplete gamma Gamma(a, x) = int_x^inf t^(a-1) e^-t dt (not
// regularized), a > 0, x >= 0.
double upper_inc_gamma(double a, double x, const ToleranceConfig& tol = {});
// Q(a, x) = Gamma(a, x) / Gamma(a) and P(a, x) = 1 - Q(a, x).
double reg_upper_inc_gamma(double a, double x, const ToleranceConfig& tol = {});
double reg_lower_inc_gamma(double a, double x, const ToleranceConfig& tol = {});

}  // namespace kgen
