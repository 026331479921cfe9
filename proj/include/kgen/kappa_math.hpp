#pragma once

#include <vector>

// Kaniadakis kappa-deformed elementary functions.
//
// The deformation parameter enters only through |kappa| (exp_{-k} == exp_k),
// and must satisfy |kappa| < 1. kappa == 0 gives the ordinary functions.
// All functions are pure.
namespace kgen {

// Below this magnitude kappa is treated by series corrections around the
// undeformed function instead of the direct formulas.
inline constexpr double kSmallKappa = 1e-8;

// exp_k(x) = (sqrt(1 + k^2 x^2) + k x)^(1/k), evaluated as exp(asinh(k x) / k).
// Saturates to +inf (x -> +inf) and to 0 (x -> -inf).
double kappa_exp(double x, double kappa);

// Natural logarithm of kappa_exp(x, kappa), i.e. asinh(k x) / k. Finite for
// every finite x, useful when kappa_exp itself would over- or underflow.
double kappa_exp_log(double x, double kappa);

// ln_k(x) = (x^k - x^-k) / (2k) = sinh(k ln x) / k, the inverse of kappa_exp.
// Throws DomainError for x <= 0.
double kappa_log(double x, double kappa);

// Deformed sum x (+)_k y = x sqrt(1 + k^2 y^2) + y sqrt(1 + k^2 x^2), under
// which kappa_exp(x (+) y) = kappa_exp(x) * kappa_exp(y).
double kappa_sum(double x, double y, double kappa);

// xi_0 .. xi_{n_max} of the Taylor series sum xi_n(k) x^n / n!, from
// xi_{n+2} = (1 - n^2 k^2) xi_n with xi_0 = xi_1 = 1.
std::vector<double> xi_coefficients(int n_max, double kappa);

// Partial sum of the first n_terms Taylor terms. The series converges only
// for k^2 x^2 < 1; outside that region a DomainError is thrown.
double kappa_exp_taylor(double x, double kappa, int n_terms);

// Power-law regime |2 k x|^(+-1/|k|), sign following x. Requires kappa != 0
// and x != 0.
double kappa_exp_asymptote(double x, double kappa);

}  // namespace kgen
