#include "kgen/kappa_math.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "kgen/errors.hpp"

namespace kgen {
namespace {

double checked_kappa(double kappa) {
  const double k = std::fabs(kappa);
  if (!(k < 1.0)) {
    throw DomainError("kappa must satisfy |kappa| < 1, got " + std::to_string(kappa));
  }
  return k;
}

}  // namespace

double kappa_exp_log(double x, double kappa) {
  const double k = checked_kappa(kappa);
  if (k == 0.0) return x;
  const double kx = k * x;
  // asinh(kx)/k = x - k^2 x^3 / 6 + O(k^4 x^5)
  if (k < kSmallKappa && std::fabs(kx) < 1e-3) return x - kx * kx * x / 6.0;
  return std::asinh(kx) / k;
}

double kappa_exp(double x, double kappa) {
  if (std::isnan(x)) return x;
  return std::exp(kappa_exp_log(x, kappa));
}

double kappa_log(double x, double kappa) {
  const double k = checked_kappa(kappa);
  if (!(x > 0.0)) throw DomainError("kappa_log requires x > 0");
  const double lx = std::log(x);
  if (k == 0.0) return lx;
  const double klx = k * lx;
  if (k < kSmallKappa && std::fabs(klx) < 1e-3) return lx + klx * klx * lx / 6.0;
  return std::sinh(klx) / k;
}

double kappa_sum(double x, double y, double kappa) {
  const double k = checked_kappa(kappa);
  return x * std::hypot(1.0, k * y) + y * std::hypot(1.0, k * x);
}

std::vector<double> xi_coefficients(int n_max, double kappa) {
  if (n_max < 0) throw DomainError("xi_coefficients requires n_max >= 0");
  const double k2 = kappa * kappa;
  std::vector<double> xi(static_cast<std::size_t>(n_max) + 1);
  xi[0] = 1.0;
  if (n_max >= 1) xi[1] = 1.0;
  for (int n = 0; n + 2 <= n_max; ++n) {
    xi[n + 2] = (1.0 - static_cast<double>(n) * n * k2) * xi[n];
  }
  return xi;
}

double kappa_exp_taylor(double x, double kappa, int n_terms) {
  checked_kappa(kappa);
  if (n_terms < 1) throw DomainError("kappa_exp_taylor requires n_terms >= 1");
  if (!(kappa * kappa * x * x < 1.0)) {
    throw DomainError("Taylor series of kappa_exp converges only for kappa^2 x^2 < 1");
  }
  const auto xi = xi_coefficients(n_terms - 1, kappa);
  double power_over_factorial = 1.0;
  double sum = 0.0;
  for (int n = 0; n < n_terms; ++n) {
    if (n > 0) power_over_factorial *= x / n;
    sum += xi[n] * power_over_factorial;
  }
  return sum;
}

double kappa_exp_asymptote(double x, double kappa) {
  const double k = checked_kappa(kappa);
  if (k == 0.0) throw DomainError("kappa_exp has no power-law regime at kappa = 0");
  if (x == 0.0) throw DomainError("kappa_exp_asymptote requires x != 0");
  const double log_base = std::log(2.0 * k * std::fabs(x));
  return std::exp(std::copysign(1.0, x) * log_base / k);
}

}  // namespace kgen
