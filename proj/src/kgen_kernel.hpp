#pragma once

#include <cmath>
#include <limits>
#include <numbers>

namespace kgen::detail {

// For y = (x / beta)^alpha >= 0:
//   log_ccdf  = ln exp_k(-y) = -asinh(k y) / k
//   log_root  = ln sqrt(1 + k^2 y^2)
// sharing one square root. asinh(z) = log1p(z + z^2 / (1 + sqrt(1 + z^2)))
// keeps full relative accuracy for small z.
struct KgenTerms {
  double log_ccdf;
  double log_root;
};

inline KgenTerms kgen_terms(double y, double kappa) {
  if (kappa == 0.0) return {-y, 0.0};
  if (std::isinf(y)) return {-std::numeric_limits<double>::infinity(), y};
  const double z = kappa * y;
  if (z > 1e150) {
    const double lz = std::log(z);
    return {-(lz + std::numbers::ln2) / kappa, lz};
  }
  const double s = std::sqrt(1.0 + z * z);
  return {-std::log1p(z + z * z / (1.0 + s)) / kappa, 0.5 * std::log1p(z * z)};
}

// ln [sinh(k L) / k] for L > 0, and its k -> 0 limit ln L.
inline double log_kappa_log_of_log(double L, double kappa) {
  const double kl = kappa * L;
  if (kl < 1e-4) return std::log(L) + std::log1p(kl * kl / 6.0);
  if (kl < 1.0) return std::log(std::sinh(kl) / kappa);
  return kl + std::log(-std::expm1(-2.0 * kl)) - std::numbers::ln2 - std::log(kappa);
}

}  // namespace kgen::detail
