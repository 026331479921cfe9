#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "kgen/distributions.hpp"
#include "kgen/errors.hpp"
#include "kgen/quadrature.hpp"
#include "kgen/special_functions.hpp"
#include "uniform.hpp"

namespace kgen {
namespace {

// ln sinh(y), y > 0.
double log_sinh(double y) { return y + std::log(-std::expm1(-2.0 * y)) - std::numbers::ln2; }

// EkG1 in terms of sigma = -ln(1 - u) > 0. With c = 1/(2q) the quantile is
// b B^(1/a), B = 2q (1-u)^r sinh(c sigma).
struct Ekg1Kernel {
  double a, b, q, r, c;

  explicit Ekg1Kernel(const Ekg1Params& p)
      : a(p.a()), b(p.b()), q(p.q()), r(p.r()), c(0.5 / p.q()) {}

  double log_bracket(double sigma) const {
    return std::log(2.0 * q) - r * sigma + log_sinh(c * sigma);
  }

  double log_quantile(double sigma) const { return std::log(b) + log_bracket(sigma) / a; }

  // d ln B / d ln sigma.
  double log_slope(double sigma) const {
    const double y = c * sigma;
    const double y_coth = y < 1e-8 ? 1.0 + y * y / 3.0 : y / std::tanh(y);
    return y_coth - r * sigma;
  }

  double log_density(double sigma) const {
    const double log_b = log_bracket(sigma);
    // ln dB/du
    const double log_d = -(r - c - 1.0) * sigma +
                         std::log((0.5 - q * r) + (q * r + 0.5) * std::exp(-2.0 * c * sigma));
    return std::log(a) + (1.0 - 1.0 / a) * log_b - std::log(b) - log_d;
  }

  // sigma with ln B(sigma) = target, by a bracketed Newton iteration in
  // ln sigma. ln B is increasing in sigma, behaving like ln sigma near zero
  // and like (c - r) sigma at infinity.
  double solve_sigma(double target) const {
    if (target < -700.0) return std::exp(target);
    auto g = [&](double v) { return log_bracket(std::exp(v)) - target; };
    double v = target < 0.0 ? target
                            : std::log(std::max(1.0, (target - std::log(q)) / (c - r)));
    double gv = g(v);
    double lo;
    double hi;
    double step = 1.0;
    if (gv < 0.0) {
      lo = v;
      while (gv < 0.0) {
        v = lo + step;
        step *= 2.0;
        gv = g(v);
        if (gv < 0.0) lo = v;
      }
      hi = v;
    } else {
      hi = v;
      while (gv >= 0.0) {
        v = hi - step;
        step *= 2.0;
        gv = g(v);
        if (gv >= 0.0) hi = v;
      }
      lo = v;
    }
    for (int it = 0; it < 200; ++it) {
      if (gv == 0.0) break;
      if (gv < 0.0) lo = v; else hi = v;
      double next = v - gv / log_slope(std::exp(v));
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      const double change = std::fabs(next - v);
      v = next;
      gv = g(v);
      if (change <= 1e-15 * std::max(1.0, std::fabs(v)) || hi - lo <= 1e-15) break;
    }
    return std::exp(v);
  }

  double moment_limit() const { return a / (c - r); }
};

double sigma_from_u(double u) { return -std::log1p(-u); }

void require_probability(double u, const char* fn) {
  if (!(u >= 0.0 && u < 1.0)) throw DomainError(std::string(fn) + " requires 0 <= u < 1");
}

void require_tail(double t, const char* fn) {
  if (!(t > 0.0 && t <= 1.0)) throw DomainError(std::string(fn) + " requires 0 < t <= 1");
}

// E[X^r] as the integral of the quantile function raised to r, from its
// logarithm on both halves of the unit interval.
template <class LogLower, class LogUpper>
double quantile_power_integral(double r, LogLower&& log_lower, LogUpper&& log_upper) {
  return quad::integrate_unit([&](double u) { return std::exp(r * log_lower(u)); },
                              [&](double t) { return std::exp(r * log_upper(t)); });
}

// EkG2 transform z = y / (h + y/2), 1 - z = (h + y/2)^-2, h = sqrt(1 + y^2/4),
// carried in logs to keep both z and 1 - z accurate.
struct Ekg2Transform {
  double log_z;
  double log_w;  // ln(1 - z)
  double z;
  double w;
};

Ekg2Transform ekg2_transform(double x, const Ekg2Params& p) {
  const double log_y = p.a() * std::log(x / p.b());
  const double y = std::exp(log_y);
  double log_hy;
  if (y > 1e150) {
    log_hy = log_y;
  } else {
    log_hy = std::log(std::hypot(1.0, 0.5 * y) + 0.5 * y);
  }
  Ekg2Transform tr;
  tr.log_z = log_y - log_hy;
  tr.log_w = -2.0 * log_hy;
  tr.z = std::exp(tr.log_z);
  tr.w = std::exp(tr.log_w);
  return tr;
}

double ekg2_log_quantile_from(double log_z, double log_w, const Ekg2Params& p) {
  return std::log(p.b()) + (log_z - 0.5 * log_w) / p.a();
}

double ekg2_log_quantile_lower(double u, const Ekg2Params& p) {
  const double z = inv_reg_inc_beta(u, p.p(), p.q());
  return ekg2_log_quantile_from(std::log(z), std::log1p(-z), p);
}

double ekg2_log_quantile_upper(double t, const Ekg2Params& p) {
  const double w = inv_reg_inc_beta(t, p.q(), p.p());
  return ekg2_log_quantile_from(std::log1p(-w), std::log(w), p);
}

}  // namespace

// ---------------------------------------------------------------------------
// EkG1

double ekg1_quantile(double u, const Ekg1Params& p) {
  require_probability(u, "ekg1_quantile");
  if (u == 0.0) return 0.0;
  return std::exp(Ekg1Kernel(p).log_quantile(sigma_from_u(u)));
}

double ekg1_quantile_upper(double t, const Ekg1Params& p) {
  require_tail(t, "ekg1_quantile_upper");
  if (t == 1.0) return 0.0;
  return std::exp(Ekg1Kernel(p).log_quantile(-std::log(t)));
}

double ekg1_cdf(double x, const Ekg1Params& p) {
  if (!(x > 0.0)) return 0.0;
  if (std::isinf(x)) return 1.0;
  const Ekg1Kernel k(p);
  return -std::expm1(-k.solve_sigma(k.a * std::log(x / k.b)));
}

double ekg1_ccdf(double x, const Ekg1Params& p) {
  if (!(x > 0.0)) return 1.0;
  if (std::isinf(x)) return 0.0;
  const Ekg1Kernel k(p);
  return std::exp(-k.solve_sigma(k.a * std::log(x / k.b)));
}

double ekg1_density_at_u(double u, const Ekg1Params& p) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("ekg1_density_at_u requires 0 < u < 1");
  return std::exp(Ekg1Kernel(p).log_density(sigma_from_u(u)));
}

double ekg1_log_pdf(double x, const Ekg1Params& p) {
  if (!(x > 0.0)) throw DomainError("EkG1 density requires x > 0");
  const Ekg1Kernel k(p);
  return k.log_density(k.solve_sigma(k.a * std::log(x / k.b)));
}

double ekg1_pdf(double x, const Ekg1Params& p) { return std::exp(ekg1_log_pdf(x, p)); }

double ekg1_moment(double r, const Ekg1Params& p) {
  const Ekg1Kernel k(p);
  if (!(r > -k.a) || !(r < k.moment_limit())) {
    throw MomentDivergenceError("EkG1 moment of order " + std::to_string(r) +
                                " exists only for -a < r < a/(1/(2q) - r)");
  }
  if (r == 0.0) return 1.0;
  return quantile_power_integral(
      r, [&](double u) { return k.log_quantile(sigma_from_u(u)); },
      [&](double t) { return k.log_quantile(-std::log(t)); });
}

double ekg1_mean(const Ekg1Params& p) { return ekg1_moment(1.0, p); }

std::vector<double> ekg1_sample(std::size_t n, const Ekg1Params& p, std::uint64_t seed) {
  const Ekg1Kernel k(p);
  return detail::sample_by_inversion(
      n, seed, [&](double u) { return std::exp(k.log_quantile(sigma_from_u(u))); },
      [&](double t) { return std::exp(k.log_quantile(-std::log(t))); });
}

// ---------------------------------------------------------------------------
// EkG2

double ekg2_cdf(double x, const Ekg2Params& p) {
  if (!(x > 0.0)) return 0.0;
  if (std::isinf(x)) return 1.0;
  const auto tr = ekg2_transform(x, p);
  if (tr.z <= 0.5) return reg_inc_beta(tr.z, p.p(), p.q());
  return 1.0 - reg_inc_beta(tr.w, p.q(), p.p());
}

double ekg2_ccdf(double x, const Ekg2Params& p) {
  if (!(x > 0.0)) return 1.0;
  if (std::isinf(x)) return 0.0;
  const auto tr = ekg2_transform(x, p);
  if (tr.z <= 0.5) return 1.0 - reg_inc_beta(tr.z, p.p(), p.q());
  return reg_inc_beta(tr.w, p.q(), p.p());
}

double ekg2_quantile(double u, const Ekg2Params& p) {
  require_probability(u, "ekg2_quantile");
  if (u == 0.0) return 0.0;
  if (u > 0.5) return std::exp(ekg2_log_quantile_upper(1.0 - u, p));
  return std::exp(ekg2_log_quantile_lower(u, p));
}

double ekg2_quantile_upper(double t, const Ekg2Params& p) {
  require_tail(t, "ekg2_quantile_upper");
  if (t == 1.0) return 0.0;
  if (t > 0.5) return std::exp(ekg2_log_quantile_lower(1.0 - t, p));
  return std::exp(ekg2_log_quantile_upper(t, p));
}

double ekg2_log_pdf(double x, const Ekg2Params& p) {
  if (!(x > 0.0)) throw DomainError("EkG2 density requires x > 0");
  const double a = p.a();
  const auto tr = ekg2_transform(x, p);
  // 1 - z/2 = (1 + w) / 2
  return std::log(a / p.b()) - log_beta(p.p(), p.q()) + (p.p() - 1.0 / a) * tr.log_z +
         (p.q() + 0.5 / a) * tr.log_w - (std::log1p(tr.w) - std::numbers::ln2);
}

double ekg2_pdf(double x, const Ekg2Params& p) { return std::exp(ekg2_log_pdf(x, p)); }

double ekg2_moment(double r, const Ekg2Params& p) {
  if (!(r > -p.a() * p.p()) || !(r < 2.0 * p.a() * p.q())) {
    throw MomentDivergenceError("EkG2 moment of order " + std::to_string(r) +
                                " exists only for -a p < r < 2 a q");
  }
  if (r == 0.0) return 1.0;
  return quantile_power_integral(
      r, [&](double u) { return ekg2_log_quantile_lower(u, p); },
      [&](double t) { return ekg2_log_quantile_upper(t, p); });
}

double ekg2_mean(const Ekg2Params& p) { return ekg2_moment(1.0, p); }

std::vector<double> ekg2_sample(std::size_t n, const Ekg2Params& p, std::uint64_t seed) {
  return detail::sample_by_inversion(
      n, seed, [&](double u) { return std::exp(ekg2_log_quantile_lower(u, p)); },
      [&](double t) { return std::exp(ekg2_log_quantile_upper(t, p)); });
}

}  // namespace kgen
