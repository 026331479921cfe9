#include <cmath>
#include <string>

#include "kgen/distributions.hpp"
#include "kgen/errors.hpp"
#include "kgen/special_functions.hpp"
#include "uniform.hpp"

namespace kgen {

MixtureDensity mixture_pdf(double w, const NetWealthMixtureParams& p) {
  if (w < 0.0) {
    return {p.theta1() == 0.0 ? 0.0 : p.theta1() * weibull_pdf(-w, p.negative_branch()), 0.0};
  }
  if (w > 0.0) {
    return {p.theta3() == 0.0 ? 0.0 : p.theta3() * kgen_pdf(w, p.positive_branch()), 0.0};
  }
  if (std::isnan(w)) throw DomainError("mixture_pdf requires a number");
  return {0.0, p.theta2()};
}

double mixture_cdf(double w, const NetWealthMixtureParams& p) {
  if (std::isnan(w)) throw DomainError("mixture_cdf requires a number");
  if (w < 0.0) return p.theta1() * weibull_ccdf(-w, p.negative_branch());
  if (w == 0.0) return p.rho();
  return p.rho() + p.theta3() * kgen_cdf(w, p.positive_branch());
}

double mixture_quantile(double u, const NetWealthMixtureParams& p) {
  if (!(u >= 0.0 && u < 1.0)) throw DomainError("mixture_quantile requires 0 <= u < 1");
  if (u < p.theta1()) {
    const auto& wb = p.negative_branch();
    return -wb.scale() * std::pow(std::log(p.theta1() / u), 1.0 / wb.shape());
  }
  if (u < p.rho() || p.theta3() == 0.0) return 0.0;
  const double v = (u - p.rho()) / p.theta3();
  if (v >= 1.0) throw DomainError("mixture_quantile: u beyond the positive branch");
  return kgen_quantile(v, p.positive_branch());
}

double mixture_moment(int r, const NetWealthMixtureParams& p) {
  if (r < 0) throw DomainError("mixture_moment requires an integer order r >= 0");
  if (r == 0) return 1.0;
  const auto& wb = p.negative_branch();
  double negative = 0.0;
  if (p.theta1() > 0.0) {
    const double sign = (r % 2 == 0) ? 1.0 : -1.0;
    negative = sign * p.theta1() * weibull_moment(r, wb);
  }
  double positive = 0.0;
  if (p.theta3() > 0.0) positive = p.theta3() * kgen_moment(r, p.positive_branch());
  return negative + positive;
}

double mixture_mean(const NetWealthMixtureParams& p) { return mixture_moment(1, p); }

std::vector<double> mixture_sample(std::size_t n, const NetWealthMixtureParams& p,
                                   std::uint64_t seed) {
  if (n == 0) throw DomainError("sample size must be at least 1");
  detail::UniformStream uniform(seed);
  const auto& wb = p.negative_branch();
  const auto& kg = p.positive_branch();
  std::vector<double> out(n);
  for (auto& v : out) {
    const double u = uniform();
    if (u < p.theta1()) {
      v = -wb.scale() * std::pow(std::log(p.theta1() / u), 1.0 / wb.shape());
    } else if (u < p.rho()) {
      v = 0.0;
    } else {
      // Position inside the positive branch, measured from both ends so the
      // far tail does not lose resolution.
      const double lower = (u - p.rho()) / p.theta3();
      const double upper = (1.0 - u) / p.theta3();
      v = lower <= 0.5 ? kgen_quantile(lower, kg) : kgen_quantile_upper(upper, kg);
    }
  }
  return out;
}

}  // namespace kgen
