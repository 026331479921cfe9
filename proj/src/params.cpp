#include "kgen/params.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "kgen/errors.hpp"

namespace kgen {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(std::string("invalid parameters: ") + what);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

KappaGenParams::KappaGenParams(double alpha, double beta, double kappa)
    : alpha_(alpha), beta_(beta), kappa_(kappa) {
  require(finite_positive(alpha), "alpha > 0");
  require(finite_positive(beta), "beta > 0");
  require(kappa >= 0.0 && kappa < 1.0, "0 <= kappa < 1");
}

double KappaGenParams::tail_exponent() const noexcept {
  return kappa_ == 0.0 ? std::numeric_limits<double>::infinity() : alpha_ / kappa_;
}

WeibullParams::WeibullParams(double shape, double scale) : shape_(shape), scale_(scale) {
  require(finite_positive(shape), "Weibull shape s > 0");
  require(finite_positive(scale), "Weibull scale lambda > 0");
}

Ekg1Params::Ekg1Params(double a, double b, double q, double r) : a_(a), b_(b), q_(q), r_(r) {
  require(finite_positive(a), "a > 0");
  require(finite_positive(b), "b > 0");
  require(finite_positive(q), "q > 0");
  require(std::isfinite(r) && r < 1.0 / (2.0 * q), "r < 1/(2q)");
}

Ekg1Params Ekg1Params::from_kappa_gen(const KappaGenParams& p) {
  require(p.kappa() > 0.0, "kappa > 0 for the EkG1 reduction");
  return {p.alpha(), p.beta(), 1.0 / (2.0 * p.kappa()), 0.0};
}

Ekg2Params::Ekg2Params(double a, double b, double p, double q) : a_(a), b_(b), p_(p), q_(q) {
  require(finite_positive(a), "a > 0");
  require(finite_positive(b), "b > 0");
  require(finite_positive(p), "p > 0");
  require(finite_positive(q), "q > 0");
}

Ekg2Params Ekg2Params::from_kappa_gen(const KappaGenParams& p) {
  require(p.kappa() > 0.0, "kappa > 0 for the EkG2 reduction");
  const double b = p.beta() * std::exp(-std::log(2.0 * p.kappa()) / p.alpha());
  return {p.alpha(), b, 1.0, 1.0 / (2.0 * p.kappa())};
}

NetWealthMixtureParams::NetWealthMixtureParams(WeibullParams negative_branch, double theta1,
                                               double theta2, double theta3,
                                               KappaGenParams positive_branch)
    : negative_(negative_branch),
      theta1_(theta1),
      theta2_(theta2),
      theta3_(theta3),
      positive_(positive_branch) {
  require(theta1 >= 0.0 && theta1 <= 1.0, "0 <= theta1 <= 1");
  require(theta2 >= 0.0 && theta2 <= 1.0, "0 <= theta2 <= 1");
  require(theta3 >= 0.0 && theta3 <= 1.0, "0 <= theta3 <= 1");
  require(std::fabs(theta1 + theta2 + theta3 - 1.0) <= 1e-12, "theta1 + theta2 + theta3 = 1");
}

NetWealthMixtureParams::NetWealthMixtureParams(WeibullParams negative_branch, double theta1,
                                               double theta2, KappaGenParams positive_branch)
    : NetWealthMixtureParams(negative_branch, theta1, theta2, 1.0 - theta1 - theta2,
                             positive_branch) {}

Family family_of(const AnyParams& p) { return static_cast<Family>(p.index()); }

std::string family_name(Family f) {
  switch (f) {
    case Family::KappaGen: return "kappagen";
    case Family::Weibull: return "weibull";
    case Family::Ekg1: return "ekg1";
    case Family::Ekg2: return "ekg2";
    case Family::Mixture: return "mixture";
  }
  return "unknown";
}

}  // namespace kgen
