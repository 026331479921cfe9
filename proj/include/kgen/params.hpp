#pragma once

#include <string>
#include <variant>

// Immutable parameter sets of the kappa-generalized family. Constructors
// validate their invariants and throw DomainError naming the violated one.
namespace kgen {

// F(x) = 1 - exp_k(-(x / beta)^alpha), x > 0.
class KappaGenParams {
 public:
  KappaGenParams(double alpha, double beta, double kappa);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double kappa() const noexcept { return kappa_; }
  // alpha / kappa, +inf at kappa = 0. The Pareto tail exponent.
  double tail_exponent() const noexcept;

  KappaGenParams with_beta(double beta) const { return {alpha_, beta, kappa_}; }

  friend bool operator==(const KappaGenParams&, const KappaGenParams&) = default;

 private:
  double alpha_;
  double beta_;
  double kappa_;
};

class WeibullParams {
 public:
  WeibullParams(double shape, double scale);

  double shape() const noexcept { return shape_; }
  double scale() const noexcept { return scale_; }

  friend bool operator==(const WeibullParams&, const WeibullParams&) = default;

 private:
  double shape_;
  double scale_;
};

// Extended kappa-generalized of the first kind, defined by its quantile
// function. Requires a, b, q > 0 and r < 1 / (2q).
class Ekg1Params {
 public:
  Ekg1Params(double a, double b, double q, double r);

  // r = 0, q = 1 / (2 kappa) reproduces the kappa-generalized quantile.
  // Requires kappa > 0.
  static Ekg1Params from_kappa_gen(const KappaGenParams& p);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double q() const noexcept { return q_; }
  double r() const noexcept { return r_; }

  friend bool operator==(const Ekg1Params&, const Ekg1Params&) = default;

 private:
  double a_;
  double b_;
  double q_;
  double r_;
};

// Extended kappa-generalized of the second kind, F(x) = I_z(p, q).
class Ekg2Params {
 public:
  Ekg2Params(double a, double b, double p, double q);

  // p = 1, q = 1 / (2 kappa), b = beta (2 kappa)^(-1/alpha) reproduces the
  // kappa-generalized distribution. Requires kappa > 0.
  static Ekg2Params from_kappa_gen(const KappaGenParams& p);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }

  friend bool operator==(const Ekg2Params&, const Ekg2Params&) = default;

 private:
  double a_;
  double b_;
  double p_;
  double q_;
};

// Net wealth: Weibull branch on w < 0 (weight theta1), atom at 0 (theta2),
// kappa-generalized branch on w > 0 (theta3).
class NetWealthMixtureParams {
 public:
  NetWealthMixtureParams(WeibullParams negative_branch, double theta1, double theta2,
                         double theta3, KappaGenParams positive_branch);
  // theta3 = 1 - theta1 - theta2.
  NetWealthMixtureParams(WeibullParams negative_branch, double theta1, double theta2,
                         KappaGenParams positive_branch);

  const WeibullParams& negative_branch() const noexcept { return negative_; }
  const KappaGenParams& positive_branch() const noexcept { return positive_; }
  double theta1() const noexcept { return theta1_; }
  double theta2() const noexcept { return theta2_; }
  double theta3() const noexcept { return theta3_; }
  double rho() const noexcept { return theta1_ + theta2_; }

  friend bool operator==(const NetWealthMixtureParams&, const NetWealthMixtureParams&) = default;

 private:
  WeibullParams negative_;
  double theta1_;
  double theta2_;
  double theta3_;
  KappaGenParams positive_;
};

enum class Family { KappaGen, Weibull, Ekg1, Ekg2, Mixture };

using AnyParams =
    std::variant<KappaGenParams, WeibullParams, Ekg1Params, Ekg2Params, NetWealthMixtureParams>;

Family family_of(const AnyParams& p);
std::string family_name(Family f);

}  // namespace kgen
