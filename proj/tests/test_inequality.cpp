#include <gtest/gtest.h>

#include <cmath>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <random>

#include "kgen/distributions.hpp"
#include "kgen/errors.hpp"
#include "kgen/inequality.hpp"
#include "kgen/special_functions.hpp"
#include "oracles.hpp"

using namespace kgen;

namespace {

constexpr double kEuler = 0.57721566490153286061;

const NetWealthMixtureParams kFig5(WeibullParams(0.7, 1.0), 0.2, 0.1, KappaGenParams(2.0, 10.0, 0.75));

// (1/m) int_0^u Q(t) dt with Boost tanh-sinh.
template <class Q>
double lorenz_oracle(double u, Q q, double m) {
  return oracle::integrate([&](double t) { return q(t); }, 0.0, u) / m;
}

// Sign pattern of L1 - L2 on a 1000-point grid: +1 when only >= 0 seen,
// -1 when only <= 0, 0 when both strictly.
int grid_sign(const KappaGenParams& a, const KappaGenParams& b) {
  bool pos = false, neg = false;
  for (int i = 1; i < 1000; ++i) {
    const double u = i / 1000.0;
    const double d = kgen_lorenz(u, a) - kgen_lorenz(u, b);
    if (d > 1e-13) pos = true;
    if (d < -1e-13) neg = true;
  }
  return pos && neg ? 0 : (neg ? -1 : 1);
}

}  // namespace

TEST(KgenLorenz, EndpointsAndLimits) {
  const KappaGenParams p(2.0, 1.0, 0.75);
  EXPECT_EQ(kgen_lorenz(0.0, p), 0.0);
  EXPECT_EQ(kgen_lorenz(1.0, p), 1.0);
  for (double k : {0.0, 1e-9}) {
    const KappaGenParams e(1.0, 3.0, k);
    for (double u : {0.1, 0.5, 0.9, 0.999}) {
      EXPECT_NEAR(kgen_lorenz(u, e), u + (1.0 - u) * std::log1p(-u), 1e-9);
    }
  }
  EXPECT_THROW(kgen_lorenz(0.5, KappaGenParams(0.5, 1.0, 0.5)), CurveNonexistenceError);
  EXPECT_THROW(kgen_lorenz(0.5, KappaGenParams(0.4, 1.0, 0.5)), CurveNonexistenceError);
}

TEST(KgenLorenz, AgainstQuadrature) {
  const KappaGenParams p(2.0, 1.0, 0.75);
  const double m = kgen_mean(p);
  EXPECT_NEAR(kgen_lorenz(0.5, p), lorenz_oracle(0.5, [&](double t) { return kgen_quantile(t, p); }, m), 1e-8);
  std::mt19937_64 gen(51);
  std::uniform_real_distribution<double> ua(0.5, 5.0), uf(0.0, 0.9), uu(0.01, 0.99);
  for (int i = 0; i < 25; ++i) {
    const double a = ua(gen);
    const KappaGenParams q(a, 1.0, std::min(0.95, a * uf(gen)));
    const double u = uu(gen);
    const double ref = lorenz_oracle(u, [&](double t) { return kgen_quantile(t, q); }, kgen_mean(q));
    EXPECT_NEAR(kgen_lorenz(u, q), ref, 1e-8) << q.alpha() << " " << q.kappa() << " " << u;
  }
}

TEST(KgenLorenz, UpperTail) {
  const KappaGenParams heavy(1.8354, 1.0, 0.9445);
  for (double t : {0.3, 0.5, 0.9}) EXPECT_NEAR(kgen_lorenz_upper(t, heavy), 1.0 - kgen_lorenz(1.0 - t, heavy), 1e-14);
  EXPECT_EQ(kgen_lorenz_upper(0.0, heavy), 0.0);
  EXPECT_EQ(kgen_lorenz_upper(1.0, heavy), 1.0);
  // Top share (1/m) int_{Q(1-t)}^inf x f(x) dx with x = x_t e^s.
  for (const auto& p : {heavy, KappaGenParams(2.0, 1.0, 0.5), KappaGenParams(1.5, 2.0, 0.0)}) {
    const double m = kgen_mean(p);
    for (double t : {1e-3, 1.8e-9}) {
      const double xt = kgen_quantile_upper(t, p);
      const double top = oracle::integrate_gk(
          [&](double s) {
            const double x = xt * std::exp(s);
            const double v = x * (x * kgen_pdf(x, p));
            return std::isfinite(v) ? v : 0.0;
          },
          0.0, std::numeric_limits<double>::infinity()) / m;
      EXPECT_NEAR(kgen_lorenz_upper(t, p) / top, 1.0, 1e-8) << p.kappa() << " " << t;
    }
  }
  // Far tail against extended-precision Boost, where t^(2 kappa) underflows a double.
  for (const auto& p : {heavy, KappaGenParams(2.0, 1.0, 0.5), KappaGenParams(1.5, 2.0, 0.0)}) {
    const long double a = p.alpha(), k = p.kappa();
    for (double t : {1e-30, 1e-100, 1e-200, 1e-300}) {
      const long double ref =
          k == 0 ? boost::math::gamma_q(1.0L + 1.0L / a, -std::log(static_cast<long double>(t)))
                 : boost::math::ibeta(0.5L / k - 0.5L / a, 1.0L + 1.0L / a, std::pow(static_cast<long double>(t), 2.0L * k));
      EXPECT_NEAR(kgen_lorenz_upper(t, p) / static_cast<double>(ref), 1.0, 1e-12) << p.kappa() << " " << t;
    }
  }
  // Near u = 1 the curve keeps the top share even where 1 - (1 - u)^(2 kappa) rounds to 1.
  const double u = 1.0 - 1.8e-9;
  EXPECT_NEAR(1.0 - kgen_lorenz(u, heavy), kgen_lorenz_upper(1.0 - u, heavy), 1e-15);
  EXPECT_GT(1.0 - kgen_lorenz(u, heavy), 1e-5);
}

TEST(KgenLorenz, ConvexAndBelowDiagonal) {
  for (const auto& p : {KappaGenParams(2.0, 1.0, 0.75), KappaGenParams(0.9, 1.0, 0.3),
                        KappaGenParams(6.0, 1.0, 0.01)}) {
    const double h = 1e-3;
    for (int i = 1; i < 1000; ++i) {
      const double u = i * h;
      const double L = kgen_lorenz(u, p);
      EXPECT_LE(L, u);
      EXPECT_GE(kgen_lorenz(u + h, p) - 2.0 * L + kgen_lorenz(u - h, p), -1e-10);
    }
  }
}

TEST(Dominance, Examples) {
  const KappaGenParams p(2.0, 1.0, 0.5);
  const auto same = lorenz_dominates(p, p);
  EXPECT_EQ(same.order, LorenzOrder::FirstDominates);
  EXPECT_FALSE(same.strict);

  const KappaGenParams p1(3.0, 1.0, 0.3), p2(2.0, 1.0, 0.5);
  const auto c = lorenz_dominates(p1, p2);
  EXPECT_EQ(c.order, LorenzOrder::FirstDominates);
  EXPECT_TRUE(c.strict);
  EXPECT_EQ(grid_sign(p1, p2), 1);
  EXPECT_EQ(lorenz_dominates(p2, p1).order, LorenzOrder::SecondDominates);

  const KappaGenParams q1(3.0, 1.0, 0.9), q2(2.0, 1.0, 0.5);
  EXPECT_EQ(lorenz_dominates(q1, q2).order, LorenzOrder::Crossing);
  EXPECT_EQ(grid_sign(q1, q2), 0);
  EXPECT_THROW(lorenz_dominates(KappaGenParams(0.5, 1, 0.6), p), CurveNonexistenceError);
}

TEST(Gini, Anchors) {
  EXPECT_NEAR(kgen_gini(KappaGenParams(1.0, 1.0, 0.0)), 0.5, 1e-12);
  EXPECT_NEAR(kgen_gini(KappaGenParams(1.0, 1.0, 1e-12)), 0.5, 1e-9);
  EXPECT_NEAR(kgen_gini(KappaGenParams(2.0, 1.0, 0.0)), 1.0 - std::pow(2.0, -0.5), 1e-12);
  EXPECT_NEAR(1.0 - std::pow(2.0, -0.5), 0.2928932, 1e-7);
  EXPECT_NEAR(kgen_gini(KappaGenParams(2.0, 1.3, 0.5)), 1.0 / 3.0, 1e-13);
  const KappaGenParams p(2.0, 1.0, 0.75);
  const double area = oracle::integrate([&](double u) { return kgen_lorenz(u, p); }, 0.0, 1.0);
  EXPECT_NEAR(kgen_gini(p), 1.0 - 2.0 * area, 1e-8);
  EXPECT_THROW(kgen_gini(KappaGenParams(0.5, 1.0, 0.5)), CurveNonexistenceError);
}

TEST(Gini, MonotoneAndScaleFree) {
  for (double a : {0.8, 1.5, 3.0}) {
    double prev = -1.0;
    for (double k = 0.0; k < std::min(a, 0.95); k += 0.05) {
      const double g = kgen_gini(KappaGenParams(a, 1.0, k));
      EXPECT_GT(g, prev);
      prev = g;
    }
  }
  for (double k : {0.0, 0.3, 0.7}) {
    double prev = 2.0;
    for (double a = k + 0.1; a < 8.0; a += 0.1) {
      const double g = kgen_gini(KappaGenParams(a, 1.0, k));
      EXPECT_LT(g, prev);
      prev = g;
    }
  }
  const KappaGenParams p(2.2, 1.0, 0.4);
  const auto q = p.with_beta(37.5);
  EXPECT_NEAR(kgen_gini(p), kgen_gini(q), 1e-12);
  EXPECT_NEAR(kgen_mld(p), kgen_mld(q), 1e-10);
  EXPECT_NEAR(kgen_theil(p), kgen_theil(q), 1e-10);
  EXPECT_NEAR(kgen_ge(2.5, p), kgen_ge(2.5, q), 1e-10);
}

TEST(GeneralizedEntropy, IdentitiesAndLimits) {
  const KappaGenParams p(2.0, 1.0, 0.4);
  const double m = kgen_mean(p);
  EXPECT_NEAR(kgen_ge(2.0, p), 0.5 * kgen_variance(p) / (m * m), 1e-12);
  EXPECT_NEAR(kgen_ge(1e-6, p), kgen_mld(p), 1e-4);
  EXPECT_NEAR(kgen_ge(1.0 - 1e-6, p), kgen_theil(p), 1e-4);
  EXPECT_EQ(kgen_ge(0.0, p), kgen_mld(p));
  EXPECT_EQ(kgen_ge(1.0, p), kgen_theil(p));
  EXPECT_NEAR(kgen_ge(-1.0, p),
              0.5 * (kgen_moment(-1.0, p) * m - 1.0), 1e-12);
  EXPECT_THROW(kgen_ge(5.0, p), MomentDivergenceError);
  EXPECT_THROW(kgen_ge(-2.0, p), MomentDivergenceError);
}

TEST(MldTheil, ClosedForms) {
  const KappaGenParams e(1.0, 1.0, 0.0);
  EXPECT_NEAR(kgen_mld(e), kEuler, 1e-12);
  EXPECT_NEAR(kgen_theil(e), 1.0 - kEuler, 1e-12);
  EXPECT_NEAR(kgen_mld(KappaGenParams(1.0, 1.0, 1e-12)), kEuler, 1e-9);
  const KappaGenParams p(2.0, 1.3, 0.5);
  EXPECT_NEAR(kgen_mld(p), 0.2076269989, 1e-10);
  EXPECT_NEAR(kgen_theil(p), 0.1889465914, 1e-10);
  std::mt19937_64 gen(52);
  std::uniform_real_distribution<double> ua(0.6, 5.0), uf(0.0, 0.9);
  for (int i = 0; i < 20; ++i) {
    const double a = ua(gen);
    const KappaGenParams q(a, 1.7, std::min(0.95, a * uf(gen)));
    const double mq = kgen_mean(q);
    const double mld = oracle::integrate_positive(
        [&](double x) { return std::log(mq / x) * kgen_pdf(x, q); }, q.beta());
    const double theil = oracle::integrate_positive(
        [&](double x) { return x / mq * std::log(x / mq) * kgen_pdf(x, q); }, q.beta());
    EXPECT_NEAR(kgen_mld(q), mld, 1e-7) << q.alpha() << " " << q.kappa();
    EXPECT_NEAR(kgen_theil(q), theil, 1e-7) << q.alpha() << " " << q.kappa();
  }
}

TEST(MixtureLorenz, Branches) {
  const double m = mixture_mean(kFig5);
  const double flat = -(1.0 * 0.2 / m) * gamma_fn(1.0 + 1.0 / 0.7);
  for (double u : {0.2, 0.23, 0.27, 0.3}) EXPECT_NEAR(mixture_lorenz(u, kFig5), flat, 1e-13);
  EXPECT_EQ(mixture_lorenz(0.0, kFig5), 0.0);
  EXPECT_NEAR(mixture_lorenz(1.0, kFig5), 1.0, 1e-13);
  EXPECT_NEAR(mixture_lorenz(0.5, kFig5), 0.06911238381475051, 1e-12);
  // The quantile is flat on [theta1, rho]; integrate each smooth piece separately.
  const auto q = [&](double t) { return mixture_quantile(t, kFig5); };
  for (double u : {0.05, 0.15, 0.5, 0.8, 0.99}) {
    double ref = oracle::integrate(q, 0.0, std::min(u, 0.2)) / m;
    if (u > 0.3) ref += oracle::integrate(q, 0.3, u) / m;
    EXPECT_NEAR(mixture_lorenz(u, kFig5), ref, 1e-8) << u;
  }
  const KappaGenParams k(2.0, 1.3, 0.5);
  const NetWealthMixtureParams pure(WeibullParams(1, 1), 0.0, 0.0, k);
  for (double u : {0.1, 0.5, 0.9}) EXPECT_NEAR(mixture_lorenz(u, pure), kgen_lorenz(u, k), 1e-13);
}

TEST(MixtureGini, ClosedVersusNumeric) {
  const auto g = mixture_gini(kFig5);
  EXPECT_NEAR(g.value, 0.6140871517412488, 1e-12);
  EXPECT_FALSE(g.ambiguous);
  const double area = oracle::integrate([&](double u) { return mixture_lorenz(u, kFig5); }, 0.0, 1.0);
  const double eq41 = (1.0 - 2.0 * area) / (1.0 - kFig5.rho() * mixture_lorenz(0.2, kFig5));
  EXPECT_NEAR(g.value, eq41, 1e-7);

  const KappaGenParams k(2.0, 1.3, 0.5);
  EXPECT_NEAR(mixture_gini(NetWealthMixtureParams(WeibullParams(1, 1), 0.0, 0.0, k)).value,
              kgen_gini(k), 1e-13);

  // Heavy negative branch: negative mean, value outside [0, 1], flagged.
  const NetWealthMixtureParams neg(WeibullParams(0.7, 20.0), 0.7, 0.1, KappaGenParams(2.0, 1.0, 0.3));
  ASSERT_LT(mixture_mean(neg), 0.0);
  const auto gn = mixture_gini(neg);
  EXPECT_TRUE(gn.ambiguous);
  EXPECT_TRUE(gn.value < 0.0 || gn.value > 1.0) << gn.value;
}

TEST(Ekg2Lorenz, ReductionAndQuadrature) {
  const Ekg2Params p(2.0, 1.0, 0.5, 1.0);
  EXPECT_EQ(ekg2_lorenz(0.0, p), 0.0);
  EXPECT_EQ(ekg2_lorenz(1.0, p), 1.0);
  const double ref = lorenz_oracle(0.5, [&](double t) { return ekg2_quantile(t, p); }, ekg2_mean(p));
  EXPECT_NEAR(ekg2_lorenz(0.5, p), ref, 1e-8);
  const KappaGenParams k(2.0, 1.3, 0.5);
  const auto e = Ekg2Params::from_kappa_gen(k);
  for (double u : {0.01, 0.3, 0.5, 0.9, 0.999}) EXPECT_NEAR(ekg2_lorenz(u, e), kgen_lorenz(u, k), 1e-12);
  EXPECT_THROW(ekg2_lorenz(0.5, Ekg2Params(2.0, 1.0, 0.5, 0.25)), CurveNonexistenceError);
}

TEST(QuantileLorenz, Generic) {
  const auto uniform = quantile_function([](double u) { return u; });
  EXPECT_NEAR(quantile_mean(uniform), 0.5, 1e-14);
  for (double u : {0.1, 0.5, 0.9}) EXPECT_NEAR(quantile_lorenz(u, uniform, 0.5), u * u, 1e-13);
  EXPECT_NEAR(quantile_gini(uniform), 1.0 / 3.0, 1e-12);

  const KappaGenParams k(2.0, 1.2, 0.75);
  const auto qk = quantile_function(AnyParams(k));
  const double mk = quantile_mean(qk);
  EXPECT_NEAR(mk, kgen_mean(k), 1e-9 * kgen_mean(k));
  for (double u : {0.05, 0.5, 0.95}) EXPECT_NEAR(quantile_lorenz(u, qk, mk), kgen_lorenz(u, k), 1e-7);
  EXPECT_NEAR(quantile_gini(qk), kgen_gini(k), 1e-7);

  const KappaGenParams k2(2.0, 1.3, 0.5);
  EXPECT_NEAR(gini(AnyParams(Ekg1Params::from_kappa_gen(k2))), kgen_gini(k2), 1e-7);
  const Ekg1Params e1(3.0, 1.0, 0.6, 0.3);
  const double m1 = ekg1_mean(e1);
  for (double u : {0.2, 0.7}) {
    const double ref = lorenz_oracle(u, [&](double t) { return ekg1_quantile(t, e1); }, m1);
    EXPECT_NEAR(lorenz(u, AnyParams(e1)), ref, 1e-8);
  }
}

TEST(Report, Families) {
  const KappaGenParams k(2.0, 1.3, 0.5);
  const auto r = inequality_report(AnyParams(k), {-1.0, 0.5, 2.0});
  EXPECT_NEAR(r.gini, 1.0 / 3.0, 1e-13);
  ASSERT_TRUE(r.mld && r.theil);
  EXPECT_NEAR(*r.mld, kgen_mld(k), 1e-14);
  ASSERT_EQ(r.ge_values.size(), 3u);
  EXPECT_EQ(r.ge_values[2].first, 2.0);
  EXPECT_NEAR(r.ge_values[2].second, kgen_ge(2.0, k), 1e-14);

  const auto e = inequality_report(AnyParams(Ekg1Params::from_kappa_gen(k)), {-1.0, 2.0});
  EXPECT_NEAR(e.gini, r.gini, 1e-8);
  EXPECT_NEAR(*e.mld, *r.mld, 1e-8);
  EXPECT_NEAR(*e.theil, *r.theil, 1e-8);
  EXPECT_NEAR(e.ge_values[0].second, r.ge_values[0].second, 1e-8);
  EXPECT_NEAR(e.ge_values[1].second, kgen_ge(2.0, k), 1e-8);

  const auto e2 = inequality_report(AnyParams(Ekg2Params::from_kappa_gen(k)), {2.0});
  EXPECT_NEAR(e2.gini, r.gini, 1e-8);
  EXPECT_NEAR(*e2.theil, *r.theil, 1e-8);

  const auto w = inequality_report(AnyParams(WeibullParams(2.0, 5.0)), {});
  EXPECT_NEAR(w.gini, 1.0 - std::pow(2.0, -0.5), 1e-12);

  const auto mx = inequality_report(AnyParams(kFig5), {2.0});
  EXPECT_NEAR(mx.gini, 0.6140871517412488, 1e-12);
  EXPECT_FALSE(mx.mld.has_value());
}

TEST(Empirical, Basics) {
  const WeightedSample equal(std::vector<double>(10, 4.2));
  EXPECT_NEAR(empirical_gini(equal), 0.0, 1e-15);
  const auto curve = empirical_lorenz(equal);
  EXPECT_EQ(curve.points.front(), (std::pair{0.0, 0.0}));
  EXPECT_EQ(curve.points.back(), (std::pair{1.0, 1.0}));
  for (double u : {0.1, 0.37, 0.8}) EXPECT_NEAR(curve.at(u), u, 1e-15);
  EXPECT_NEAR(empirical_gini(WeightedSample({0.0, 1.0})), 0.5, 1e-15);
  EXPECT_NEAR(empirical_mld(equal), 0.0, 1e-15);
  EXPECT_NEAR(empirical_theil(equal), 0.0, 1e-15);

  EXPECT_THROW(empirical_lorenz(WeightedSample({0.0, 0.0})), DegenerateNormalizationError);
  EXPECT_THROW(WeightedSample({1.0, 2.0}, {0.0, 0.0}), DomainError);
  EXPECT_THROW(WeightedSample(std::vector<double>{}), DomainError);
  EXPECT_THROW(empirical_mld(WeightedSample({0.0, 1.0})), DomainError);
}

TEST(Empirical, WeightsActAsReplication) {
  const WeightedSample weighted({1.0, 2.0, 7.0, 3.0}, {2.0, 1.0, 3.0, 0.5});
  const WeightedSample replicated({1.0, 1.0, 1.0, 1.0, 2.0, 2.0, 7.0, 7.0, 7.0, 7.0, 7.0, 7.0, 3.0});
  EXPECT_NEAR(empirical_gini(weighted), empirical_gini(replicated), 1e-14);
  EXPECT_NEAR(empirical_mld(weighted), empirical_mld(replicated), 1e-14);
  EXPECT_NEAR(empirical_theil(weighted), empirical_theil(replicated), 1e-14);
  EXPECT_NEAR(empirical_ge(2.0, weighted), empirical_ge(2.0, replicated), 1e-14);
  const auto r = empirical_inequality_report(weighted, {-1.0, 2.0});
  EXPECT_EQ(r.ge_values.size(), 2u);
}

TEST(Empirical, ConvergesToModel) {
  const KappaGenParams p(2.0, 1.0, 0.5);
  const WeightedSample s(kgen_sample(200000, p, 3));
  EXPECT_NEAR(empirical_gini(s), kgen_gini(p), 0.005);
  EXPECT_NEAR(empirical_mld(s), kgen_mld(p), 0.01);
  EXPECT_NEAR(empirical_ge(1e-6, s), empirical_mld(s), 1e-4);
}
