// Acceptance checks. Usage: acceptance <path-to-kgen> <scratch-dir>
// Prints one PASS/FAIL line per criterion and exits nonzero on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kgen/distributions.hpp"
#include "kgen/fitting.hpp"
#include "kgen/inequality.hpp"
#include "kgen/kappa_math.hpp"
#include "kgen/report.hpp"
#include "oracles.hpp"

using namespace kgen;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double rel_err(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }
// Relative above 1, absolute below.
double mixed_err(double a, double b) { return std::fabs(a - b) / std::max(1.0, std::fabs(b)); }

const NetWealthMixtureParams kFig5(WeibullParams(0.7, 1.0), 0.2, 0.1, KappaGenParams(2.0, 10.0, 0.75));

Outcome identities() {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> ux(-20.0, 20.0), uk(0.0, 0.99), u01(0.0, 1.0);
  double a18 = 0, a19 = 0, a21 = 0, taylor = 0;
  for (int i = 0; i < 10000; ++i) {
    const double x = ux(gen), y = ux(gen), k = uk(gen);
    a18 = std::max(a18, std::fabs(kappa_exp(x, k) * kappa_exp(-x, k) - 1.0));
    a19 = std::max(a19, rel_err(kappa_exp(kappa_sum(x, y, k), k), kappa_exp(x, k) * kappa_exp(y, k)));
    // |kappa / r| < 1 with either sign of r.
    const double mag = k + (5.0 - k) * (0.01 + 0.99 * u01(gen));
    const double r = u01(gen) < 0.5 ? -mag : mag;
    a21 = std::max(a21, rel_err(std::pow(kappa_exp(x, k), r), kappa_exp(r * x, k / r)));
    // Truncated series: region |x| <= 2, k |x| <= 0.5.
    const double tx = 2.0 * (2.0 * u01(gen) - 1.0);
    const double tk = 0.5 / std::fabs(tx) * u01(gen);
    const double kt = std::min(tk, 0.99);
    taylor = std::max(taylor, rel_err(kappa_exp_taylor(tx, kt, 30), kappa_exp(tx, kt)));
  }
  Outcome o;
  o.pass = a18 <= 1e-10 && a19 <= 1e-10 && a21 <= 1e-10 && taylor <= 1e-10;
  o.detail = "A18 " + fmt("%.1e", a18) + ", A19 " + fmt("%.1e", a19) + ", A21 " + fmt("%.1e", a21) +
             ", Taylor " + fmt("%.1e", taylor);
  // Truncation error of 30 terms near the edge of the convergence disc.
  double edge = 0;
  for (double x : {1.0, 2.0, 4.0}) edge = std::max(edge, rel_err(kappa_exp_taylor(x, 0.9 / x, 30), kappa_exp(x, 0.9 / x)));
  o.detail += "; note: 30-term error at k|x| = 0.9 is " + fmt("%.1e", edge);
  return o;
}

Outcome gini_anchors() {
  double worst = std::fabs(kgen_gini(KappaGenParams(1.0, 1.0, 1e-12)) - 0.5);
  worst = std::max(worst, std::fabs(kgen_gini(KappaGenParams(1.0, 1.0, 0.0)) - 0.5));
  for (double a : {0.8, 1.0, 2.0, 3.0}) {
    for (double k : {0.0, 1e-12}) {
      worst = std::max(worst, std::fabs(kgen_gini(KappaGenParams(a, 1.0, k)) - (1.0 - std::pow(2.0, -1.0 / a))));
    }
  }
  return {worst <= 1e-9, "max error " + fmt("%.1e", worst)};
}

Outcome mixture_mean_anchor() {
  const double m = mixture_mean(kFig5);
  return {std::fabs(m - 7.172) <= 0.02, "mean " + fmt("%.10f", m)};
}

Outcome closed_vs_quadrature() {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst = 0;
  std::string where;
  auto track = [&](double err, const char* what) {
    if (err > worst) {
      worst = err;
      where = what;
    }
  };
  for (int i = 0; i < 50; ++i) {
    double a, t, k;
    do {
      a = 0.7 + 4.3 * u01(gen);
      t = 2.0 + 28.0 * u01(gen);
      k = a / t;
    } while (k >= 0.95);
    const KappaGenParams p(a, 0.5 + 2.5 * u01(gen), k);
    const auto f = [&](double x) { return kgen_pdf(x, p); };
    const double r = -0.8 * a + 0.8 * (a + t) * u01(gen);
    const auto mom = [&](double x) { return std::pow(x, r) * f(x); };
    track(rel_err(kgen_moment(r, p), oracle::integrate_positive(mom, p.beta())), "moment");

    const double m = kgen_mean(p);
    const double gini_ref =
        oracle::integrate_positive([&](double x) { return kgen_cdf(x, p) * kgen_ccdf(x, p); }, p.beta()) / m;
    track(mixed_err(kgen_gini(p), gini_ref), "gini");
    track(mixed_err(kgen_mld(p), oracle::integrate_positive([&](double x) { return std::log(m / x) * f(x); }, p.beta())),
          "mld");
    track(mixed_err(kgen_theil(p),
                    oracle::integrate_positive([&](double x) { return x / m * std::log(x / m) * f(x); }, p.beta())),
          "theil");

    const double u = 0.01 + 0.98 * u01(gen);
    const double lref = oracle::integrate([&](double s) { return kgen_quantile(s, p); }, 0.0, u) / m;
    track(mixed_err(kgen_lorenz(u, p), lref), "kgen lorenz");

    const double th1 = 0.3 * u01(gen), th2 = 0.2 * u01(gen);
    const NetWealthMixtureParams mix(WeibullParams(0.4 + 1.6 * u01(gen), 0.5 + 2.5 * u01(gen)), th1, th2,
                                     p.with_beta(10.0 * p.beta()));
    const double mm = mixture_mean(mix);
    if (mm > 0.0) {
      const auto q = [&](double s) { return mixture_quantile(s, mix); };
      double ref = th1 > 0.0 ? oracle::integrate(q, 0.0, std::min(u, th1)) : 0.0;
      if (u > mix.rho()) ref += oracle::integrate(q, mix.rho(), u);
      track(mixed_err(mixture_lorenz(u, mix), ref / mm), "mixture lorenz");
    }

    const double ea = 1.2 + 2.8 * u01(gen);
    const Ekg2Params e(ea, 0.5 + 2.0 * u01(gen), 0.4 + 1.6 * u01(gen), (1.5 + 2.0 * u01(gen)) / (2.0 * ea));
    const double eref = oracle::integrate([&](double s) { return ekg2_quantile(s, e); }, 0.0, u) / ekg2_mean(e);
    track(mixed_err(ekg2_lorenz(u, e), eref), "ekg2 lorenz");
  }
  return {worst <= 1e-7, "max error " + fmt("%.1e", worst) + " (" + where + ")"};
}

Outcome tail_law() {
  const KappaGenParams p(2.0, 1.0, 0.5);
  const int n = 200;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double lx = std::log(50.0) + (std::log(500.0) - std::log(50.0)) * i / (n - 1);
    const double ly = std::log(kgen_ccdf(std::exp(lx) * p.beta(), p));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {std::fabs(slope / -4.0 - 1.0) <= 0.02, "slope " + fmt("%.6f", slope)};
}

Outcome reductions() {
  double worst = 0;
  const std::vector<KappaGenParams> ps{{2.0, 1.0, 0.5}, {1.3, 2.5, 0.8}, {3.5, 0.7, 0.2}};
  for (const auto& k : ps) {
    const auto e1 = Ekg1Params::from_kappa_gen(k);
    const auto e2 = Ekg2Params::from_kappa_gen(k);
    const NetWealthMixtureParams mix(WeibullParams(0.7, 1.0), 0.0, 0.0, k);
    for (int i = 0; i <= 60; ++i) {
      const double x = k.beta() * std::pow(10.0, -3.0 + 6.0 * i / 60.0);
      const double f = kgen_pdf(x, k), F = kgen_cdf(x, k);
      worst = std::max({worst, rel_err(ekg1_pdf(x, e1), f), rel_err(ekg1_cdf(x, e1), F), rel_err(ekg2_pdf(x, e2), f),
                        rel_err(ekg2_cdf(x, e2), F), rel_err(mixture_pdf(x, mix).density, f),
                        rel_err(mixture_cdf(x, mix), F)});
      const double u = i == 0 ? 1e-6 : (i == 60 ? 1.0 - 1e-6 : i / 60.0);
      const double Q = kgen_quantile(u, k);
      worst = std::max({worst, rel_err(ekg1_quantile(u, e1), Q), rel_err(ekg2_quantile(u, e2), Q),
                        rel_err(mixture_quantile(u, mix), Q)});
    }
  }
  return {worst <= 1e-10, "max relative error " + fmt("%.1e", worst)};
}

// Sign pattern of L1 - L2 on a uniform grid refined towards both ends.
int grid_sign(const KappaGenParams& a, const KappaGenParams& b) {
  static const std::vector<double> grid = [] {
    std::vector<double> g;
    for (int i = 1; i < 1000; ++i) g.push_back(i / 1000.0);
    for (double e = 3.0; e <= 10.0; e += 0.25) {
      g.push_back(std::pow(10.0, -e));
      g.push_back(1.0 - std::pow(10.0, -e));
    }
    return g;
  }();
  bool pos = false, neg = false;
  for (double u : grid) {
    const double d = kgen_lorenz(u, a) - kgen_lorenz(u, b);
    if (d > 1e-13) pos = true;
    if (d < -1e-13) neg = true;
  }
  // Top shares t = 1 - u far beyond double resolution of u.
  for (double e = 3.0; e <= 300.0; e += 0.5) {
    const double t = std::pow(10.0, -e);
    const double ua = kgen_lorenz_upper(t, a), ub = kgen_lorenz_upper(t, b);
    const double d = ub - ua;
    if (d > 1e-12 * std::max(ua, ub)) pos = true;
    if (d < -1e-12 * std::max(ua, ub)) neg = true;
  }
  return pos && neg ? 0 : (neg ? -1 : 1);
}

Outcome dominance() {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  auto base = [&] {
    const double a = 0.8 + 3.2 * u01(gen);
    const double t = 1.5 + 10.0 * u01(gen);
    return std::pair{a, t};
  };
  int agree = 0, cross = 0, tried_ok = 0, tried_cross = 0;
  while (tried_ok < 100) {
    const auto [a2, t2] = base();
    const double a1 = a2 * (1.0 + 0.5 * u01(gen)), t1 = t2 * (1.0 + 0.5 * u01(gen));
    if (a1 / t1 >= 0.95 || a2 / t2 >= 0.95) continue;
    ++tried_ok;
    const KappaGenParams p1(a1, 1.0, a1 / t1), p2(a2, 1.0, a2 / t2);
    const bool swap = u01(gen) < 0.5;
    const auto cmp = swap ? lorenz_dominates(p2, p1) : lorenz_dominates(p1, p2);
    const auto want = swap ? LorenzOrder::SecondDominates : LorenzOrder::FirstDominates;
    if (cmp.order == want && grid_sign(p1, p2) == 1) ++agree;
  }
  while (tried_cross < 100) {
    const auto [a2, t2] = base();
    const double a1 = a2 * (1.05 + 0.45 * u01(gen)), t1 = t2 / (1.05 + 0.45 * u01(gen));
    if (a1 / t1 >= 0.95 || a2 / t2 >= 0.95 || t1 <= 1.2) continue;
    ++tried_cross;
    const KappaGenParams p1(a1, 1.0, a1 / t1), p2(a2, 1.0, a2 / t2);
    if (lorenz_dominates(p1, p2).order == LorenzOrder::Crossing && grid_sign(p1, p2) == 0) ++cross;
  }
  return {agree == 100 && cross == 100,
          std::to_string(agree) + "/100 dominance pairs without crossing, " + std::to_string(cross) +
              "/100 violating pairs with crossing"};
}

Outcome mle_recovery() {
  const std::vector<KappaGenParams> sets{{2.0, 1.0, 0.5}, {1.5, 1.0, 0.3}, {3.0, 1.0, 0.75}};
  std::vector<double> times;
  double worst_a = 0, worst_b = 0, worst_k = 0;
  int ok = 0;
  for (const auto& truth : sets) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const WeightedSample s(kgen_sample(100000, truth, 1000 + seed));
      const auto t0 = std::chrono::steady_clock::now();
      const auto r = fit_mle(s, FitConfig{});
      times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
      const auto& q = std::get<KappaGenParams>(r.params);
      const double da = std::fabs(q.alpha() - truth.alpha()), db = std::fabs(q.beta() - truth.beta()),
                   dk = std::fabs(q.kappa() - truth.kappa());
      worst_a = std::max(worst_a, da);
      worst_b = std::max(worst_b, db);
      worst_k = std::max(worst_k, dk);
      ok += r.converged && da <= 0.05 && db <= 0.02 && dk <= 0.05;
    }
  }
  std::nth_element(times.begin(), times.begin() + times.size() / 2, times.end());
  const double median = times[times.size() / 2];
  return {ok == 15 && median < 10.0,
          std::to_string(ok) + "/15 within tolerance; max errors alpha " + fmt("%.4f", worst_a) + ", beta " +
              fmt("%.4f", worst_b) + ", kappa " + fmt("%.4f", worst_k) + "; median fit " + fmt("%.2f", median) + " s"};
}

Outcome sampling() {
  const std::size_t n = 1000000;
  const double crit = oracle::ks_critical_1pct(n);
  const KappaGenParams k(2.0, 1.0, 0.5);
  const WeibullParams w(1.5, 2.0);
  const Ekg1Params e1(2.5, 1.0, 0.4, 0.3);
  const Ekg2Params e2(2.5, 1.0, 0.6, 0.8);
  const double d_k = oracle::ks_statistic(kgen_sample(n, k, 91), [&](double x) { return kgen_cdf(x, k); });
  const double d_w = oracle::ks_statistic(weibull_sample(n, w, 92), [&](double x) { return weibull_cdf(x, w); });
  const double d_1 = oracle::ks_statistic(ekg1_sample(n, e1, 93), [&](double x) { return ekg1_cdf(x, e1); });
  const double d_2 = oracle::ks_statistic(ekg2_sample(n, e2, 94), [&](double x) { return ekg2_cdf(x, e2); });
  const double d_m = oracle::ks_statistic(
      mixture_sample(n, kFig5, 95), [&](double x) { return mixture_cdf(x, kFig5); },
      [&](double x) { return x == 0.0 ? kFig5.theta1() : mixture_cdf(x, kFig5); });
  const double worst = std::max({d_k, d_w, d_1, d_2, d_m});
  return {worst < crit, "D kappagen " + fmt("%.2e", d_k) + ", weibull " + fmt("%.2e", d_w) + ", ekg1 " +
                            fmt("%.2e", d_1) + ", ekg2 " + fmt("%.2e", d_2) + ", mixture " + fmt("%.2e", d_m) +
                            " vs critical " + fmt("%.2e", crit)};
}

Outcome ge_limits() {
  double worst = 0, worst_outside = 0;
  for (double a : {0.8, 1.0, 1.5, 2.0, 3.0, 5.0}) {
    for (double k : {0.0, 0.1, 0.3, 0.5, 0.7, 0.9}) {
      if (k > 0.0 && a / k <= 1.5) continue;
      const KappaGenParams p(a, 1.0, k);
      const double mld = kgen_mld(p), theil = kgen_theil(p);
      worst = std::max({worst, std::fabs(kgen_ge(1e-6, p) - mld), std::fabs(kgen_ge(1.0 - 1e-6, p) - theil)});
      worst_outside = std::max({worst_outside, std::fabs(kgen_ge(2e-5, p) - mld),
                                std::fabs(kgen_ge(1.0 - 2e-5, p) - theil)});
    }
  }
  return {worst <= 1e-4 && worst_outside <= 1e-4,
          "max gap " + fmt("%.1e", worst) + " at 1e-6, " + fmt("%.1e", worst_outside) + " at 2e-5"};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome cli_pipeline(const std::string& tool, const fs::path& dir) {
  fs::create_directories(dir);
  const std::string q = "\"" + tool + "\"";
  const std::string cd = "cd \"" + dir.string() + "\" && ";
  const std::vector<std::string> steps{
      q + " sample --model kappagen --alpha 2 --beta 1 --kappa 0.5 -n 1000000 --seed 11 -o sample.txt",
      q + " fit sample.txt --model kappagen --seed 5 -o fit.json",
      q + " inequality --from-report fit.json -o inequality.json"};
  const std::vector<std::string> files{"sample.txt", "fit.json", "inequality.json"};
  std::vector<std::string> first;
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& f : files) fs::remove(dir / f);
    for (const auto& s : steps) {
      if (std::system((cd + s).c_str()) != 0) return {false, "command failed: " + s};
    }
    if (pass == 0) {
      for (const auto& f : files) first.push_back(slurp(dir / f));
    }
  }
  bool same = true;
  for (std::size_t i = 0; i < files.size(); ++i) same = same && slurp(dir / files[i]) == first[i];
  const auto rep = io::parse_report(first[2]);
  const double g = rep.inequality->gini;
  const double target = kgen_gini(KappaGenParams(2.0, 1.0, 0.5));
  return {same && std::fabs(g - target) <= 0.005,
          "fitted gini " + fmt("%.6f", g) + " vs " + fmt("%.6f", target) + (same ? ", repeat byte-identical" : ", repeat differs")};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: acceptance <path-to-kgen> <scratch-dir>\n");
    return 2;
  }
  const std::string tool = fs::absolute(argv[1]).string();
  const fs::path dir = fs::path(argv[2]) / "acceptance_cli";

  struct Criterion {
    const char* name;
    double budget_s;  // 0 = no runtime bound
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"kappa-math identities and Taylor sums", 5, identities},
      {"Gini anchors", 0, gini_anchors},
      {"mixture mean anchor", 1, mixture_mean_anchor},
      {"closed forms vs quadrature", 60, closed_vs_quadrature},
      {"Pareto tail slope", 0, tail_law},
      {"reductions to the kappa-generalized law", 0, reductions},
      {"Lorenz dominance", 30, dominance},
      {"MLE recovery", 0, mle_recovery},
      {"sampling KS", 0, sampling},
      {"GE limit continuity", 0, ge_limits},
      {"CLI sample/fit/inequality pipeline", 0, [&] { return cli_pipeline(tool, dir); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs >= c.budget_s) {
      o.pass = false;
      o.detail += "; over time budget";
    }
    failures += !o.pass;
    std::printf("%s %zu: %s (%s; %.2f s)\n", o.pass ? "PASS" : "FAIL", i + 1, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
