#include "kgen/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "kgen/distributions.hpp"
#include "kgen/errors.hpp"
#include "kgen/inequality.hpp"
#include "kgen/kappa_math.hpp"
#include "kgen/optimize.hpp"
#include "kgen/special_functions.hpp"
#include "kgen_kernel.hpp"
#include "uniform.hpp"

namespace kgen {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kScoreTol = 1e-4;
constexpr std::size_t kChunk = 2048;
constexpr double kMinEffectiveSize = 30.0;

double logistic(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double logit(double p) { return std::log(p / (1.0 - p)); }

// Positive observations rescaled by their weighted mean, with weights divided
// by the largest weight (so equal weights become exactly one).
struct Prepared {
  std::vector<double> x;
  std::vector<double> log_x;
  std::vector<double> w;
  double total_w = 0.0;
  double scale = 1.0;
};

Prepared prepare(const WeightedSample& s, const std::string& model) {
  const auto& v = s.values();
  const auto& w = s.weights();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0)) {
      throw DomainError("observation " + std::to_string(i + 1) + " (value " +
                        std::to_string(v[i]) + ") is outside the support x > 0 of the " +
                        model + " model");
    }
  }
  double first = std::numeric_limits<double>::quiet_NaN();
  bool distinct = false;
  for (std::size_t i = 0; i < v.size() && !distinct; ++i) {
    if (w[i] <= 0.0) continue;
    if (std::isnan(first)) first = v[i];
    else if (v[i] != first) distinct = true;
  }
  if (!distinct) {
    throw DegenerateDataError("sample has a single distinct value; parameters are not identified");
  }
  Prepared d;
  d.scale = s.weighted_mean();
  const double w_max = *std::max_element(w.begin(), w.end());
  d.x.resize(v.size());
  d.log_x.resize(v.size());
  d.w.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    d.x[i] = v[i] / d.scale;
    d.log_x[i] = std::log(d.x[i]);
    d.w[i] = w[i] / w_max;
    d.total_w += d.w[i];
  }
  return d;
}

// Weighted mean of term(i) over the sample, summed in fixed chunks.
template <class Term>
double mean_term(const Prepared& d, Term&& term) {
  double total = 0.0;
  const std::size_t n = d.x.size();
  for (std::size_t start = 0; start < n; start += kChunk) {
    const std::size_t stop = std::min(n, start + kChunk);
    double part = 0.0;
    for (std::size_t i = start; i < stop; ++i) {
      if (d.w[i] != 0.0) part += d.w[i] * term(i);
    }
    total += part;
  }
  const double m = total / d.total_w;
  return std::isfinite(m) ? m : -kInf;
}

// ---------------------------------------------------------------------------
// Starting values

struct ShapeGuess {
  double alpha;
  double beta;
  double kappa;
};

// Weibull-plot regression of ln(-ln ccdf) on ln x for alpha and beta, and the
// upper-decile log-log ccdf slope for the tail exponent alpha / kappa.
ShapeGuess initial_guess(const Prepared& d) {
  const std::size_t n = d.x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return d.x[a] < d.x[b]; });

  struct Acc {
    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    void add(double w, double x, double y) {
      sw += w; sx += w * x; sy += w * y; sxx += w * x * x; sxy += w * x * y;
    }
    double slope() const { return (sw * sxy - sx * sy) / (sw * sxx - sx * sx); }
    double intercept() const { return (sy - slope() * sx) / sw; }
  };
  Acc body;
  Acc tail;
  double cum = 0.0;
  double median_log_x = d.log_x[order[n / 2]];
  bool median_found = false;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = order[k];
    if (d.w[i] == 0.0) continue;
    const double F = (cum + 0.5 * d.w[i]) / d.total_w;
    cum += d.w[i];
    if (!median_found && F >= 0.5) {
      median_log_x = d.log_x[i];
      median_found = true;
    }
    if (!(F > 0.0 && F < 1.0)) continue;
    body.add(d.w[i], d.log_x[i], std::log(-std::log1p(-F)));
    if (F >= 0.9) tail.add(d.w[i], d.log_x[i], std::log1p(-F));
  }
  double alpha = body.slope();
  if (!std::isfinite(alpha) || alpha <= 0.0) alpha = 1.0;
  alpha = std::clamp(alpha, 0.05, 50.0);
  const double tail_slope = -tail.slope();
  double kappa = 0.3;
  if (std::isfinite(tail_slope) && tail_slope > 0.0) kappa = alpha / tail_slope;
  kappa = std::clamp(kappa, 0.01, 0.9);
  // Match the median: beta = x_med / ln_k(2)^(1/alpha).
  const double beta = std::exp(median_log_x - std::log(kappa_log(2.0, kappa)) / alpha);
  return {alpha, beta, kappa};
}

// ---------------------------------------------------------------------------
// Optimization driver

struct Problem {
  opt::Objective objective;  // minus the per-unit-weight log-likelihood
  std::vector<double> start;
};

struct Outcome {
  std::vector<double> x;
  int iterations = 0;
  double score_norm = kInf;
  bool converged = false;
};

Outcome optimize(const Problem& prob, const FitConfig& cfg) {
  const std::size_t dim = prob.start.size();
  std::vector<std::vector<double>> starts{prob.start};
  for (int i = 1; i < cfg.multistart; ++i) {
    std::mt19937_64 gen(detail::derive_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    std::uniform_real_distribution<double> jitter(-0.5, 0.5);
    auto s = prob.start;
    for (auto& v : s) v += jitter(gen);
    starts.push_back(std::move(s));
  }

  Outcome out;
  opt::NelderMeadOptions scout;
  scout.max_iter = std::min(cfg.max_iter, 40 * static_cast<int>(dim));
  scout.ftol = 1e-7;
  scout.xtol = 1e-5;
  scout.initial_step = 0.2;
  opt::Result best;
  best.value = kInf;
  for (const auto& s : starts) {
    auto r = opt::nelder_mead(prob.objective, s, scout);
    out.iterations += r.iterations;
    if (best.x.empty() || r.value < best.value) best = std::move(r);
  }

  opt::BfgsOptions polish;
  polish.max_iter = cfg.max_iter;
  polish.gtol = std::min(1e-7, cfg.rel_tol * 100.0);
  auto refined = opt::bfgs(prob.objective, best.x, polish);
  out.iterations += refined.iterations;
  if (!refined.converged) {
    opt::NelderMeadOptions full;
    full.max_iter = cfg.max_iter;
    full.ftol = cfg.rel_tol;
    full.xtol = 1e-8;
    full.initial_step = 0.05;
    const auto& from = refined.value <= best.value ? refined.x : best.x;
    auto r = opt::nelder_mead(prob.objective, from, full);
    out.iterations += r.iterations;
    auto again = opt::bfgs(prob.objective, r.x, polish);
    out.iterations += again.iterations;
    refined = again.value <= r.value ? std::move(again) : std::move(r);
  }
  out.x = refined.value <= best.value ? refined.x : best.x;
  const auto g = opt::central_gradient(prob.objective, out.x, 1e-5);
  out.score_norm = opt::max_abs(g);
  out.converged = std::isfinite(out.score_norm) && out.score_norm <= kScoreTol &&
                  out.iterations <= 4 * cfg.max_iter * cfg.multistart;
  return out;
}

// ---------------------------------------------------------------------------
// Families in unconstrained coordinates (internal scale)

KappaGenParams decode_kgen(const std::vector<double>& t) {
  return {std::exp(t[0]), std::exp(t[1]), logistic(t[2])};
}

opt::Objective kgen_objective(const Prepared& d) {
  return [&d](const std::vector<double>& t) {
    const double a = std::exp(t[0]);
    const double lb = t[1];
    const double k = logistic(t[2]);
    if (!(a > 0.0 && std::isfinite(a)) || !(k < 1.0)) return kInf;
    const double la = std::log(a);
    const double m = mean_term(d, [&](std::size_t i) {
      const double lz = d.log_x[i] - lb;
      const auto terms = detail::kgen_terms(std::exp(a * lz), k);
      return la - lb + (a - 1.0) * lz + terms.log_ccdf - terms.log_root;
    });
    return -m;
  };
}

WeibullParams decode_weibull(const std::vector<double>& t) {
  return {std::exp(t[0]), std::exp(t[1])};
}

opt::Objective weibull_objective(const Prepared& d) {
  return [&d](const std::vector<double>& t) {
    const double s = std::exp(t[0]);
    const double ll = t[1];
    if (!(s > 0.0 && std::isfinite(s))) return kInf;
    const double ls = std::log(s);
    return -mean_term(d, [&](std::size_t i) {
      const double lz = d.log_x[i] - ll;
      return ls - ll + (s - 1.0) * lz - std::exp(s * lz);
    });
  };
}

Ekg1Params decode_ekg1(const std::vector<double>& t) {
  const double q = std::exp(t[2]);
  return {std::exp(t[0]), std::exp(t[1]), q, 0.5 / q - std::exp(t[3])};
}

opt::Objective ekg1_objective(const Prepared& d) {
  return [&d](const std::vector<double>& t) {
    try {
      const auto p = decode_ekg1(t);
      return -mean_term(d, [&](std::size_t i) { return ekg1_log_pdf(d.x[i], p); });
    } catch (const DomainError&) {
      return kInf;
    }
  };
}

Ekg2Params decode_ekg2(const std::vector<double>& t) {
  return {std::exp(t[0]), std::exp(t[1]), std::exp(t[2]), std::exp(t[3])};
}

opt::Objective ekg2_objective(const Prepared& d) {
  return [&d](const std::vector<double>& t) {
    try {
      const auto p = decode_ekg2(t);
      return -mean_term(d, [&](std::size_t i) { return ekg2_log_pdf(d.x[i], p); });
    } catch (const DomainError&) {
      return kInf;
    }
  };
}

// kappa = min(alpha, 1) logistic(t1) keeps alpha / kappa > 1.
KappaGenParams decode_normalized(const std::vector<double>& t) {
  const double a = std::exp(t[0]);
  return kgen_from_normalized(a, std::min(a, 1.0) * logistic(t[1]));
}

opt::Objective normalized_objective(const Prepared& d) {
  return [&d](const std::vector<double>& t) {
    try {
      const auto p = decode_normalized(t);
      const double a = p.alpha();
      const double k = p.kappa();
      const double lb = std::log(p.beta());
      const double la = std::log(a);
      return -mean_term(d, [&](std::size_t i) {
        const double lz = d.log_x[i] - lb;
        const auto terms = detail::kgen_terms(std::exp(a * lz), k);
        return la - lb + (a - 1.0) * lz + terms.log_ccdf - terms.log_root;
      });
    } catch (const DomainError&) {
      return kInf;
    }
  };
}

AnyParams rescale(const AnyParams& p, double c) {
  return std::visit(
      [c](const auto& q) -> AnyParams {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, KappaGenParams>) {
          return q.with_beta(q.beta() * c);
        } else if constexpr (std::is_same_v<T, WeibullParams>) {
          return WeibullParams(q.shape(), q.scale() * c);
        } else if constexpr (std::is_same_v<T, Ekg1Params>) {
          return Ekg1Params(q.a(), q.b() * c, q.q(), q.r());
        } else if constexpr (std::is_same_v<T, Ekg2Params>) {
          return Ekg2Params(q.a(), q.b() * c, q.p(), q.q());
        } else {
          return q;
        }
      },
      p);
}

FitResult finish(const WeightedSample& s, ModelTag model, AnyParams params, const Outcome& o) {
  FitResult r;
  r.model = model;
  r.params = std::move(params);
  r.iterations = o.iterations;
  r.score_norm = o.score_norm;
  r.converged = o.converged;
  r.loglik = loglik(s, r.params);
  r.gof = goodness_of_fit(s, r.params);
  if (!std::isfinite(r.loglik)) r.converged = false;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string model_name(ModelTag m) {
  switch (m) {
    case ModelTag::KappaGen: return "kappagen";
    case ModelTag::Weibull: return "weibull";
    case ModelTag::Ekg1: return "ekg1";
    case ModelTag::Ekg2: return "ekg2";
    case ModelTag::Mixture: return "mixture";
    case ModelTag::KappaGenNormalized: return "kappagen_normalized";
  }
  return "unknown";
}

ModelTag parse_model(const std::string& name) {
  for (auto m : {ModelTag::KappaGen, ModelTag::Weibull, ModelTag::Ekg1, ModelTag::Ekg2,
                 ModelTag::Mixture, ModelTag::KappaGenNormalized}) {
    if (model_name(m) == name) return m;
  }
  throw DomainError("unsupported model '" + name +
                    "' (expected kappagen, weibull, ekg1, ekg2, mixture or kappagen_normalized)");
}

void FitConfig::validate() const {
  if (max_iter < 1) throw DomainError("max_iter must be >= 1");
  if (!(rel_tol > 0.0)) throw DomainError("rel_tol must be > 0");
  if (multistart < 1) throw DomainError("multistart must be >= 1");
}

double loglik(const WeightedSample& s, const AnyParams& p) {
  const auto& v = s.values();
  const auto& w = s.weights();
  const auto* mix = std::get_if<NetWealthMixtureParams>(&p);
  double total = 0.0;
  for (std::size_t start = 0; start < v.size(); start += kChunk) {
    const std::size_t stop = std::min(v.size(), start + kChunk);
    double part = 0.0;
    for (std::size_t i = start; i < stop; ++i) {
      double term;
      const bool in_support =
          mix != nullptr ? ((v[i] < 0.0 && mix->theta1() > 0.0) ||
                            (v[i] == 0.0 && mix->theta2() > 0.0) ||
                            (v[i] > 0.0 && mix->theta3() > 0.0))
                         : v[i] > 0.0;
      if (!in_support) {
        throw DomainError("observation " + std::to_string(i + 1) + " (value " +
                          std::to_string(v[i]) + ") is outside the support of the " +
                          family_name(family_of(p)) + " model");
      }
      if (mix != nullptr) {
        if (v[i] < 0.0) {
          term = std::log(mix->theta1()) + weibull_log_pdf(-v[i], mix->negative_branch());
        } else if (v[i] == 0.0) {
          term = std::log(mix->theta2());
        } else {
          term = std::log(mix->theta3()) + kgen_log_pdf(v[i], mix->positive_branch());
        }
      } else {
        term = log_pdf(v[i], p);
      }
      if (w[i] != 0.0) part += w[i] * term;
    }
    total += part;
  }
  return total;
}

FitResult fit_mle(const WeightedSample& s, const FitConfig& config) {
  config.validate();
  if (config.model == ModelTag::Mixture) return fit_mixture(s, config);
  if (config.model == ModelTag::KappaGenNormalized) return fit_normalized(s, config);

  const auto d = prepare(s, model_name(config.model));
  const auto g = initial_guess(d);
  Problem prob;
  std::function<AnyParams(const std::vector<double>&)> decode;
  switch (config.model) {
    case ModelTag::KappaGen:
      prob = {kgen_objective(d), {std::log(g.alpha), std::log(g.beta), logit(g.kappa)}};
      decode = [](const std::vector<double>& t) -> AnyParams { return decode_kgen(t); };
      break;
    case ModelTag::Weibull: {
      // Weibull starting scale from the same median match with kappa = 0.
      const double beta0 = g.beta * std::exp((std::log(kappa_log(2.0, g.kappa)) -
                                              std::log(std::log(2.0))) / g.alpha);
      prob = {weibull_objective(d), {std::log(g.alpha), std::log(beta0)}};
      decode = [](const std::vector<double>& t) -> AnyParams { return decode_weibull(t); };
      break;
    }
    case ModelTag::Ekg1: {
      const double q = 0.5 / g.kappa;
      prob = {ekg1_objective(d),
              {std::log(g.alpha), std::log(g.beta), std::log(q), std::log(0.5 / q)}};
      decode = [](const std::vector<double>& t) -> AnyParams { return decode_ekg1(t); };
      break;
    }
    case ModelTag::Ekg2: {
      const auto e = Ekg2Params::from_kappa_gen(KappaGenParams(g.alpha, g.beta, g.kappa));
      prob = {ekg2_objective(d),
              {std::log(e.a()), std::log(e.b()), std::log(e.p()), std::log(e.q())}};
      decode = [](const std::vector<double>& t) -> AnyParams { return decode_ekg2(t); };
      break;
    }
    default:
      throw DomainError("fit_mle: unsupported model");
  }
  const auto o = optimize(prob, config);
  return finish(s, config.model, rescale(decode(o.x), d.scale), o);
}

FitResult fit_normalized(const WeightedSample& s, const FitConfig& config) {
  config.validate();
  const auto d = prepare(s, "kappagen_normalized");
  const auto g = initial_guess(d);
  const double cap = std::min(g.alpha, 1.0);
  const double frac = std::clamp(g.kappa / cap, 0.01, 0.9);
  Problem prob{normalized_objective(d), {std::log(g.alpha), logit(frac)}};
  const auto o = optimize(prob, config);
  const auto z_params = decode_normalized(o.x);
  auto r = finish(s, ModelTag::KappaGenNormalized, z_params.with_beta(z_params.beta() * d.scale),
                  o);
  r.scale = d.scale;
  return r;
}

FitResult fit_mixture(const WeightedSample& s, const FitConfig& config) {
  config.validate();
  const auto& v = s.values();
  const auto& w = s.weights();
  std::vector<double> neg_v, neg_w, pos_v, pos_w;
  double w_neg = 0.0;
  double w_zero = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 0.0) {
      neg_v.push_back(-v[i]);
      neg_w.push_back(w[i]);
      w_neg += w[i];
    } else if (v[i] == 0.0) {
      w_zero += w[i];
    } else {
      pos_v.push_back(v[i]);
      pos_w.push_back(w[i]);
    }
  }
  double w_pos = 0.0;
  for (double x : pos_w) w_pos += x;
  if (!(w_pos > 0.0)) {
    throw DegenerateDataError("mixture fit needs positive observations with positive weight");
  }
  const double theta1 = w_neg / s.total_weight();
  const double theta2 = w_zero / s.total_weight();

  FitResult r;
  r.model = ModelTag::Mixture;
  FitConfig branch = config;
  branch.model = ModelTag::KappaGen;
  const WeightedSample positives(pos_v, pos_w);
  const auto pos_fit = fit_mle(positives, branch);
  if (positives.effective_size() < kMinEffectiveSize) {
    r.warnings.push_back("positive branch has fewer than 30 effective observations");
  }
  WeibullParams negative(1.0, 1.0);
  bool converged = pos_fit.converged;
  double score = pos_fit.score_norm;
  int iterations = pos_fit.iterations;
  if (w_neg > 0.0) {
    const WeightedSample negatives(neg_v, neg_w);
    branch.model = ModelTag::Weibull;
    const auto neg_fit = fit_mle(negatives, branch);
    negative = std::get<WeibullParams>(neg_fit.params);
    converged = converged && neg_fit.converged;
    score = std::max(score, neg_fit.score_norm);
    iterations += neg_fit.iterations;
    if (negatives.effective_size() < kMinEffectiveSize) {
      r.warnings.push_back("negative branch has fewer than 30 effective observations");
    }
  }
  r.params = NetWealthMixtureParams(negative, theta1, theta2,
                                    std::get<KappaGenParams>(pos_fit.params));
  r.converged = converged;
  r.score_norm = score;
  r.iterations = iterations;
  r.loglik = loglik(s, r.params);
  r.gof = goodness_of_fit(s, r.params);
  return r;
}

GoodnessOfFit goodness_of_fit(const WeightedSample& s, const AnyParams& p) {
  GoodnessOfFit g;
  g.loglik = loglik(s, p);
  try {
    const auto curve = empirical_lorenz(s);
    double sse = 0.0;
    for (int j = 1; j <= 9; ++j) {
      const double u = j / 10.0;
      const double diff = curve.at(u) - lorenz(u, p);
      sse += diff * diff;
    }
    g.lrsse = std::sqrt(sse);
    g.aeg = std::fabs(empirical_gini(s) - gini(p));
  } catch (const DomainError&) {
    g.lrsse = std::numeric_limits<double>::quiet_NaN();
    g.aeg = std::numeric_limits<double>::quiet_NaN();
  }
  return g;
}

}  // namespace kgen
