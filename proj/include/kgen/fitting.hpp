#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kgen/params.hpp"
#include "kgen/sample.hpp"

namespace kgen {

enum class ModelTag { KappaGen, Weibull, Ekg1, Ekg2, Mixture, KappaGenNormalized };

std::string model_name(ModelTag m);
// Accepts kappagen, weibull, ekg1, ekg2, mixture, kappagen_normalized.
// Throws DomainError for anything else.
ModelTag parse_model(const std::string& name);

struct FitConfig {
  ModelTag model = ModelTag::KappaGen;
  int max_iter = 500;
  double rel_tol = 1e-9;
  int multistart = 5;
  std::uint64_t seed = 0;

  void validate() const;
};

struct GoodnessOfFit {
  double loglik = 0.0;
  // Root of summed squared Lorenz errors over u = 0.1, ..., 0.9 and the
  // absolute Gini error; NaN when the model Lorenz curve does not exist.
  double lrsse = 0.0;
  double aeg = 0.0;
};

struct FitResult {
  ModelTag model = ModelTag::KappaGen;
  AnyParams params = KappaGenParams(1.0, 1.0, 0.0);
  double loglik = 0.0;
  bool converged = false;
  int iterations = 0;
  // Max-abs central-difference gradient of the per-unit-weight
  // log-likelihood in the optimizer's unconstrained coordinates.
  double score_norm = 0.0;
  GoodnessOfFit gof;
  // kappagen_normalized: the weighted mean m used for z = x / m.
  std::optional<double> scale;
  std::vector<std::string> warnings;
};

// Sum of w_i ln f(x_i). For the mixture, zeros contribute ln theta2.
// Throws DomainError naming the first observation outside the support.
double loglik(const WeightedSample& s, const AnyParams& p);

// Maximum likelihood for config.model (kappagen, weibull, ekg1, ekg2; the
// mixture and normalized models are forwarded to their own entry points).
FitResult fit_mle(const WeightedSample& s, const FitConfig& config);
// Two-parameter (alpha, kappa) fit of z = x / m with beta pinned by the unit
// mean constraint. Returned params are on the x scale (beta_x = m beta_z).
FitResult fit_normalized(const WeightedSample& s, const FitConfig& config);
FitResult fit_mixture(const WeightedSample& s, const FitConfig& config);

GoodnessOfFit goodness_of_fit(const WeightedSample& s, const AnyParams& p);

}  // namespace kgen
