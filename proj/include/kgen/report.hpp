#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kgen/inequality.hpp"
#include "kgen/params.hpp"

namespace kgen::io {

using ParamEntries = std::vector<std::pair<std::string, double>>;

struct InequalityBlock {
  double gini = 0.0;
  bool gini_ambiguous = false;
  std::optional<double> mld;
  std::optional<double> theil;
  std::vector<std::pair<double, double>> ge;  // (theta, value)

  bool operator==(const InequalityBlock&) const = default;
};

InequalityBlock to_block(const InequalityReport& r);

struct GofBlock {
  double loglik = 0.0;
  double lrsse = 0.0;
  double aeg = 0.0;

  bool operator==(const GofBlock&) const = default;
};

struct Provenance {
  std::string input;
  std::optional<std::uint64_t> seed;
  std::string tool_version;

  bool operator==(const Provenance&) const = default;
};

struct ReportDocument {
  std::string command;
  std::string model;
  ParamEntries params;
  std::optional<double> scale;
  std::optional<double> loglik;
  std::optional<bool> converged;
  std::optional<int> iterations;
  std::optional<double> score_norm;
  std::optional<InequalityBlock> inequality;
  std::optional<InequalityBlock> empirical;
  std::optional<GofBlock> gof;
  std::vector<std::string> warnings;
  Provenance provenance;

  bool operator==(const ReportDocument&) const = default;
};

// JSON text; non-finite numbers are written as null and read back as NaN.
std::string serialize(const ReportDocument& r);
// Throws InputError on malformed documents.
ReportDocument parse_report(const std::string& text);

// Named parameters in a fixed order per family. The mixture lists
// s, lambda, theta1, theta2, alpha, beta, kappa.
ParamEntries param_entries(const AnyParams& p);
// Inverse of param_entries; model is a family name or kappagen_normalized.
AnyParams params_from_entries(const std::string& model, const ParamEntries& entries);

}  // namespace kgen::io
