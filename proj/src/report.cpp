#include "kgen/report.hpp"

#include <cmath>
#include <limits>

#include "json.hpp"
#include "kgen/dataset.hpp"
#include "kgen/errors.hpp"

namespace kgen::io {
namespace {

using Json = nlohmann::ordered_json;

double number(const Json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!j.is_number()) throw InputError("report: expected a number, found " + j.dump());
  return j.get<double>();
}

Json block_json(const InequalityBlock& b) {
  Json j;
  j["gini"] = b.gini;
  j["gini_ambiguous"] = b.gini_ambiguous;
  if (b.mld) j["mld"] = *b.mld;
  if (b.theil) j["theil"] = *b.theil;
  Json ge = Json::array();
  for (const auto& [theta, value] : b.ge) ge.push_back({{"theta", theta}, {"value", value}});
  j["ge"] = std::move(ge);
  return j;
}

InequalityBlock block_from(const Json& j) {
  InequalityBlock b;
  b.gini = number(j.at("gini"));
  b.gini_ambiguous = j.value("gini_ambiguous", false);
  if (j.contains("mld")) b.mld = number(j["mld"]);
  if (j.contains("theil")) b.theil = number(j["theil"]);
  if (j.contains("ge")) {
    for (const auto& e : j["ge"]) b.ge.emplace_back(number(e.at("theta")), number(e.at("value")));
  }
  return b;
}

double lookup(const ParamEntries& entries, const std::string& name) {
  for (const auto& [k, v] : entries) {
    if (k == name) return v;
  }
  throw InputError("report: missing parameter '" + name + "'");
}

}  // namespace

InequalityBlock to_block(const InequalityReport& r) {
  return {r.gini, r.gini_ambiguous, r.mld, r.theil, r.ge_values};
}

std::string serialize(const ReportDocument& r) {
  Json j;
  j["command"] = r.command;
  j["model"] = r.model;
  Json params = Json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["parameters"] = std::move(params);
  if (r.scale) j["scale"] = *r.scale;
  if (r.loglik) j["loglik"] = *r.loglik;
  if (r.converged) j["converged"] = *r.converged;
  if (r.iterations) j["iterations"] = *r.iterations;
  if (r.score_norm) j["score_norm"] = *r.score_norm;
  if (r.inequality) j["inequality"] = block_json(*r.inequality);
  if (r.empirical) j["empirical"] = block_json(*r.empirical);
  if (r.gof) j["gof"] = {{"loglik", r.gof->loglik}, {"lrsse", r.gof->lrsse}, {"aeg", r.gof->aeg}};
  j["warnings"] = r.warnings;
  Json prov;
  prov["input"] = r.provenance.input;
  if (r.provenance.seed) prov["seed"] = *r.provenance.seed;
  prov["tool_version"] = r.provenance.tool_version;
  j["provenance"] = std::move(prov);
  return j.dump(2) + "\n";
}

ReportDocument parse_report(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("report: ") + e.what());
  }
  try {
    ReportDocument r;
    r.command = j.value("command", "");
    r.model = j.at("model").get<std::string>();
    for (const auto& [k, v] : j.at("parameters").items()) r.params.emplace_back(k, number(v));
    if (j.contains("scale")) r.scale = number(j["scale"]);
    if (j.contains("loglik")) r.loglik = number(j["loglik"]);
    if (j.contains("converged")) r.converged = j["converged"].get<bool>();
    if (j.contains("iterations")) r.iterations = j["iterations"].get<int>();
    if (j.contains("score_norm")) r.score_norm = number(j["score_norm"]);
    if (j.contains("inequality")) r.inequality = block_from(j["inequality"]);
    if (j.contains("empirical")) r.empirical = block_from(j["empirical"]);
    if (j.contains("gof")) {
      const auto& g = j["gof"];
      r.gof = GofBlock{number(g.at("loglik")), number(g.at("lrsse")), number(g.at("aeg"))};
    }
    if (j.contains("warnings")) r.warnings = j["warnings"].get<std::vector<std::string>>();
    if (j.contains("provenance")) {
      const auto& p = j["provenance"];
      r.provenance.input = p.value("input", "");
      if (p.contains("seed")) r.provenance.seed = p["seed"].get<std::uint64_t>();
      r.provenance.tool_version = p.value("tool_version", "");
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("report: ") + e.what());
  }
}

ParamEntries param_entries(const AnyParams& p) {
  return std::visit(
      [](const auto& q) -> ParamEntries {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, KappaGenParams>) {
          return {{"alpha", q.alpha()}, {"beta", q.beta()}, {"kappa", q.kappa()}};
        } else if constexpr (std::is_same_v<T, WeibullParams>) {
          return {{"shape", q.shape()}, {"scale", q.scale()}};
        } else if constexpr (std::is_same_v<T, Ekg1Params>) {
          return {{"a", q.a()}, {"b", q.b()}, {"q", q.q()}, {"r", q.r()}};
        } else if constexpr (std::is_same_v<T, Ekg2Params>) {
          return {{"a", q.a()}, {"b", q.b()}, {"p", q.p()}, {"q", q.q()}};
        } else {
          const auto& w = q.negative_branch();
          const auto& k = q.positive_branch();
          return {{"s", w.shape()},       {"lambda", w.scale()}, {"theta1", q.theta1()},
                  {"theta2", q.theta2()}, {"alpha", k.alpha()},  {"beta", k.beta()},
                  {"kappa", k.kappa()}};
        }
      },
      p);
}

AnyParams params_from_entries(const std::string& model, const ParamEntries& e) {
  if (model == "kappagen" || model == "kappagen_normalized") {
    return KappaGenParams(lookup(e, "alpha"), lookup(e, "beta"), lookup(e, "kappa"));
  }
  if (model == "weibull") return WeibullParams(lookup(e, "shape"), lookup(e, "scale"));
  if (model == "ekg1") {
    return Ekg1Params(lookup(e, "a"), lookup(e, "b"), lookup(e, "q"), lookup(e, "r"));
  }
  if (model == "ekg2") {
    return Ekg2Params(lookup(e, "a"), lookup(e, "b"), lookup(e, "p"), lookup(e, "q"));
  }
  if (model == "mixture") {
    return NetWealthMixtureParams(
        WeibullParams(lookup(e, "s"), lookup(e, "lambda")), lookup(e, "theta1"),
        lookup(e, "theta2"),
        KappaGenParams(lookup(e, "alpha"), lookup(e, "beta"), lookup(e, "kappa")));
  }
  throw InputError("report: unknown model '" + model + "'");
}

}  // namespace kgen::io
