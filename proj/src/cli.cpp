#include "kgen/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "kgen/dataset.hpp"
#include "kgen/distributions.hpp"
#include "kgen/errors.hpp"
#include "kgen/fitting.hpp"
#include "kgen/inequality.hpp"
#include "kgen/report.hpp"

namespace kgen::cli {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt15(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

// Writes to a file when a path is given, otherwise to the fallback stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw io::InputError(path + ": cannot open for writing");
      os_ = &file_;
    }
  }
  std::ostream& stream() { return *os_; }
  void close() {
    os_->flush();
    if (!*os_) throw io::InputError("write failed");
  }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

struct ParamFlags {
  std::string model = "kappagen";
  std::optional<double> alpha, beta, kappa, shape, scale, a, b, p, q, r, s, lambda, theta1,
      theta2;

  void add_to(CLI::App& app) {
    app.add_option("--model", model, "kappagen, weibull, ekg1, ekg2 or mixture");
    app.add_option("--alpha", alpha, "kappagen alpha (mixture positive branch)");
    app.add_option("--beta", beta, "kappagen beta (mixture positive branch)");
    app.add_option("--kappa", kappa, "kappagen kappa (mixture positive branch)");
    app.add_option("--shape", shape, "weibull shape");
    app.add_option("--scale", scale, "weibull scale");
    app.add_option("--a", a, "ekg1/ekg2 a");
    app.add_option("--b", b, "ekg1/ekg2 b");
    app.add_option("--p", p, "ekg2 p");
    app.add_option("--q", q, "ekg1/ekg2 q");
    app.add_option("--r", r, "ekg1 r");
    app.add_option("--s", s, "mixture Weibull shape");
    app.add_option("--lambda", lambda, "mixture Weibull scale");
    app.add_option("--theta1", theta1, "mixture share of negatives");
    app.add_option("--theta2", theta2, "mixture share of zeros");
  }

  // Scale parameters default to 1 when the caller only needs scale-free output.
  AnyParams build(bool scale_free = false) const {
    const auto need = [&](const std::optional<double>& v, const char* flag, bool is_scale) {
      if (v) return *v;
      if (is_scale && scale_free) return 1.0;
      throw UsageError("model " + model + " needs --" + flag);
    };
    if (model == "kappagen") {
      return KappaGenParams(need(alpha, "alpha", false), need(beta, "beta", true),
                            need(kappa, "kappa", false));
    }
    if (model == "weibull") return WeibullParams(need(shape, "shape", false), need(scale, "scale", true));
    if (model == "ekg1") {
      return Ekg1Params(need(a, "a", false), need(b, "b", true), need(q, "q", false),
                        need(r, "r", false));
    }
    if (model == "ekg2") {
      return Ekg2Params(need(a, "a", false), need(b, "b", true), need(p, "p", false),
                        need(q, "q", false));
    }
    if (model == "mixture") {
      return NetWealthMixtureParams(
          WeibullParams(need(s, "s", false), need(lambda, "lambda", true)),
          need(theta1, "theta1", false), need(theta2, "theta2", false),
          KappaGenParams(need(alpha, "alpha", false), need(beta, "beta", true),
                         need(kappa, "kappa", false)));
    }
    throw UsageError("unsupported model '" + model +
                     "' (expected kappagen, weibull, ekg1, ekg2 or mixture)");
  }
};

struct FitFlags {
  int max_iter = 500;
  int multistart = 5;
  double rel_tol = 1e-9;
  std::uint64_t seed = 0;

  void add_to(CLI::App& app) {
    app.add_option("--seed", seed, "seed for multistart perturbations");
    app.add_option("--max-iter", max_iter, "iteration cap per optimizer stage");
    app.add_option("--multistart", multistart, "number of optimizer starts");
    app.add_option("--rel-tol", rel_tol, "relative objective tolerance");
  }

  FitConfig config(ModelTag model) const {
    FitConfig c;
    c.model = model;
    c.max_iter = max_iter;
    c.multistart = multistart;
    c.rel_tol = rel_tol;
    c.seed = seed;
    c.validate();
    return c;
  }
};

void fill_fit(io::ReportDocument& doc, const FitResult& r) {
  doc.model = model_name(r.model);
  doc.params = io::param_entries(r.params);
  doc.scale = r.scale;
  doc.loglik = r.loglik;
  doc.converged = r.converged;
  doc.iterations = r.iterations;
  doc.score_norm = r.score_norm;
  doc.gof = io::GofBlock{r.gof.loglik, r.gof.lrsse, r.gof.aeg};
  doc.warnings.insert(doc.warnings.end(), r.warnings.begin(), r.warnings.end());
}

void write_report(const io::ReportDocument& doc, const std::string& path, std::ostream& out) {
  Sink sink(path, out);
  sink.stream() << io::serialize(doc);
  sink.close();
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io::InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int not_converged(const FitResult& r, std::ostream& err) {
  err << "warning: optimizer did not converge (score_norm " << fmt15(r.score_norm) << ")\n";
  return kNotConverged;
}

// ---------------------------------------------------------------------------

struct FitCmd {
  std::string input;
  std::string model = "kappagen";
  std::string output;
  bool no_header = false;
  std::vector<double> thetas;
  FitFlags fit;
};

int cmd_fit(const FitCmd& c, std::ostream& out, std::ostream& err) {
  const auto config = c.fit.config(parse_model(c.model));
  const auto data = io::read_dataset(c.input, c.no_header);
  const auto r = fit_mle(data.sample, config);
  io::ReportDocument doc;
  doc.command = "fit";
  fill_fit(doc, r);
  try {
    doc.inequality = io::to_block(inequality_report(r.params, c.thetas));
  } catch (const DomainError& e) {
    doc.warnings.push_back(std::string("inequality: ") + e.what());
  }
  doc.provenance = {c.input, c.fit.seed, kToolVersion};
  write_report(doc, c.output, out);
  return r.converged ? kSuccess : not_converged(r, err);
}

struct EvalCmd {
  ParamFlags params;
  std::string fn = "pdf";
  std::vector<double> at;
  std::vector<double> grid;
  std::string output;
};

int cmd_eval(const EvalCmd& c, std::ostream& out) {
  const auto p = c.params.build();
  std::vector<double> points = c.at;
  if (!c.grid.empty()) {
    if (!c.at.empty()) throw UsageError("use either --at or --grid, not both");
    if (c.grid.size() != 3 || !(c.grid[2] >= 1.0) || c.grid[2] != std::floor(c.grid[2])) {
      throw UsageError("--grid expects lo,hi,n with integer n >= 1");
    }
    const auto n = static_cast<std::size_t>(c.grid[2]);
    for (std::size_t i = 0; i < n; ++i) {
      points.push_back(n == 1 ? c.grid[0]
                              : c.grid[0] + (c.grid[1] - c.grid[0]) * static_cast<double>(i) /
                                                static_cast<double>(n - 1));
    }
  }
  if (points.empty()) throw UsageError("eval needs --at or --grid");
  std::function<double(double)> f;
  if (c.fn == "pdf") f = [&](double x) { return pdf(x, p); };
  else if (c.fn == "logpdf") f = [&](double x) { return log_pdf(x, p); };
  else if (c.fn == "cdf") f = [&](double x) { return cdf(x, p); };
  else if (c.fn == "ccdf") f = [&](double x) { return ccdf(x, p); };
  else if (c.fn == "quantile") f = [&](double u) { return quantile(u, p); };
  else throw UsageError("unknown function '" + c.fn + "' (pdf, logpdf, cdf, ccdf, quantile)");

  std::string table = (c.fn == "quantile" ? "u\t" : "x\t") + c.fn + "\n";
  for (double x : points) table += fmt15(x) + "\t" + fmt15(f(x)) + "\n";
  Sink sink(c.output, out);
  sink.stream() << table;
  sink.close();
  return kSuccess;
}

struct InequalityCmd {
  ParamFlags params;
  std::string input;
  std::string from_report;
  std::vector<double> thetas;
  bool no_header = false;
  std::string output;
  FitFlags fit;
};

int cmd_inequality(const InequalityCmd& c, std::ostream& out, std::ostream& err) {
  if (!c.input.empty() && !c.from_report.empty()) {
    throw UsageError("use either --input or --from-report, not both");
  }
  io::ReportDocument doc;
  doc.command = "inequality";
  int code = kSuccess;
  if (!c.input.empty()) {
    const auto config = c.fit.config(parse_model(c.params.model));
    const auto data = io::read_dataset(c.input, c.no_header);
    doc.empirical = io::to_block(empirical_inequality_report(data.sample, c.thetas));
    doc.model = c.params.model;
    try {
      const auto r = fit_mle(data.sample, config);
      fill_fit(doc, r);
      doc.inequality = io::to_block(inequality_report(r.params, c.thetas));
      if (!r.converged) code = not_converged(r, err);
    } catch (const std::exception& e) {
      doc.warnings.push_back(std::string("model: ") + e.what());
    }
    doc.provenance = {c.input, c.fit.seed, kToolVersion};
  } else {
    AnyParams p = KappaGenParams(1.0, 1.0, 0.0);
    if (!c.from_report.empty()) {
      const auto src = io::parse_report(read_text(c.from_report));
      p = io::params_from_entries(src.model, src.params);
      doc.model = src.model;
      doc.provenance.input = c.from_report;
    } else {
      p = c.params.build(true);
      doc.model = c.params.model;
    }
    doc.params = io::param_entries(p);
    doc.inequality = io::to_block(inequality_report(p, c.thetas));
    doc.provenance.tool_version = kToolVersion;
  }
  write_report(doc, c.output, out);
  return code;
}

struct SampleCmd {
  ParamFlags params;
  long long n = 0;
  std::uint64_t seed = 0;
  std::string output;
};

int cmd_sample(const SampleCmd& c, std::ostream& out) {
  if (c.n < 1) throw UsageError("--n must be >= 1");
  const auto p = c.params.build();
  const auto xs = sample(static_cast<std::size_t>(c.n), p, c.seed);
  std::string text;
  text.reserve(xs.size() * 24);
  char buf[64];
  for (double x : xs) {
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    text.append(buf, res.ptr);
    text.push_back('\n');
  }
  Sink sink(c.output, out);
  sink.stream() << text;
  sink.close();
  return kSuccess;
}

struct CompareCmd {
  std::string input;
  std::vector<std::string> models;
  bool no_header = false;
  std::string output;
  FitFlags fit;
};

int cmd_compare(const CompareCmd& c, std::ostream& out) {
  if (c.models.size() < 2) throw UsageError("compare needs at least two models");
  for (const auto& m : c.models) parse_model(m);
  const auto data = io::read_dataset(c.input, c.no_header);

  struct Row {
    std::string model;
    bool ok = false;
    bool converged = false;
    double loglik = std::nan("");
    double lrsse = std::nan("");
    double aeg = std::nan("");
    std::string status = "ok";
  };
  std::vector<Row> rows;
  for (const auto& m : c.models) {
    Row row;
    row.model = m;
    try {
      const auto r = fit_mle(data.sample, c.fit.config(parse_model(m)));
      row.ok = true;
      row.converged = r.converged;
      row.loglik = r.loglik;
      row.lrsse = r.gof.lrsse;
      row.aeg = r.gof.aeg;
      if (!r.converged) row.status = "not converged";
    } catch (const std::exception& e) {
      row.status = std::string("failed: ") + e.what();
    }
    rows.push_back(std::move(row));
  }
  // Competition ranking: one plus the number of strictly better finite entries.
  const auto rank = [&](const Row& self, double Row::*field, bool higher_better) -> std::string {
    const double v = self.*field;
    if (!std::isfinite(v)) return "NA";
    int better = 0;
    for (const auto& o : rows) {
      const double w = o.*field;
      if (std::isfinite(w) && (higher_better ? w > v : w < v)) ++better;
    }
    return std::to_string(better + 1);
  };
  std::string table =
      "model\tconverged\tloglik\tlrsse\taeg\trank_loglik\trank_lrsse\trank_aeg\tstatus\n";
  for (const auto& row : rows) {
    table += row.model + "\t" + (row.ok ? (row.converged ? "yes" : "no") : "NA") + "\t" +
             fmt15(row.loglik) + "\t" + fmt15(row.lrsse) + "\t" + fmt15(row.aeg) + "\t" +
             rank(row, &Row::loglik, true) + "\t" + rank(row, &Row::lrsse, false) + "\t" +
             rank(row, &Row::aeg, false) + "\t" + row.status + "\n";
  }
  Sink sink(c.output, out);
  sink.stream() << table;
  sink.close();
  return kSuccess;
}

struct PlotCmd {
  ParamFlags params;
  std::string kind = "lorenz";
  std::string input;
  bool no_header = false;
  int points = 101;
  std::string output;
};

// Quantiles of the income part: the whole law, or the positive mixture branch.
double positive_quantile(double u, const AnyParams& p) {
  if (const auto* m = std::get_if<NetWealthMixtureParams>(&p)) {
    return kgen_quantile(u, m->positive_branch());
  }
  return quantile(u, p);
}

std::vector<std::pair<double, double>> plot_from_params(const PlotCmd& c) {
  const bool scale_free = c.kind == "lorenz";
  const auto p = c.params.build(scale_free);
  const auto n = static_cast<std::size_t>(c.points);
  std::vector<std::pair<double, double>> rows;
  if (c.kind == "lorenz") {
    for (std::size_t i = 0; i < n; ++i) {
      const double u = static_cast<double>(i) / static_cast<double>(n - 1);
      const double L = i == 0 ? 0.0 : (i + 1 == n ? 1.0 : lorenz(u, p));
      rows.emplace_back(u, L);
    }
  } else if (c.kind == "ccdf-loglog") {
    const double lo = std::log10(positive_quantile(0.01, p));
    const double hi = std::log10(positive_quantile(1.0 - 1e-7, p));
    for (std::size_t i = 0; i < n; ++i) {
      const double lx = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
      rows.emplace_back(lx, std::log10(ccdf(std::pow(10.0, lx), p)));
    }
  } else {
    const bool signed_law = std::holds_alternative<NetWealthMixtureParams>(p);
    const double lo = signed_law ? quantile(0.005, p) : 0.0;
    const double hi = quantile(0.995, p);
    for (std::size_t i = 1; i <= n; ++i) {
      const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
      rows.emplace_back(x, pdf(x, p));
    }
  }
  return rows;
}

std::vector<std::pair<double, double>> plot_from_data(const PlotCmd& c) {
  const auto data = io::read_dataset(c.input, c.no_header);
  const auto& s = data.sample;
  if (c.kind == "lorenz") return empirical_lorenz(s).points;
  if (c.kind == "pdf") throw UsageError("pdf plot data needs model parameters, not --input");
  // Empirical ccdf at each distinct positive value with positive weight.
  std::vector<std::pair<double, double>> vw;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.values()[i] > 0.0 && s.weights()[i] > 0.0) vw.emplace_back(s.values()[i], s.weights()[i]);
  }
  std::sort(vw.begin(), vw.end());
  std::vector<std::pair<double, double>> rows;
  double above = 0.0;
  for (const auto& e : vw) above += e.second;
  for (std::size_t i = 0; i < vw.size();) {
    const double v = vw[i].first;
    while (i < vw.size() && vw[i].first == v) above -= vw[i++].second;
    if (above > 0.0) rows.emplace_back(std::log10(v), std::log10(above / s.total_weight()));
  }
  return rows;
}

int cmd_plotdata(const PlotCmd& c, std::ostream& out) {
  if (c.kind != "lorenz" && c.kind != "ccdf-loglog" && c.kind != "pdf") {
    throw UsageError("unknown --kind '" + c.kind + "' (ccdf-loglog, lorenz, pdf)");
  }
  if (c.points < 2) throw UsageError("--points must be >= 2");
  const auto rows = c.input.empty() ? plot_from_params(c) : plot_from_data(c);
  std::string table = c.kind == "lorenz"  ? "u\tlorenz\n"
                      : c.kind == "pdf"   ? "x\tpdf\n"
                                          : "log10_x\tlog10_ccdf\n";
  for (const auto& [x, y] : rows) table += fmt15(x) + "\t" + fmt15(y) + "\n";
  Sink sink(c.output, out);
  sink.stream() << table;
  sink.close();
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Fit and evaluate kappa-generalized income and wealth distributions", "kgen");
  app.set_version_flag("--version", std::string("kgen ") + kToolVersion);
  app.require_subcommand(1);

  FitCmd fit;
  auto* fit_app = app.add_subcommand("fit", "fit a model to a data file and write a report");
  fit_app->add_option("input", fit.input, "data file")->required();
  fit_app->add_option("--model", fit.model,
                      "kappagen, weibull, ekg1, ekg2, mixture or kappagen_normalized");
  fit_app->add_option("-o,--output", fit.output, "report path (default: standard output)");
  fit_app->add_flag("--no-header", fit.no_header, "treat the first line as data");
  fit_app->add_option("--theta", fit.thetas, "generalized-entropy orders")->delimiter(',');
  fit.fit.add_to(*fit_app);

  EvalCmd eval;
  auto* eval_app = app.add_subcommand("eval", "tabulate pdf, cdf, ccdf or quantile values");
  eval.params.add_to(*eval_app);
  eval_app->add_option("--fn", eval.fn, "pdf, logpdf, cdf, ccdf or quantile");
  eval_app->add_option("--at", eval.at, "comma-separated points")->delimiter(',');
  eval_app->add_option("--grid", eval.grid, "lo,hi,n evenly spaced points")->delimiter(',');
  eval_app->add_option("-o,--output", eval.output, "table path");

  InequalityCmd ineq;
  auto* ineq_app =
      app.add_subcommand("inequality", "Gini, MLD, Theil and GE from parameters or data");
  ineq.params.add_to(*ineq_app);
  ineq_app->add_option("--input", ineq.input, "data file (empirical and fitted values)");
  ineq_app->add_option("--from-report", ineq.from_report, "take parameters from a fit report");
  ineq_app->add_option("--theta", ineq.thetas, "generalized-entropy orders")->delimiter(',');
  ineq_app->add_flag("--no-header", ineq.no_header, "treat the first line as data");
  ineq_app->add_option("-o,--output", ineq.output, "report path");
  ineq.fit.add_to(*ineq_app);

  SampleCmd samp;
  auto* sample_app = app.add_subcommand("sample", "draw samples by inversion");
  samp.params.add_to(*sample_app);
  sample_app->add_option("-n,--n", samp.n, "sample size")->required();
  sample_app->add_option("--seed", samp.seed, "random seed");
  sample_app->add_option("-o,--output", samp.output, "output path");

  CompareCmd cmp;
  auto* cmp_app = app.add_subcommand("compare", "fit several models and rank them");
  cmp_app->add_option("input", cmp.input, "data file")->required();
  cmp_app->add_option("--models", cmp.models, "comma-separated model list")
      ->delimiter(',')
      ->required();
  cmp_app->add_flag("--no-header", cmp.no_header, "treat the first line as data");
  cmp_app->add_option("-o,--output", cmp.output, "table path");
  cmp.fit.add_to(*cmp_app);

  PlotCmd plot;
  auto* plot_app = app.add_subcommand("plotdata", "two-column tables for plotting");
  plot.params.add_to(*plot_app);
  plot_app->add_option("--kind", plot.kind, "ccdf-loglog, lorenz or pdf");
  plot_app->add_option("--input", plot.input, "data file (empirical curves)");
  plot_app->add_flag("--no-header", plot.no_header, "treat the first line as data");
  plot_app->add_option("--points", plot.points, "grid size");
  plot_app->add_option("-o,--output", plot.output, "table path");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    if (fit_app->parsed()) return cmd_fit(fit, out, err);
    if (eval_app->parsed()) return cmd_eval(eval, out);
    if (ineq_app->parsed()) return cmd_inequality(ineq, out, err);
    if (sample_app->parsed()) return cmd_sample(samp, out);
    if (cmp_app->parsed()) return cmd_compare(cmp, out);
    if (plot_app->parsed()) return cmd_plotdata(plot, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace kgen::cli
