#include <cmath>
#include <type_traits>

#include "kgen/distributions.hpp"

namespace kgen {
namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

}  // namespace

double pdf(double x, const AnyParams& p) {
  return std::visit(Overloaded{[&](const KappaGenParams& q) { return kgen_pdf(x, q); },
                               [&](const WeibullParams& q) { return weibull_pdf(x, q); },
                               [&](const Ekg1Params& q) { return ekg1_pdf(x, q); },
                               [&](const Ekg2Params& q) { return ekg2_pdf(x, q); },
                               [&](const NetWealthMixtureParams& q) {
                                 return mixture_pdf(x, q).density;
                               }},
                    p);
}

double log_pdf(double x, const AnyParams& p) {
  return std::visit(Overloaded{[&](const KappaGenParams& q) { return kgen_log_pdf(x, q); },
                               [&](const WeibullParams& q) { return weibull_log_pdf(x, q); },
                               [&](const Ekg1Params& q) { return ekg1_log_pdf(x, q); },
                               [&](const Ekg2Params& q) { return ekg2_log_pdf(x, q); },
                               [&](const NetWealthMixtureParams& q) {
                                 const auto d = mixture_pdf(x, q);
                                 return std::log(x == 0.0 ? d.atom_mass : d.density);
                               }},
                    p);
}

double cdf(double x, const AnyParams& p) {
  return std::visit(Overloaded{[&](const KappaGenParams& q) { return kgen_cdf(x, q); },
                               [&](const WeibullParams& q) { return weibull_cdf(x, q); },
                               [&](const Ekg1Params& q) { return ekg1_cdf(x, q); },
                               [&](const Ekg2Params& q) { return ekg2_cdf(x, q); },
                               [&](const NetWealthMixtureParams& q) { return mixture_cdf(x, q); }},
                    p);
}

double ccdf(double x, const AnyParams& p) {
  return std::visit(Overloaded{[&](const KappaGenParams& q) { return kgen_ccdf(x, q); },
                               [&](const WeibullParams& q) { return weibull_ccdf(x, q); },
                               [&](const Ekg1Params& q) { return ekg1_ccdf(x, q); },
                               [&](const Ekg2Params& q) { return ekg2_ccdf(x, q); },
                               [&](const NetWealthMixtureParams& q) {
                                 if (x > 0.0) return q.theta3() * kgen_ccdf(x, q.positive_branch());
                                 return 1.0 - mixture_cdf(x, q);
                               }},
                    p);
}

double quantile(double u, const AnyParams& p) {
  return std::visit(
      Overloaded{[&](const KappaGenParams& q) { return kgen_quantile(u, q); },
                 [&](const WeibullParams& q) { return weibull_quantile(u, q); },
                 [&](const Ekg1Params& q) { return ekg1_quantile(u, q); },
                 [&](const Ekg2Params& q) { return ekg2_quantile(u, q); },
                 [&](const NetWealthMixtureParams& q) { return mixture_quantile(u, q); }},
      p);
}

double mean(const AnyParams& p) {
  return std::visit(Overloaded{[](const KappaGenParams& q) { return kgen_mean(q); },
                               [](const WeibullParams& q) { return weibull_mean(q); },
                               [](const Ekg1Params& q) { return ekg1_mean(q); },
                               [](const Ekg2Params& q) { return ekg2_mean(q); },
                               [](const NetWealthMixtureParams& q) { return mixture_mean(q); }},
                    p);
}

std::vector<double> sample(std::size_t n, const AnyParams& p, std::uint64_t seed) {
  return std::visit(
      Overloaded{[&](const KappaGenParams& q) { return kgen_sample(n, q, seed); },
                 [&](const WeibullParams& q) { return weibull_sample(n, q, seed); },
                 [&](const Ekg1Params& q) { return ekg1_sample(n, q, seed); },
                 [&](const Ekg2Params& q) { return ekg2_sample(n, q, seed); },
                 [&](const NetWealthMixtureParams& q) { return mixture_sample(n, q, seed); }},
      p);
}

}  // namespace kgen
