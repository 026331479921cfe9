#include "kgen/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace kgen::opt {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double guarded(const Objective& f, const std::vector<double>& x, int& evaluations) {
  ++evaluations;
  const double v = f(x);
  return std::isnan(v) ? kInf : v;
}

}  // namespace

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::fabs(e));
  return m;
}

std::vector<double> central_gradient(const Objective& f, const std::vector<double>& x,
                                     double step, int* evaluations) {
  std::vector<double> g(x.size());
  std::vector<double> probe(x);
  int evals = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double h = step * std::max(1.0, std::fabs(x[i]));
    probe[i] = x[i] + h;
    const double up = guarded(f, probe, evals);
    probe[i] = x[i] - h;
    const double down = guarded(f, probe, evals);
    probe[i] = x[i];
    g[i] = (up - down) / (2.0 * h);
  }
  if (evaluations != nullptr) *evaluations += evals;
  return g;
}

Result nelder_mead(const Objective& f, std::vector<double> x0, const NelderMeadOptions& opt) {
  const std::size_t n = x0.size();
  Result res;
  std::vector<std::vector<double>> simplex(n + 1, x0);
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += opt.initial_step;
  for (std::size_t i = 0; i <= n; ++i) values[i] = guarded(f, simplex[i], res.evaluations);

  // Standard coefficients: reflection 1, expansion 2, contraction 1/2, shrink 1/2.
  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n);
  std::vector<double> trial(n);
  auto point = [&](double coef, std::vector<double>& out, const std::vector<double>& worst) {
    for (std::size_t j = 0; j < n; ++j) out[j] = centroid[j] + coef * (worst[j] - centroid[j]);
  };

  for (res.iterations = 0; res.iterations < opt.max_iter; ++res.iterations) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];

    double spread = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        spread = std::max(spread, std::fabs(simplex[i][j] - simplex[best][j]));
      }
    }
    const double fspread = values[worst] - values[best];
    if (std::isfinite(fspread) &&
        fspread <= opt.ftol * (std::fabs(values[best]) + 1e-12) && spread <= opt.xtol) {
      res.converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j] / n;
    }

    point(-1.0, trial, simplex[worst]);
    const double f_reflect = guarded(f, trial, res.evaluations);
    if (f_reflect < values[best]) {
      std::vector<double> expanded(n);
      point(-2.0, expanded, simplex[worst]);
      const double f_expand = guarded(f, expanded, res.evaluations);
      if (f_expand < f_reflect) {
        simplex[worst] = expanded;
        values[worst] = f_expand;
      } else {
        simplex[worst] = trial;
        values[worst] = f_reflect;
      }
      continue;
    }
    if (f_reflect < values[second]) {
      simplex[worst] = trial;
      values[worst] = f_reflect;
      continue;
    }
    const bool outside = f_reflect < values[worst];
    std::vector<double> contracted(n);
    point(outside ? -0.5 : 0.5, contracted, simplex[worst]);
    const double f_contract = guarded(f, contracted, res.evaluations);
    if (f_contract < std::min(f_reflect, values[worst])) {
      simplex[worst] = contracted;
      values[worst] = f_contract;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t j = 0; j < n; ++j) {
        simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
      }
      values[i] = guarded(f, simplex[i], res.evaluations);
    }
  }
  const auto best = static_cast<std::size_t>(
      std::min_element(values.begin(), values.end()) - values.begin());
  res.x = simplex[best];
  res.value = values[best];
  return res;
}

Result bfgs(const Objective& f, std::vector<double> x0, const BfgsOptions& opt) {
  const std::size_t n = x0.size();
  Result res;
  res.x = std::move(x0);
  res.value = guarded(f, res.x, res.evaluations);
  if (!std::isfinite(res.value)) return res;

  std::vector<double> g = central_gradient(f, res.x, opt.step, &res.evaluations);
  // Inverse Hessian approximation, row-major.
  std::vector<double> H(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) H[i * n + i] = 1.0;
  std::vector<double> dir(n), x_new(n), g_new(n), s(n), y(n), Hy(n);

  for (res.iterations = 0; res.iterations < opt.max_iter; ++res.iterations) {
    if (max_abs(g) <= opt.gtol) {
      res.converged = true;
      break;
    }
    for (std::size_t i = 0; i < n; ++i) {
      dir[i] = 0.0;
      for (std::size_t j = 0; j < n; ++j) dir[i] -= H[i * n + j] * g[j];
    }
    double slope = std::inner_product(dir.begin(), dir.end(), g.begin(), 0.0);
    if (!(slope < 0.0)) {
      // Not a descent direction: restart from steepest descent.
      std::fill(H.begin(), H.end(), 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        H[i * n + i] = 1.0;
        dir[i] = -g[i];
      }
      slope = -std::inner_product(g.begin(), g.end(), g.begin(), 0.0);
    }

    // Backtracking line search with the Armijo condition.
    double t = 1.0;
    double f_new = kInf;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      for (std::size_t i = 0; i < n; ++i) x_new[i] = res.x[i] + t * dir[i];
      f_new = guarded(f, x_new, res.evaluations);
      if (f_new <= res.value + 1e-4 * t * slope) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;

    g_new = central_gradient(f, x_new, opt.step, &res.evaluations);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = x_new[i] - res.x[i];
      y[i] = g_new[i] - g[i];
    }
    const double sy = std::inner_product(s.begin(), s.end(), y.begin(), 0.0);
    res.x = x_new;
    res.value = f_new;
    g = g_new;
    if (sy > 1e-14 * std::sqrt(std::inner_product(s.begin(), s.end(), s.begin(), 0.0) *
                               std::inner_product(y.begin(), y.end(), y.begin(), 0.0))) {
      for (std::size_t i = 0; i < n; ++i) {
        Hy[i] = 0.0;
        for (std::size_t j = 0; j < n; ++j) Hy[i] += H[i * n + j] * y[j];
      }
      const double yHy = std::inner_product(y.begin(), y.end(), Hy.begin(), 0.0);
      const double rho = 1.0 / sy;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          H[i * n + j] += (1.0 + yHy * rho) * rho * s[i] * s[j] -
                          rho * (Hy[i] * s[j] + s[i] * Hy[j]);
        }
      }
    }
  }
  if (!res.converged && max_abs(g) <= opt.gtol) res.converged = true;
  return res;
}

}  // namespace kgen::opt
