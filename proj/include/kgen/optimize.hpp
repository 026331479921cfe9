#pragma once

#include <functional>
#include <vector>

// Unconstrained minimizers used by the fitting engine. Objectives may return
// +inf or NaN to signal an infeasible point; both are treated as +inf.
namespace kgen::opt {

using Objective = std::function<double(const std::vector<double>&)>;

struct Result {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

struct NelderMeadOptions {
  int max_iter = 500;
  double ftol = 1e-10;   // relative spread of simplex values
  double xtol = 1e-8;    // largest vertex offset from the best vertex
  double initial_step = 0.1;
};

Result nelder_mead(const Objective& f, std::vector<double> x0, const NelderMeadOptions& opt = {});

struct BfgsOptions {
  int max_iter = 200;
  double gtol = 1e-7;          // max-abs gradient
  double step = 1e-5;          // central-difference step
};

Result bfgs(const Objective& f, std::vector<double> x0, const BfgsOptions& opt = {});

std::vector<double> central_gradient(const Objective& f, const std::vector<double>& x,
                                     double step, int* evaluations = nullptr);

double max_abs(const std::vector<double>& v);

}  // namespace kgen::opt
