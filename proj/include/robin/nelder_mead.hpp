#pragma once

#include <functional>
#include <vector>

namespace robin {

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

// Minimizes f over R^n by the downhill simplex method.  The initial simplex
// is x0 plus `step` along each coordinate.  Deterministic: no randomized
// restarts, ties broken by index order.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0, double step,
                             double tol = 1e-12, int max_iter = 500);

}  // namespace robin
