#include "robin/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace robin {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0, double step,
                             double tol, int max_iter) {
  const std::size_t n = x0.size();
  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

  std::vector<std::vector<double>> pts(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step;

  int evals = 0;
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    vals[i] = f(pts[i]);
    ++evals;
  }

  std::vector<std::size_t> order(n + 1);
  NelderMeadResult res;
  for (int iter = 0; iter < max_iter; ++iter) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order[0], worst = order[n], second = order[n - 1];

    if (std::abs(vals[worst] - vals[best]) <
        tol * (std::abs(vals[best]) + std::abs(vals[worst])) + 1e-300) {
      res.converged = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t k = 0; k <= n; ++k) {
      if (k == worst) continue;
      for (std::size_t i = 0; i < n; ++i) centroid[i] += pts[k][i];
    }
    for (auto& c : centroid) c /= static_cast<double>(n);

    auto blend = [&](double t) {
      std::vector<double> p(n);
      for (std::size_t i = 0; i < n; ++i)
        p[i] = centroid[i] + t * (centroid[i] - pts[worst][i]);
      return p;
    };

    auto xr = blend(alpha);
    double fr = f(xr);
    ++evals;
    if (fr < vals[best]) {
      auto xe = blend(gamma);
      double fe = f(xe);
      ++evals;
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
    } else if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
    } else {
      auto xc = blend(fr < vals[worst] ? rho : -rho);
      double fc = f(xc);
      ++evals;
      if (fc < std::min(fr, vals[worst])) {
        pts[worst] = xc;
        vals[worst] = fc;
      } else {
        for (std::size_t k = 0; k <= n; ++k) {
          if (k == best) continue;
          for (std::size_t i = 0; i < n; ++i)
            pts[k][i] = pts[best][i] + sigma * (pts[k][i] - pts[best][i]);
          vals[k] = f(pts[k]);
          ++evals;
        }
      }
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i <= n; ++i)
    if (vals[i] < vals[best]) best = i;
  res.x = pts[best];
  res.value = vals[best];
  res.evaluations = evals;
  return res;
}

}  // namespace robin
