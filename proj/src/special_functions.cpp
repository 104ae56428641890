#include "robin/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace robin {

namespace {

double mu_tanh(double mu) { return mu * std::tanh(mu); }

}  // namespace

RootResult mu_tanh_root(double c) {
  if (c < 0.0) throw std::domain_error("mu_tanh_root: c must be non-negative");
  if (c == 0.0) return {0.0, 0.0, 0};

  // mu tanh(mu) is strictly increasing on [0, inf), ~mu^2 near 0 and ~mu at
  // infinity, so [0, max(2, c+1)] always brackets the root.
  double lo = 0.0;
  double hi = std::max(2.0, c + 1.0);
  int iters = 0;
  for (int k = 0; k < 80; ++k) {
    double mid = 0.5 * (lo + hi);
    if (mu_tanh(mid) < c)
      lo = mid;
    else
      hi = mid;
    ++iters;
    if (hi - lo < 1e-8 * std::max(1.0, hi)) break;
  }
  double mu = 0.5 * (lo + hi);
  // Newton polish: f = mu tanh mu - c, f' = tanh mu + mu sech^2 mu.
  for (int k = 0; k < 8; ++k) {
    double t = std::tanh(mu);
    double sech2 = 1.0 - t * t;
    double f = mu * t - c;
    double df = t + mu * sech2;
    if (df == 0.0) break;
    double step = f / df;
    mu -= step;
    ++iters;
    if (std::abs(step) < 1e-15 * std::max(1.0, mu)) break;
  }
  return {mu, mu_tanh(mu) - c, iters};
}

double bessel_ratio(double nu, double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_ratio: x must be positive");
  if (nu < 0.5) throw std::domain_error("bessel_ratio: nu must be >= 1/2");

  // From I_{nu-1}(x) - I_{nu+1}(x) = (2 nu / x) I_nu(x):
  //   r_nu := I_nu / I_{nu-1} = 1 / (2 nu / x + r_{nu+1}),
  // a continued fraction with all-positive terms, convergent for all x > 0.
  // Evaluated by the modified Lentz algorithm.
  const double tiny = 1e-300;
  double f = tiny;
  double C = f;
  double D = 0.0;
  for (int k = 0; k < 10000; ++k) {
    double a = (k == 0) ? 1.0 : 1.0;
    double b = 2.0 * (nu + k) / x;
    D = b + a * D;
    if (D == 0.0) D = tiny;
    C = b + a / C;
    if (C == 0.0) C = tiny;
    D = 1.0 / D;
    double delta = C * D;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) return f;
  }
  return f;
}

double ball_lambda_root(int m, double gamma) {
  if (m < 1) throw std::domain_error("ball_lambda_root: dimension must be >= 1");
  if (!(gamma > 0.0)) throw std::domain_error("ball_lambda_root: gamma must be positive");

  if (m == 1) {
    double mu = mu_tanh_root(gamma).root;
    return -mu * mu;
  }

  // Solve g(x) = x * I_{m/2}(x)/I_{m/2-1}(x) = gamma.  g is increasing,
  // g(x) ~ x^2/m near 0 and g(x) ~ x - (m-1)/2 at infinity.
  const double nu = 0.5 * m;
  auto g = [&](double x) { return x * bessel_ratio(nu, x); };

  double lo = 0.0, hi = 1.0;
  while (g(hi) < gamma) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw std::runtime_error("ball_lambda_root: bracket growth failed");
  }
  for (int k = 0; k < 200; ++k) {
    double mid = 0.5 * (lo + hi);
    if (g(mid) < gamma)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-13 * std::max(1.0, hi)) break;
  }
  double x = 0.5 * (lo + hi);
  return -x * x;
}

}  // namespace robin
