#pragma once

#include <cstdint>

namespace robin {

struct RootResult {
  double root = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

// Unique non-negative root of mu * tanh(mu) = c, for c >= 0.
RootResult mu_tanh_root(double c);

// Ratio I_nu(x) / I_{nu-1}(x) of modified Bessel functions, evaluated by a
// continued fraction so that neither numerator nor denominator is ever formed.
// Requires x > 0 and nu >= 1/2.
double bessel_ratio(double nu, double x);

// Bottom of the Robin spectrum of the unit ball in R^m: the negative number
// Lambda solving
//   sqrt(-Lambda) tanh sqrt(-Lambda) = gamma                  (m = 1)
//   sqrt(-Lambda) I_{m/2}(sqrt(-L)) / I_{m/2-1}(sqrt(-L)) = gamma   (m >= 2)
double ball_lambda_root(int m, double gamma);

}  // namespace robin
