#include "robin/quadrature.hpp"

#include <cmath>

#include "robin/errors.hpp"

namespace robin {

namespace {

// 15-point Gauss-Legendre nodes/weights on [-1,1] (symmetric half listed).
const double kx15[8] = {0.0,
                        0.2011940939974345,
                        0.3941513470775634,
                        0.5709721726085388,
                        0.7244177313601700,
                        0.8482065834104272,
                        0.9372733924007060,
                        0.9879925180204854};
const double kw15[8] = {0.2025782419255613,
                        0.1984314853271116,
                        0.1861610000155622,
                        0.1662692058169939,
                        0.1395706779261543,
                        0.1071592204671719,
                        0.0703660474881081,
                        0.0307532419961173};

// 7-point rule.
const double kx7[4] = {0.0, 0.4058451513773972, 0.7415311855993945, 0.9491079123427585};
const double kw7[4] = {0.4179591836734694, 0.3818300505051189, 0.2797053914892766, 0.1294849661688697};

struct Panel {
  double a, b;
  int depth;
};

void gl_pair(const std::function<double(double)>& f, double a, double b,
             double& q7, double& q15) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  q7 = kw7[0] * f(c);
  for (int i = 1; i < 4; ++i) q7 += kw7[i] * (f(c - h * kx7[i]) + f(c + h * kx7[i]));
  q7 *= h;
  q15 = kw15[0] * f(c);
  for (int i = 1; i < 8; ++i) q15 += kw15[i] * (f(c - h * kx15[i]) + f(c + h * kx15[i]));
  q15 *= h;
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double tol, double floor, int depth, int max_depth) {
  double q7, q15;
  gl_pair(f, a, b, q7, q15);
  // The floor stops subdivision once the panel error is at the roundoff
  // level of the whole integral; halving the tolerance forever would
  // otherwise chase noise past the depth limit.
  if (std::abs(q15 - q7) <= std::max(tol, floor) ||
      b - a < 1e-14 * std::abs(a) + 1e-300)
    return q15;
  if (depth >= max_depth)
    throw QuadratureError("adaptive Gauss-Legendre: depth limit reached");
  double c = 0.5 * (a + b);
  return adapt(f, a, c, 0.5 * tol, floor, depth + 1, max_depth) +
         adapt(f, c, b, 0.5 * tol, floor, depth + 1, max_depth);
}

double roundoff_floor(const std::function<double(double)>& f, double a, double b) {
  double q7, q15;
  gl_pair(f, a, b, q7, q15);
  return 1e-15 * std::abs(q15);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  return adapt(f, a, b, abs_tol, roundoff_floor(f, a, b), 0, max_depth);
}

double integrate_rel(const std::function<double(double)>& f, double a, double b,
                     double rel_tol, int max_depth) {
  if (a == b) return 0.0;
  // Crude scale from a coarse midpoint rule on |f|.
  double scale = 0.0;
  const int n = 64;
  const double h = (b - a) / n;
  for (int i = 0; i < n; ++i) scale += std::abs(f(a + (i + 0.5) * h));
  scale *= std::abs(h);
  if (scale == 0.0) scale = 1e-300;
  return adapt(f, a, b, rel_tol * scale, std::max(roundoff_floor(f, a, b), 1e-16 * scale), 0,
               max_depth);
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  const double pi = std::acos(-1.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev-like initial guess, then Newton on P_n.
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * x * p1 - k * p2) / (k + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

}  // namespace robin
