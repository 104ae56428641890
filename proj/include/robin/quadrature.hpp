#pragma once

#include <functional>
#include <vector>

namespace robin {

// Adaptive Gauss-Legendre integration of f on [a, b] to absolute tolerance
// abs_tol.  Panels are bisected while the GL7 vs GL15 discrepancy exceeds the
// local share of the tolerance.  Throws QuadratureError if the recursion
// depth limit is hit before the tolerance is met.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12, int max_depth = 48);

// Adaptive integration to a tolerance relative to a crude magnitude estimate
// of the integral; for integrands whose overall scale is not known a priori.
double integrate_rel(const std::function<double(double)>& f, double a, double b,
                     double rel_tol = 1e-10, int max_depth = 48);

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace robin
