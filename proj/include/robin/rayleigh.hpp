#pragma once

#include <span>
#include <vector>

#include "robin/geometry.hpp"

namespace robin {

// Smooth plateau cutoff: 1 on [-1/2, 1/2], 0 outside [-1, 1], quintic
// smoothstep in between.  Integrals of psi^2 and psi'^2 over [-1, 1] are
// computed once.
struct Cutoff {
  double operator()(double s) const;
  double derivative(double s) const;
  static double integral_sq();       // int psi^2
  static double integral_deriv_sq(); // int psi'^2
};

// Rayleigh quotient of the cone test function exp(-a xi) at gamma = 1:
//   a^2 - 2a * integral(b^2 sigma)/integral(b^2).
double closed_form_cone_quotient(double a, const SectionProfile& profile);

// Closed-form quotient of the sliding-strip test function
// exp(-gamma y) chi_tau(x gamma - tau) on the half-plane:
//   gamma^2 (-1 + int(psi'^2) / (int(psi^2) + 2(tau-1))).
double strip_chi_quotient(double tau, double gamma);

// Same quantity evaluated by 2D quadrature of the Rayleigh quotient on the
// half-plane; agrees with the closed form to quadrature accuracy.
double strip_chi_quotient_quadrature(double tau, double gamma);

// Rayleigh quotient of v = exp(-gamma x^{2-p}) on the power-cusp domain
// {x > 0, |y| < x^p}.
double cusp_quotient(double p, double gamma);

struct CuspScanResult {
  std::vector<double> gammas;
  std::vector<double> quotients;
  double exponent = 0.0; // least-squares slope of log(-J) against log(gamma)
};

// Sweeps the cusp quotient over a gamma grid and fits the growth exponent.
// Requires p in (1, 2), at least 5 gamma values, all >= 5.
CuspScanResult cusp_scan(double p, const std::vector<double>& gammas);

// Left-hand side of the half-line inequality
//   int |v'|^2 - gamma v(0)^2 + gamma^2 int |v|^2
// for a piecewise-linear v given by samples on an increasing grid.
// Non-negative for every H^1 function vanishing at the right end.
double halfline_inequality_margin(std::span<const double> x, std::span<const double> v,
                                  double gamma);

}  // namespace robin
