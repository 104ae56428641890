#pragma once

#include <variant>
#include <vector>

namespace robin {

// Separable model domains with closed-form (or transcendental) principal
// Robin eigenvalues.
struct HalfLine {};
struct Ball {
  int m = 2;
};
struct Parallelepiped {
  std::vector<double> half_sides;
};
struct ModelPlanarAngle {
  double alpha = 0.0; // half-angle, in (0, pi)
};
struct HalfSpaceCone {}; // any cone containing a half-space

using ModelDomain = std::variant<HalfLine, Ball, Parallelepiped, ModelPlanarAngle, HalfSpaceCone>;

// Exact bottom of the Robin spectrum for the model domain at parameter gamma.
double model_lambda(const ModelDomain& domain, double gamma);

// Homothety scaling of an infinite cone: Lambda(K; gamma) = gamma^2 Lambda(K; 1).
double cone_rescale(double lambda_at_one, double gamma);

// Growth order of |Lambda| for the power cusp with exponent p: the quadratic
// law is replaced by |Lambda| >~ gamma^{2/(2-p)} for 1 < p < 2, and by a
// faster-than-polynomial blowup (returned as +infinity) for p >= 2.
double cusp_upper_exponent(double p);

}  // namespace robin
