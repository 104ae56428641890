#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "robin/geometry.hpp"

namespace robin {

// C_y for a planar corner of interior half-angle alpha (also the wedge case
// of co-dimension 2 in any ambient dimension).
double c2d(double alpha);

// C_y at a smooth boundary point, and for any model cone containing a
// half-space.
double smooth_constant();

// Boundary area-element factor sqrt(1 + 1/b^2 + b'^2/b^4).
double sigma_point(double b, double b_prime);

// Same quantity computed through the co-dimension-j intermediates
// (zeta, Z, Psi) specialized to scalar data; agrees with sigma_point.
double sigma_point_via_intermediates(double b, double b_prime);

// Per-arc closed form of sigma for a straight-edge section profile:
// sigma^2 = 1 + 1/d_i^2, constant on each arc.
struct SigmaProfile {
  SectionProfile profile;
  std::vector<double> arc_sigma; // one value per profile arc

  double sigma(double phi) const;
  double sup_sigma() const;
};

SigmaProfile sigma_codim3(const SectionProfile& profile);

struct ConeBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool exact = false;
  Eigen::Vector3d theta_lower = Eigen::Vector3d::Zero();
  Eigen::Vector3d theta_upper = Eigen::Vector3d::Zero();
  double a_opt = 0.0; // optimal exponential decay rate at theta_lower
};

struct ThetaSearchConfig {
  int starts = 8;
  int max_iter = 400;
  double quad_tol = 1e-10;
};

// Mean of sigma over the section weighted by b^2:
//   integral(b^2 sigma) / integral(b^2), computed arc by arc.
double weighted_mean_sigma(const SectionProfile& profile, double quad_tol = 1e-10);

// Two-sided bracket for C_y of a 3-dimensional polyhedral cone:
//   lower = sup_theta (integral(b^2 sigma)/integral(b^2))^2,
//   upper = inf_theta sup_phi sigma^2.
ConeBounds bounds_codim3(const PolyhedralCone& cone, const ThetaSearchConfig& cfg = {});

// Scalar field on the sphere S^{j-2} (points are unit vectors in R^{j-1})
// with its tangential gradient in ambient coordinates.
struct SampledSphereField {
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
};

// Generalized area-element factor Sigma at a point of S^{j-2}, computed from
// b and its tangential gradient through the zeta/Z/Psi intermediates.
double sigma_codim_j_point(double b, const Eigen::VectorXd& tangent_gradient);

// One-direction bracket for a cone of co-dimension j >= 3 from a sampled
// section radius field:
//   lower = (integral(b^{j-1} Sigma)/integral(b^{j-1}))^2,
//   upper = sup Sigma^2 over the sample grid.
// Supported sphere dimensions: j = 3 (circle) and j = 4 (2-sphere).
ConeBounds bounds_codim_j(const SampledSphereField& field, int j, int grid_n = 96);

struct DomainConstant {
  double value = 0.0;          // sup over corners of G(y)^2 C_y
  std::size_t argmax = 0;      // index of the attaining corner
  double bracket_lower = 0.0;  // bracket of the attaining corner's G^2 C_y
  double bracket_upper = 0.0;
};

// C for a domain described by its boundary singularities.  Cone corners
// contribute the midpoint of their bracket; the bracket of the winning
// corner is reported alongside.
DomainConstant domain_constant(const std::vector<CornerDescriptor>& corners);

}  // namespace robin
