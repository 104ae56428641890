#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "robin/errors.hpp"

namespace robin {

// Simple closed polygonal domain in the plane, counterclockwise, with a
// boundary weight value per edge (edge i runs from vertex i to vertex i+1).
struct PlanarPolygon {
  std::vector<Eigen::Vector2d> vertices;
  std::vector<double> edge_weight;

  // Validates and constructs.  An empty weight list means weight 1 on every
  // edge.  Throws std::invalid_argument on violations.
  static PlanarPolygon create(std::vector<Eigen::Vector2d> vertices,
                              std::vector<double> edge_weight = {});

  double area() const;
  double perimeter() const;
  // Interior half-angle at vertex i (half the full interior opening).
  double half_angle(int i) const;
};

// Convex cone in R^j given as the intersection of half-spaces through the
// origin, {z : z . n_i >= 0} with inward unit face normals n_i.
struct PolyhedralCone {
  int dim = 3;
  std::vector<Eigen::VectorXd> normals;

  static PolyhedralCone create(int dim, std::vector<Eigen::VectorXd> normals);
};

// Boundary singularity classification at a point y, plus the weight G(y).
struct CornerDescriptor {
  enum class Kind {
    SmoothPoint,
    PlanarAngle,        // half-angle alpha, ambient dimension 2
    Wedge,              // half-angle alpha, co-dimension 2 in R^m
    Cone,               // polyhedral cone singularity
    HalfSpaceContaining // model cone contains a half-space
  };
  Kind kind = Kind::SmoothPoint;
  double alpha = 0.0;
  int ambient_dim = 2;
  std::optional<PolyhedralCone> cone;
  double weight = 1.0;
};

// One straight-edge arc of the planar section boundary: for
// phi in [phi_begin, phi_end), b(phi) = d / cos(phi - phi_foot).
struct ProfileArc {
  double phi_begin = 0.0;
  double phi_end = 0.0;
  double d = 0.0;        // perpendicular distance from theta to the edge line
  double phi_foot = 0.0; // direction of the perpendicular foot
  int face = -1;         // index into the cone's normal list
};

// Piecewise description of the radial function b_theta(phi) of the bounded
// planar section P_theta of a 3-dimensional cone.  Arcs are sorted by phi and
// partition one full turn: phi_end of the last arc = phi_begin of the first
// plus 2 pi.
struct SectionProfile {
  Eigen::Vector3d theta;
  Eigen::Vector3d e1, e2; // orthonormal frame of the plane through theta
  std::vector<ProfileArc> arcs;

  double b(double phi) const;
  double b_prime(double phi) const;
  // Index of the arc containing phi (after reduction mod 2 pi).
  const ProfileArc& arc_at(double phi) const;
  double min_distance() const; // min_i d_i = min_phi b(phi)
};

// Strict-interior admissibility tolerance for theta . n.
inline constexpr double kInteriorTol = 1e-9;

// Constructs the section profile of a 3-dimensional cone for a direction
// theta strictly interior to the cross-section.  Throws NotInteriorError if
// some theta . n <= kInteriorTol is violated, UnboundedSectionError if the
// section polygon is unbounded.
SectionProfile section_profile(const PolyhedralCone& cone, const Eigen::Vector3d& theta);

struct DirectionResult {
  Eigen::Vector3d theta;
  double d = 0.0;        // max over theta of min_i d_i
  bool inscribed = false; // all active d_i equal within 1e-8
};

// Direction maximizing the minimal edge distance min_i d_i(theta) of the
// section, found by multi-start Nelder-Mead on a 2-parameter chart of the
// sphere.  Throws OptimizationError when no admissible direction exists,
// UnboundedSectionError when the optimal section is unbounded.
DirectionResult max_min_distance_direction(const PolyhedralCone& cone);

// Perpendicular distance from theta to the line cut by face normal n in the
// plane through theta: d = t / sqrt(1 - t^2) with t = theta . n.
double face_distance(const Eigen::VectorXd& theta, const Eigen::VectorXd& n);

}  // namespace robin
