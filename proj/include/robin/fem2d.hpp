#pragma once

#include <Eigen/Dense>
#include <array>
#include <iosfwd>
#include <optional>
#include <vector>

#include "robin/geometry.hpp"

namespace robin {

struct BoundaryEdge {
  int a = 0, b = 0;
  double g = 1.0;      // boundary weight on this edge
  int parent_edge = -1; // polygon edge the segment lies on
};

// Conforming triangle mesh of a polygon.
struct Mesh {
  std::vector<Eigen::Vector2d> nodes;
  std::vector<std::array<int, 3>> triangles;
  std::vector<BoundaryEdge> boundary_edges;
  double h_max = 0.0;      // longest edge overall
  double h_boundary = 0.0; // longest boundary edge

  double min_angle() const; // degrees
};

struct EigResult {
  double lambda = 0.0;
  double residual = 0.0;
  int iterations = 0;
  int dof = 0;
};

// Triangulates the polygon with target element size h.  When boundary_layer
// is set to gamma, sizes are graded so boundary elements resolve the
// exp(-gamma dist) layer: h <= min(h, 0.2/gamma) within distance 3/gamma of
// the boundary, growing linearly outside.  Throws MeshError on failure.
Mesh mesh_polygon(const PlanarPolygon& polygon, double h,
                  std::optional<double> boundary_layer = std::nullopt);

// Smallest eigenvalue of the generalized problem (A - gamma B) u = lambda M u
// with P1 stiffness A, mass M, and weighted boundary mass B, by shift-and-
// invert inverse iteration on a symmetric factorization.  The computed
// eigenvalue is verified to be the lowest one through the factorization
// inertia.
EigResult principal_eigenvalue(const Mesh& mesh, double gamma);

struct SweepRow {
  double gamma = 0.0;
  double lambda = 0.0;
  double ratio = 0.0; // lambda / gamma^2
  int dof = 0;
  double residual = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double c_est = 0.0; // -extrapolated limit of lambda/gamma^2
};

// Remeshes with boundary-layer grading per gamma, solves, and extrapolates
// lambda/gamma^2 linearly in 1/gamma from the two largest gamma values.
SweepResult gamma_sweep(const PlanarPolygon& polygon, const std::vector<double>& gammas,
                        double h);

// Flat text interchange: node count then "x y" lines, triangle count then
// "i j k" lines, boundary edge count then "i j g" lines.
void write_mesh(const Mesh& mesh, std::ostream& os);
Mesh read_mesh(std::istream& is);

}  // namespace robin
