#pragma once

#include <optional>
#include <string>

#include "robin/corner_constants.hpp"
#include "robin/geometry.hpp"

namespace robin {

// Parsed domain input: exactly one of the members is set.
struct DomainFile {
  std::optional<PlanarPolygon> polygon;
  std::optional<PolyhedralCone> cone;
  std::optional<double> cusp_p;
};

// Reads a JSON domain file of one of the forms
//   {"polygon": {"vertices": [[x,y],...], "weight": [g_1,...]}}
//   {"cone": {"dim": j, "normals": [[...],...]}}
//   {"cusp": {"p": p}}
// Throws std::invalid_argument on schema or validation errors.
DomainFile load_domain_file(const std::string& path);

// {"lower":..., "upper":..., "exact":..., "theta_lower":[...],
//  "theta_upper":[...], "a_opt":...}
std::string cone_bounds_to_json(const ConeBounds& bounds);

}  // namespace robin
