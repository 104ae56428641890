#include "robin/io.hpp"

#include <fstream>

#include <json.hpp>

namespace robin {

DomainFile load_domain_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open domain file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
  }

  DomainFile out;
  if (j.contains("polygon")) {
    const auto& p = j["polygon"];
    if (!p.contains("vertices"))
      throw std::invalid_argument("polygon: missing \"vertices\"");
    std::vector<Eigen::Vector2d> verts;
    for (const auto& v : p["vertices"]) {
      if (!v.is_array() || v.size() != 2)
        throw std::invalid_argument("polygon: vertices must be [x, y] pairs");
      verts.emplace_back(v[0].get<double>(), v[1].get<double>());
    }
    std::vector<double> weight;
    if (p.contains("weight"))
      for (const auto& g : p["weight"]) weight.push_back(g.get<double>());
    out.polygon = PlanarPolygon::create(std::move(verts), std::move(weight));
  } else if (j.contains("cone")) {
    const auto& c = j["cone"];
    if (!c.contains("dim") || !c.contains("normals"))
      throw std::invalid_argument("cone: need \"dim\" and \"normals\"");
    int dim = c["dim"].get<int>();
    std::vector<Eigen::VectorXd> normals;
    for (const auto& n : c["normals"]) {
      Eigen::VectorXd v(n.size());
      for (std::size_t k = 0; k < n.size(); ++k) v[k] = n[k].get<double>();
      normals.push_back(v);
    }
    out.cone = PolyhedralCone::create(dim, std::move(normals));
  } else if (j.contains("cusp")) {
    out.cusp_p = j["cusp"].at("p").get<double>();
  } else {
    throw std::invalid_argument("domain file must contain \"polygon\", \"cone\", or \"cusp\"");
  }
  return out;
}

std::string cone_bounds_to_json(const ConeBounds& b) {
  nlohmann::json j;
  j["lower"] = b.lower;
  j["upper"] = b.upper;
  j["exact"] = b.exact;
  j["theta_lower"] = {b.theta_lower.x(), b.theta_lower.y(), b.theta_lower.z()};
  j["theta_upper"] = {b.theta_upper.x(), b.theta_upper.y(), b.theta_upper.z()};
  j["a_opt"] = b.a_opt;
  return j.dump(2);
}

}  // namespace robin
