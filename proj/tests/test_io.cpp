#include <doctest.h>

#include <initializer_list>
#include <stdexcept>

#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "robin/io.hpp"

using namespace robin;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& contents) {
    static int counter = 0;
    path = "io_test_tmp_" + std::to_string(counter++) + ".json";
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("load polygon domain") {
  TempFile f(R"({"polygon": {"vertices": [[0,0],[1,0],[1,1],[0,1]],
                             "weight": [1.0, 2.0, 1.0, 1.0]}})");
  auto d = load_domain_file(f.path);
  REQUIRE(d.polygon.has_value());
  CHECK(!d.cone);
  CHECK(!d.cusp_p);
  CHECK(d.polygon->vertices.size() == 4);
  CHECK(d.polygon->area() == doctest::Approx(1.0));
  CHECK(d.polygon->edge_weight[1] == 2.0);
}

TEST_CASE("polygon weight defaults to one") {
  TempFile f(R"({"polygon": {"vertices": [[0,0],[1,0],[0,1]]}})");
  auto d = load_domain_file(f.path);
  REQUIRE(d.polygon.has_value());
  for (double g : d.polygon->edge_weight) CHECK(g == 1.0);
}

TEST_CASE("load cone domain") {
  TempFile f(R"({"cone": {"dim": 3, "normals": [[1,0,0],[0,1,0],[0,0,1]]}})");
  auto d = load_domain_file(f.path);
  REQUIRE(d.cone.has_value());
  CHECK(d.cone->dim == 3);
  CHECK(d.cone->normals.size() == 3);
}

TEST_CASE("load cusp domain") {
  TempFile f(R"({"cusp": {"p": 1.5}})");
  auto d = load_domain_file(f.path);
  REQUIRE(d.cusp_p.has_value());
  CHECK(*d.cusp_p == 1.5);
}

TEST_CASE("schema and validation errors") {
  CHECK_THROWS_AS(load_domain_file("no_such_file.json"), std::invalid_argument);

  TempFile bad_json("{not json");
  CHECK_THROWS_AS(load_domain_file(bad_json.path), std::invalid_argument);

  TempFile empty("{}");
  CHECK_THROWS_AS(load_domain_file(empty.path), std::invalid_argument);

  TempFile no_verts(R"({"polygon": {}})");
  CHECK_THROWS_AS(load_domain_file(no_verts.path), std::invalid_argument);

  TempFile bad_pair(R"({"polygon": {"vertices": [[0,0],[1,0],[0,1,9]]}})");
  CHECK_THROWS_AS(load_domain_file(bad_pair.path), std::invalid_argument);

  // Clockwise polygon rejected by domain validation.
  TempFile cw(R"({"polygon": {"vertices": [[0,0],[0,1],[1,0]]}})");
  CHECK_THROWS_AS(load_domain_file(cw.path), std::invalid_argument);

  TempFile cone_missing(R"({"cone": {"dim": 3}})");
  CHECK_THROWS_AS(load_domain_file(cone_missing.path), std::invalid_argument);

  // Non-unit normal rejected.
  TempFile bad_cone(R"({"cone": {"dim": 3, "normals": [[2,0,0],[0,1,0],[0,0,1]]}})");
  CHECK_THROWS_AS(load_domain_file(bad_cone.path), std::invalid_argument);
}

TEST_CASE("cone bounds serialization") {
  ConeBounds b;
  b.lower = 3.0;
  b.upper = 3.5;
  b.exact = false;
  b.theta_lower = Eigen::Vector3d(0, 0, 1);
  b.theta_upper = Eigen::Vector3d(0, 1, 0);
  b.a_opt = 1.7;
  auto j = nlohmann::json::parse(cone_bounds_to_json(b));
  CHECK(j["lower"] == 3.0);
  CHECK(j["upper"] == 3.5);
  CHECK(j["exact"] == false);
  CHECK(j["a_opt"] == 1.7);
  REQUIRE(j["theta_lower"].size() == 3);
  CHECK(j["theta_lower"][2] == 1.0);
  CHECK(j["theta_upper"][1] == 1.0);
}
