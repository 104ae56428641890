#include <doctest.h>

#include <initializer_list>
#include <stdexcept>

#include <cmath>
#include <random>

#include "robin/corner_constants.hpp"

using namespace robin;

namespace {

const double kPi = std::acos(-1.0);

PolyhedralCone octant() {
  std::vector<Eigen::VectorXd> n(3);
  for (int i = 0; i < 3; ++i) {
    n[i] = Eigen::VectorXd::Zero(3);
    n[i][i] = 1.0;
  }
  return PolyhedralCone::create(3, n);
}

PolyhedralCone circular_cone(double alpha, int faces) {
  std::vector<Eigen::VectorXd> n;
  for (int k = 0; k < faces; ++k) {
    double ph = 2.0 * kPi * k / faces;
    Eigen::VectorXd v(3);
    v << -std::cos(alpha) * std::cos(ph), -std::cos(alpha) * std::sin(ph), std::sin(alpha);
    n.push_back(v);
  }
  return PolyhedralCone::create(3, n);
}

}  // namespace

TEST_CASE("c2d values") {
  CHECK(c2d(kPi / 4) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(c2d(kPi / 6) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(c2d(kPi / 2) == doctest::Approx(1.0));
  CHECK(c2d(3 * kPi / 4) == doctest::Approx(1.0));
  CHECK_THROWS_AS(c2d(0.0), std::domain_error);
  CHECK_THROWS_AS(c2d(kPi), std::domain_error);
  CHECK(smooth_constant() == 1.0);
}

TEST_CASE("sigma closed form matches intermediates route") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ub(0.2, 5.0), up(-3.0, 3.0);
  for (int k = 0; k < 200; ++k) {
    double b = ub(rng), bp = up(rng);
    double s = sigma_point(b, bp);
    CHECK(sigma_point_via_intermediates(b, bp) == doctest::Approx(s).epsilon(1e-12));
    Eigen::VectorXd g(1);
    g << bp;
    CHECK(sigma_codim_j_point(b, g) == doctest::Approx(s).epsilon(1e-10));
  }
}

TEST_CASE("octant sigma profile") {
  auto prof = section_profile(octant(), Eigen::Vector3d(1, 1, 1).normalized());
  auto sp = sigma_codim3(prof);
  // d = 1/sqrt(2) on every arc, so sigma^2 = 3.
  for (double s : sp.arc_sigma) CHECK(s == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK(sp.sup_sigma() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  // Constant sigma: weighted mean equals it.
  CHECK(weighted_mean_sigma(prof) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-10));
}

TEST_CASE("sigma constant on circular sections") {
  double alpha = kPi / 5;
  auto prof = section_profile(circular_cone(alpha, 256), Eigen::Vector3d::UnitZ());
  auto sp = sigma_codim3(prof);
  for (double s : sp.arc_sigma)
    CHECK(s == doctest::Approx(1.0 / std::sin(alpha)).epsilon(1e-3));
}

TEST_CASE("sigma profile consistent with pointwise formula") {
  auto prof = section_profile(octant(), Eigen::Vector3d(1.2, 0.8, 1.0).normalized());
  auto sp = sigma_codim3(prof);
  for (double phi = 0.05; phi < 2.0 * kPi; phi += 0.37) {
    double expect = sigma_point(prof.b(phi), prof.b_prime(phi));
    CHECK(sp.sigma(phi) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("weighted mean sigma bounded by arc extremes") {
  auto prof = section_profile(octant(), Eigen::Vector3d(2.0, 1.0, 1.4).normalized());
  auto sp = sigma_codim3(prof);
  double lo = *std::min_element(sp.arc_sigma.begin(), sp.arc_sigma.end());
  double hi = sp.sup_sigma();
  double mean = weighted_mean_sigma(prof);
  CHECK(mean >= lo - 1e-12);
  CHECK(mean <= hi + 1e-12);
}

TEST_CASE("bounds_codim3 octant is exact") {
  auto b = bounds_codim3(octant());
  CHECK(b.lower == doctest::Approx(3.0).epsilon(1e-7));
  CHECK(b.upper == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(b.exact);
  CHECK(b.a_opt == doctest::Approx(std::sqrt(3.0)).epsilon(1e-7));
}

TEST_CASE("bounds_codim3 circular cone") {
  auto b = bounds_codim3(circular_cone(kPi / 6, 256));
  CHECK(b.lower == doctest::Approx(4.0).epsilon(1e-3));
  CHECK(b.upper == doctest::Approx(4.0).epsilon(1e-3));
}

TEST_CASE("bounds_codim3 incircle cone flagged exact") {
  double t = 0.5;
  double s = std::sqrt(1.0 - t * t);
  std::vector<Eigen::VectorXd> n;
  for (double ph : {0.3, 2.1, 4.4}) {
    Eigen::VectorXd v(3);
    v << s * std::cos(ph), s * std::sin(ph), t;
    n.push_back(v);
  }
  auto b = bounds_codim3(PolyhedralCone::create(3, n));
  CHECK(b.exact);
  double d = t / s;
  CHECK(b.upper == doctest::Approx(1.0 + 1.0 / (d * d)).epsilon(1e-6));
}

TEST_CASE("bounds_codim3 generic cone keeps ordering") {
  std::vector<Eigen::VectorXd> n(3);
  n[0] = Eigen::Vector3d(1.0, 0.0, 0.2).normalized();
  n[1] = Eigen::Vector3d(0.1, 1.0, 0.0).normalized();
  n[2] = Eigen::Vector3d(0.0, 0.15, 1.0).normalized();
  auto b = bounds_codim3(PolyhedralCone::create(3, n));
  CHECK(b.lower > 1.0);
  CHECK(b.lower <= b.upper + 1e-9);
  CHECK(b.a_opt * b.a_opt == doctest::Approx(b.lower).epsilon(1e-12));
}

TEST_CASE("bounds_codim_j constant field") {
  for (int j : {3, 4}) {
    double b0 = 0.8;
    SampledSphereField f;
    f.value = [b0](const Eigen::VectorXd&) { return b0; };
    f.gradient = [j](const Eigen::VectorXd&) {
      return Eigen::VectorXd::Zero(j - 1).eval();
    };
    auto bd = bounds_codim_j(f, j);
    double expect = 1.0 + 1.0 / (b0 * b0);
    CHECK(bd.lower == doctest::Approx(expect).epsilon(1e-10));
    CHECK(bd.upper == doctest::Approx(expect).epsilon(1e-10));
    CHECK(bd.exact);
  }
}

TEST_CASE("bounds_codim_j four-orthant section") {
  // Cone {z_i >= 0} in R^4 viewed from theta = (1,1,1,1)/2.  In a tangent
  // orthonormal basis of theta the section radius is
  // b(phi) = d / max_i (phi . c_i) with d = 1/sqrt(3) and unit c_i.
  const double d = 1.0 / std::sqrt(3.0);
  Eigen::Matrix<double, 3, 4> W;
  W.row(0) << 1, -1, 0, 0;
  W.row(1) << 1, 1, -2, 0;
  W.row(2) << 1, 1, 1, -3;
  W.row(0) /= std::sqrt(2.0);
  W.row(1) /= std::sqrt(6.0);
  W.row(2) /= std::sqrt(12.0);
  std::vector<Eigen::Vector3d> c(4);
  for (int i = 0; i < 4; ++i) {
    c[i] = -(2.0 / std::sqrt(3.0)) * W.col(i);
    CHECK(c[i].norm() == doctest::Approx(1.0).epsilon(1e-12));
  }

  auto active = [&](const Eigen::VectorXd& p) {
    int best = 0;
    double dot = -2.0;
    for (int i = 0; i < 4; ++i) {
      double t = p.dot(c[i]);
      if (t > dot) {
        dot = t;
        best = i;
      }
    }
    return best;
  };
  SampledSphereField f;
  f.value = [&](const Eigen::VectorXd& p) { return d / p.dot(c[active(p)]); };
  f.gradient = [&](const Eigen::VectorXd& p) {
    const Eigen::Vector3d& ci = c[active(p)];
    double t = p.dot(ci);
    Eigen::Vector3d tang = ci - t * Eigen::Vector3d(p);
    return Eigen::VectorXd(-d / (t * t) * tang);
  };

  auto bd = bounds_codim_j(f, 4, 64);
  // Conical faces: Sigma is identically sqrt(1 + 1/d^2) = 2, so both bounds
  // collapse to 4.
  CHECK(bd.lower == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(bd.upper == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(bd.exact);
}

TEST_CASE("bounds_codim_j rejects inconsistent gradients") {
  SampledSphereField f;
  f.value = [](const Eigen::VectorXd& p) { return 2.0 + p[0]; };
  f.gradient = [](const Eigen::VectorXd& p) {
    // Deliberately wrong sign everywhere.
    Eigen::VectorXd e = Eigen::VectorXd::Zero(p.size());
    e[0] = -1.0;
    return Eigen::VectorXd(e - e.dot(p) * p);
  };
  CHECK_THROWS_AS(bounds_codim_j(f, 3), InconsistentGradientError);
}

TEST_CASE("domain_constant square and L-shape") {
  std::vector<CornerDescriptor> sq(4);
  for (auto& c : sq) {
    c.kind = CornerDescriptor::Kind::PlanarAngle;
    c.alpha = kPi / 4;
  }
  auto r = domain_constant(sq);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));

  // L-shape: five convex corners plus one reflex corner of half-angle 3pi/4.
  std::vector<CornerDescriptor> ell(6);
  for (auto& c : ell) {
    c.kind = CornerDescriptor::Kind::PlanarAngle;
    c.alpha = kPi / 4;
  }
  ell[3].alpha = 3 * kPi / 4;
  r = domain_constant(ell);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("domain_constant weight dominates geometry") {
  std::vector<CornerDescriptor> cs(2);
  cs[0].kind = CornerDescriptor::Kind::PlanarAngle;
  cs[0].alpha = kPi / 4;
  cs[0].weight = 1.0;
  cs[1].kind = CornerDescriptor::Kind::SmoothPoint;
  cs[1].weight = 2.0;
  auto r = domain_constant(cs);
  CHECK(r.value == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(r.argmax == 1);

  // Uniform rescaling of the weights scales the value by the square and
  // keeps the argmax.
  for (auto& c : cs) c.weight *= 3.0;
  auto r2 = domain_constant(cs);
  CHECK(r2.value == doctest::Approx(9.0 * r.value).epsilon(1e-12));
  CHECK(r2.argmax == r.argmax);
}

TEST_CASE("domain_constant cone corner uses bracket midpoint") {
  CornerDescriptor c;
  c.kind = CornerDescriptor::Kind::Cone;
  c.cone = octant();
  c.ambient_dim = 3;
  auto r = domain_constant({c});
  CHECK(r.value == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(r.bracket_lower <= r.value + 1e-9);
  CHECK(r.bracket_upper >= r.value - 1e-9);
}

TEST_CASE("domain_constant requires a positive weight") {
  CornerDescriptor c;
  c.weight = 0.0;
  CHECK_THROWS_AS(domain_constant({c}), std::invalid_argument);
}
