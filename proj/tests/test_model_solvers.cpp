#include <doctest.h>

#include <initializer_list>
#include <stdexcept>

#include <cmath>
#include <limits>

#include "robin/model_solvers.hpp"
#include "robin/special_functions.hpp"

using namespace robin;

namespace {

const double kPi = std::acos(-1.0);

double mu_tanh_oracle(double c) {
  double lo = 0.0, hi = std::max(2.0, c + 1.0);
  for (int k = 0; k < 200; ++k) {
    double mid = 0.5 * (lo + hi);
    if (mid * std::tanh(mid) < c)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("half line") {
  CHECK(model_lambda(HalfLine{}, 1.0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(model_lambda(HalfLine{}, 3.0) == doctest::Approx(-9.0).epsilon(1e-14));
  CHECK_THROWS_AS(model_lambda(HalfLine{}, 0.0), std::domain_error);
}

TEST_CASE("unit square as parallelepiped") {
  // (0,1)^2 = product of two intervals of half-side 1/2:
  // Lambda = -2 (2 mu)^2 with mu tanh(mu) = gamma/2.
  double mu = mu_tanh_oracle(0.5);
  double expect = -8.0 * mu * mu;
  CHECK(model_lambda(Parallelepiped{{0.5, 0.5}}, 1.0) ==
        doctest::Approx(expect).epsilon(1e-12));
  CHECK(expect == doctest::Approx(-4.76420).epsilon(1e-5));
}

TEST_CASE("parallelepiped approaches -m gamma^2") {
  for (int m : {1, 2, 3}) {
    std::vector<double> halves(m, 0.5);
    double lam = model_lambda(Parallelepiped{halves}, 100.0);
    CHECK(lam / 1e4 == doctest::Approx(-static_cast<double>(m)).epsilon(0.02));
  }
}

TEST_CASE("planar angle") {
  CHECK(model_lambda(ModelPlanarAngle{kPi / 4}, 2.0) == doctest::Approx(-8.0).epsilon(1e-12));
  CHECK(model_lambda(ModelPlanarAngle{3 * kPi / 4}, 1.0) == doctest::Approx(-1.0).epsilon(1e-12));
  // Continuity across alpha = pi/2.
  double below = model_lambda(ModelPlanarAngle{kPi / 2 - 1e-9}, 1.0);
  double above = model_lambda(ModelPlanarAngle{kPi / 2}, 1.0);
  CHECK(below == doctest::Approx(above).epsilon(1e-6));
  CHECK_THROWS_AS(model_lambda(ModelPlanarAngle{0.0}, 1.0), std::domain_error);
}

TEST_CASE("half-space cone") {
  CHECK(model_lambda(HalfSpaceCone{}, 2.0) == doctest::Approx(-4.0).epsilon(1e-14));
}

TEST_CASE("ball model matches special function") {
  for (int m : {1, 2, 3}) {
    for (double g : {0.5, 1.0, 4.0}) {
      CHECK(model_lambda(Ball{m}, g) == doctest::Approx(ball_lambda_root(m, g)).epsilon(1e-12));
    }
  }
  CHECK(model_lambda(Ball{2}, 100.0) <= -1e4 * 0.95);
}

TEST_CASE("cone rescale") {
  CHECK(cone_rescale(-3.0, 2.0) == doctest::Approx(-12.0).epsilon(1e-14));
  CHECK(cone_rescale(-1.0, 0.5) == doctest::Approx(-0.25).epsilon(1e-14));
}

TEST_CASE("cusp upper exponent") {
  CHECK(cusp_upper_exponent(1.5) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(cusp_upper_exponent(1.0 + 1e-6) == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(std::isinf(cusp_upper_exponent(2.0)));
  CHECK(std::isinf(cusp_upper_exponent(3.0)));
  CHECK_THROWS_AS(cusp_upper_exponent(1.0), std::domain_error);
  CHECK_THROWS_AS(cusp_upper_exponent(0.5), std::domain_error);
}
