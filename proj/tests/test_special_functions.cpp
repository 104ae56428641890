#include <doctest.h>

#include <initializer_list>
#include <stdexcept>

#include <cmath>
#include <limits>

#include "robin/special_functions.hpp"

using namespace robin;

namespace {

// Independent bisection oracle for mu tanh(mu) = c on a fixed bracket.
double mu_tanh_oracle(double c, double lo, double hi) {
  for (int k = 0; k < 200; ++k) {
    double mid = 0.5 * (lo + hi);
    if (mid * std::tanh(mid) < c)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Oracle for x coth(x) = c.
double x_coth_oracle(double c, double lo, double hi) {
  for (int k = 0; k < 200; ++k) {
    double mid = 0.5 * (lo + hi);
    if (mid / std::tanh(mid) < c)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("mu_tanh_root basic values") {
  CHECK(mu_tanh_root(0.0).root == 0.0);

  double mu1 = mu_tanh_root(1.0).root;
  CHECK(mu1 == doctest::Approx(mu_tanh_oracle(1.0, 0.0, 2.0)).epsilon(1e-12));
  CHECK(mu1 == doctest::Approx(1.19968).epsilon(1e-5));

  // Large argument: tanh saturates, root approaches c.
  CHECK(mu_tanh_root(10.0).root == doctest::Approx(10.0).epsilon(1e-7));
}

TEST_CASE("mu_tanh_root monotonicity and bracket") {
  double prev = 0.0;
  for (double c : {0.1, 0.3, 1.0, 2.0, 5.0, 20.0, 100.0}) {
    auto r = mu_tanh_root(c);
    CHECK(r.root > prev);
    CHECK(r.root > 0.5 * std::sqrt(c));
    CHECK(r.root < std::max(2.0, c + 1.0));
    CHECK(std::abs(r.residual) <= 1e-12 * std::max(1.0, r.root));
    CHECK(r.iterations <= 200);
    prev = r.root;
  }
}

TEST_CASE("bessel_ratio half-integer closed form") {
  // I_{3/2}/I_{1/2} = coth x - 1/x.
  for (double x : {0.5, 1.0, 2.0, 5.0, 20.0}) {
    double expected = 1.0 / std::tanh(x) - 1.0 / x;
    CHECK(bessel_ratio(1.5, x) == doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK(bessel_ratio(1.5, 2.0) == doctest::Approx(0.537315).epsilon(1e-5));
}

TEST_CASE("bessel_ratio limits") {
  // Small argument: ratio ~ x / (2 nu).
  CHECK(bessel_ratio(1.0, 1e-4) == doctest::Approx(5e-5).epsilon(1e-8));
  CHECK(std::abs(bessel_ratio(1.0, 1e-4) - 5e-5) < 1e-12);
  // Large argument: ratio -> 1.
  // I_1/I_0 at large x behaves like 1 - 1/(2x).
  CHECK(std::abs(bessel_ratio(1.0, 50.0) - 1.0) < 2e-2);
  CHECK(bessel_ratio(1.0, 50.0) == doctest::Approx(1.0 - 1.0 / 100.0).epsilon(1e-4));
  CHECK_THROWS_AS(bessel_ratio(1.0, -1.0), std::domain_error);
  CHECK_THROWS_AS(bessel_ratio(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(bessel_ratio(0.2, 1.0), std::domain_error);
}

TEST_CASE("bessel_ratio three-term recurrence") {
  // 1/r_nu - r_{nu+1} = 2 nu / x.
  for (double nu : {0.5, 1.0, 2.5, 7.0}) {
    for (double x : {0.1, 1.0, 3.0, 30.0}) {
      double lhs = 1.0 / bessel_ratio(nu, x) - bessel_ratio(nu + 1.0, x);
      CHECK(lhs == doctest::Approx(2.0 * nu / x).epsilon(1e-10));
    }
  }
}

TEST_CASE("ball_lambda_root m=1") {
  double mu = mu_tanh_oracle(1.0, 0.0, 2.0);
  CHECK(ball_lambda_root(1, 1.0) == doctest::Approx(-mu * mu).epsilon(1e-12));
  CHECK(ball_lambda_root(1, 1.0) == doctest::Approx(-1.43923).epsilon(1e-5));
}

TEST_CASE("ball_lambda_root m=3 against x coth x oracle") {
  // x I_{3/2}/I_{1/2} = x coth x - 1 = gamma, so x coth x = 2 at gamma = 1.
  double x = x_coth_oracle(2.0, 0.5, 4.0);
  CHECK(x == doctest::Approx(1.9150).epsilon(1e-4));
  CHECK(ball_lambda_root(3, 1.0) == doctest::Approx(-x * x).epsilon(1e-10));
}

TEST_CASE("ball_lambda_root large-gamma asymptote") {
  for (int m : {1, 2, 3, 5}) {
    double lam = ball_lambda_root(m, 100.0);
    CHECK(lam / 1e4 == doctest::Approx(-1.0).epsilon(0.05));
  }
  CHECK_THROWS_AS(ball_lambda_root(0, 1.0), std::domain_error);
}

TEST_CASE("ball ratio rises toward -1 from below") {
  for (int m : {1, 2, 3}) {
    double prev = -std::numeric_limits<double>::infinity();
    for (double g : {1.0, 2.0, 5.0, 10.0, 30.0, 100.0}) {
      double ratio = ball_lambda_root(m, g) / (g * g);
      // Non-strict: the gap below -1 closes to machine zero by gamma ~ 30.
      CHECK(ratio >= prev);
      CHECK(ratio < -1.0 + 1e-9);
      prev = ratio;
    }
  }
}
