#include "robin/model_solvers.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "robin/special_functions.hpp"

namespace robin {

namespace {
const double kPi = std::acos(-1.0);
}

double model_lambda(const ModelDomain& domain, double gamma) {
  if (!(gamma > 0.0)) throw std::domain_error("model_lambda: gamma must be positive");
  return std::visit(
      [&](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, HalfLine>) {
          return -gamma * gamma;
        } else if constexpr (std::is_same_v<T, Ball>) {
          return ball_lambda_root(d.m, gamma);
        } else if constexpr (std::is_same_v<T, Parallelepiped>) {
          if (d.half_sides.empty())
            throw std::domain_error("model_lambda: parallelepiped needs half-sides");
          double sum = 0.0;
          for (double l : d.half_sides) {
            if (!(l > 0.0)) throw std::domain_error("model_lambda: half-sides must be positive");
            double mu = mu_tanh_root(gamma * l).root;
            sum += mu * mu / (l * l);
          }
          return -sum;
        } else if constexpr (std::is_same_v<T, ModelPlanarAngle>) {
          if (!(d.alpha > 0.0) || !(d.alpha < kPi))
            throw std::domain_error("model_lambda: angle must lie in (0, pi)");
          if (d.alpha >= 0.5 * kPi) return -gamma * gamma;
          double s = std::sin(d.alpha);
          return -gamma * gamma / (s * s);
        } else {
          // HalfSpaceCone
          return -gamma * gamma;
        }
      },
      domain);
}

double cone_rescale(double lambda_at_one, double gamma) {
  if (!(gamma > 0.0)) throw std::domain_error("cone_rescale: gamma must be positive");
  return gamma * gamma * lambda_at_one;
}

double cusp_upper_exponent(double p) {
  if (!(p > 1.0)) throw std::domain_error("cusp_upper_exponent: p must exceed 1");
  if (p >= 2.0) return std::numeric_limits<double>::infinity();
  return 2.0 / (2.0 - p);
}

}  // namespace robin
