#include "robin/rayleigh.hpp"

#include <cmath>
#include <stdexcept>

#include "robin/corner_constants.hpp"
#include "robin/quadrature.hpp"

namespace robin {

namespace {

double smoothstep5(double t) { return t * t * t * (10.0 + t * (-15.0 + 6.0 * t)); }
double smoothstep5_deriv(double t) { return 30.0 * t * t * (1.0 - t) * (1.0 - t); }

}  // namespace

double Cutoff::operator()(double s) const {
  double a = std::abs(s);
  if (a <= 0.5) return 1.0;
  if (a >= 1.0) return 0.0;
  return 1.0 - smoothstep5(2.0 * a - 1.0);
}

double Cutoff::derivative(double s) const {
  double a = std::abs(s);
  if (a <= 0.5 || a >= 1.0) return 0.0;
  double d = -2.0 * smoothstep5_deriv(2.0 * a - 1.0);
  return s > 0 ? d : -d;
}

double Cutoff::integral_sq() {
  static const double value = [] {
    Cutoff psi;
    return integrate([&](double s) { return psi(s) * psi(s); }, -1.0, 1.0, 1e-13);
  }();
  return value;
}

double Cutoff::integral_deriv_sq() {
  static const double value = [] {
    Cutoff psi;
    return integrate([&](double s) { return psi.derivative(s) * psi.derivative(s); }, -1.0,
                     1.0, 1e-13);
  }();
  return value;
}

double closed_form_cone_quotient(double a, const SectionProfile& profile) {
  if (!(a > 0.0)) throw std::domain_error("closed_form_cone_quotient: a must be positive");
  return a * a - 2.0 * a * weighted_mean_sigma(profile);
}

double strip_chi_quotient(double tau, double gamma) {
  if (!(tau > 1.0)) throw std::domain_error("strip_chi_quotient: tau must exceed 1");
  if (!(gamma > 0.0)) throw std::domain_error("strip_chi_quotient: gamma must be positive");
  double num = Cutoff::integral_deriv_sq();
  double den = Cutoff::integral_sq() + 2.0 * (tau - 1.0);
  return gamma * gamma * (-1.0 + num / den);
}

double strip_chi_quotient_quadrature(double tau, double gamma) {
  if (!(tau > 1.0)) throw std::domain_error("strip_chi_quotient_quadrature: tau must exceed 1");
  Cutoff psi;
  auto chi = [&](double s) {
    double a = std::abs(s);
    if (a < tau - 1.0) return 1.0;
    if (a >= tau) return 0.0;
    return psi(a - (tau - 1.0));
  };
  auto chi_d = [&](double s) {
    double a = std::abs(s);
    if (a < tau - 1.0 || a >= tau) return 0.0;
    double d = psi.derivative(a - (tau - 1.0));
    return s > 0 ? d : -d;
  };

  // v(x, y) = exp(-gamma y) chi(x gamma - tau) on {y > 0}, boundary {y = 0}.
  // The cutoff transition [tau-1, tau] is a narrow feature for large tau, so
  // the x-axis is integrated piecewise over its known breakpoints (a single
  // adaptive pass can mistake the long plateau for the whole story).
  const double x_hi = 2.0 * tau / gamma;
  const double y_hi = 19.0 / gamma; // exp(-2 gamma y) below 3e-17 of its peak
  const double tol = 1e-11;
  // chi(x gamma - tau) ramps up on [0, 1/gamma], plateaus, and ramps down on
  // [(2 tau - 1)/gamma, 2 tau/gamma].
  const double breaks[4] = {0.0, 1.0 / gamma, (2.0 * tau - 1.0) / gamma, x_hi};

  auto y_integral = [&](double coeff) {
    // int_0^{y_hi} coeff * exp(-2 gamma y) dy by quadrature.
    return integrate([&](double y) { return coeff * std::exp(-2.0 * gamma * y); }, 0.0, y_hi,
                     tol / (x_hi + 1.0));
  };
  auto x_integral = [&](const std::function<double(double)>& f) {
    double total = 0.0;
    for (int seg = 0; seg < 3; ++seg) total += integrate(f, breaks[seg], breaks[seg + 1], tol);
    return total;
  };

  double grad = x_integral([&](double x) {
    double s = x * gamma - tau;
    double c = chi(s), cd = chi_d(s);
    return y_integral(gamma * gamma * (c * c + cd * cd));
  });
  double vol = x_integral([&](double x) {
    double s = x * gamma - tau;
    double c = chi(s);
    return y_integral(c * c);
  });
  double bnd = x_integral([&](double x) {
    double c = chi(x * gamma - tau);
    return c * c;
  });
  return (grad - gamma * bnd) / vol;
}

double cusp_quotient(double p, double gamma) {
  if (!(p > 1.0) || !(p < 2.0))
    throw std::domain_error("cusp_quotient: p must lie in (1, 2)");
  if (!(gamma > 0.0)) throw std::domain_error("cusp_quotient: gamma must be positive");
  const double q = 2.0 - p;
  // Substituting t = x^q turns the sharply-peaked x-integrals into smooth
  // exponentially-damped ones (dx = (1/q) t^{1/q - 1} dt).  Truncate where
  // exp(-2 gamma t) drops below 1e-16 of the peak.
  const double t_max = 19.0 / gamma;
  const double tol = 1e-10;

  auto w = [&](double t) { return std::exp(-2.0 * gamma * t); };
  double vol = integrate_rel(
      [&](double t) { return (2.0 / q) * std::pow(t, (p + 1.0) / q - 1.0) * w(t); }, 0.0,
      t_max, tol);
  double grad = integrate_rel(
      [&](double t) {
        return 2.0 * gamma * gamma * q * std::pow(t, (3.0 - p) / q - 1.0) * w(t);
      },
      0.0, t_max, tol);
  double bnd = integrate_rel(
      [&](double t) {
        double x = std::pow(t, 1.0 / q);
        double arc = std::sqrt(1.0 + p * p * std::pow(x, 2.0 * (p - 1.0)));
        return (2.0 / q) * std::pow(t, 1.0 / q - 1.0) * w(t) * arc;
      },
      0.0, t_max, tol);
  return (grad - gamma * bnd) / vol;
}

CuspScanResult cusp_scan(double p, const std::vector<double>& gammas) {
  if (!(p > 1.0) || !(p < 2.0)) throw std::domain_error("cusp_scan: p must lie in (1, 2)");
  if (gammas.size() < 5) throw std::invalid_argument("cusp_scan: need at least 5 gamma values");
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    if (!(gammas[i] >= 5.0)) throw std::invalid_argument("cusp_scan: gamma values must be >= 5");
    if (i > 0 && !(gammas[i] > gammas[i - 1]))
      throw std::invalid_argument("cusp_scan: gamma values must be increasing");
  }

  CuspScanResult out;
  out.gammas = gammas;
  for (double g : gammas) {
    double J = cusp_quotient(p, g);
    if (J >= 0.0)
      throw std::runtime_error("cusp_scan: non-negative quotient, gamma too small");
    out.quotients.push_back(J);
  }

  // Least-squares slope of log(-J) against log(gamma).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(gammas.size());
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    double lx = std::log(gammas[i]);
    double ly = std::log(-out.quotients[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  out.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return out;
}

double halfline_inequality_margin(std::span<const double> x, std::span<const double> v,
                                  double gamma) {
  if (x.size() != v.size() || x.size() < 2)
    throw std::invalid_argument("halfline_inequality_margin: need matching samples");
  double dirichlet = 0.0, mass = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    double dx = x[i + 1] - x[i];
    if (!(dx > 0.0))
      throw std::invalid_argument("halfline_inequality_margin: grid must be increasing");
    double dv = v[i + 1] - v[i];
    dirichlet += dv * dv / dx;
    mass += dx * (v[i] * v[i] + v[i] * v[i + 1] + v[i + 1] * v[i + 1]) / 3.0;
  }
  return dirichlet - gamma * v[0] * v[0] + gamma * gamma * mass;
}

}  // namespace robin
