#include "robin/corner_constants.hpp"

#include <algorithm>
#include <cmath>

#include "robin/nelder_mead.hpp"
#include "robin/quadrature.hpp"

namespace robin {

namespace {

const double kPi = std::acos(-1.0);

void tangent_basis(const Eigen::VectorXd& point, std::vector<Eigen::VectorXd>& basis) {
  const int n = static_cast<int>(point.size());
  basis.clear();
  for (int k = 0; k < n && static_cast<int>(basis.size()) < n - 1; ++k) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    v[k] = 1.0;
    v -= v.dot(point) * point;
    for (const auto& t : basis) v -= v.dot(t) * t;
    double nv = v.norm();
    if (nv > 1e-8) basis.push_back(v / nv);
  }
}

}  // namespace

double c2d(double alpha) {
  if (!(alpha > 0.0) || !(alpha < kPi))
    throw std::domain_error("c2d: half-angle must lie in (0, pi); zero angle is a cusp");
  if (alpha >= 0.5 * kPi) return 1.0;
  double s = std::sin(alpha);
  return 1.0 / (s * s);
}

double smooth_constant() { return 1.0; }

double sigma_point(double b, double b_prime) {
  double b2 = b * b;
  return std::sqrt(1.0 + 1.0 / b2 + b_prime * b_prime / (b2 * b2));
}

double sigma_point_via_intermediates(double b, double b_prime) {
  double zeta = b * b_prime;
  double Z = b * b + b_prime * b_prime;
  double psi = zeta / Z;
  double u = b - psi * b_prime;
  return std::sqrt(1.0 + 1.0 / (u * u + b * b * psi * psi));
}

double SigmaProfile::sigma(double phi) const {
  const ProfileArc& a = profile.arc_at(phi);
  for (std::size_t i = 0; i < profile.arcs.size(); ++i)
    if (&profile.arcs[i] == &a) return arc_sigma[i];
  return arc_sigma.back();
}

double SigmaProfile::sup_sigma() const {
  return *std::max_element(arc_sigma.begin(), arc_sigma.end());
}

SigmaProfile sigma_codim3(const SectionProfile& profile) {
  SigmaProfile sp;
  sp.profile = profile;
  for (const auto& a : profile.arcs)
    sp.arc_sigma.push_back(std::sqrt(1.0 + 1.0 / (a.d * a.d)));
  return sp;
}

double weighted_mean_sigma(const SectionProfile& profile, double quad_tol) {
  double num = 0.0, den = 0.0;
  for (const auto& a : profile.arcs) {
    auto b2 = [&](double phi) {
      double c = std::cos(phi - a.phi_foot);
      return a.d * a.d / (c * c);
    };
    double I = integrate(b2, a.phi_begin, a.phi_end, quad_tol);
    double s = std::sqrt(1.0 + 1.0 / (a.d * a.d));
    num += s * I;
    den += I;
  }
  return num / den;
}

ConeBounds bounds_codim3(const PolyhedralCone& cone, const ThetaSearchConfig& cfg) {
  DirectionResult dir = max_min_distance_direction(cone);

  ConeBounds out;
  out.theta_upper = dir.theta;
  out.upper = 1.0 + 1.0 / (dir.d * dir.d);

  // Lower bound: maximize the weighted mean of sigma over admissible theta.
  // Multi-start Nelder-Mead on a chart of the sphere centered at the
  // max-min-distance direction.
  Eigen::VectorXd c(3);
  c << dir.theta.x(), dir.theta.y(), dir.theta.z();
  std::vector<Eigen::VectorXd> tang;
  tangent_basis(c, tang);

  auto ratio_at = [&](const Eigen::Vector3d& th) -> double {
    SectionProfile p = section_profile(cone, th);
    return weighted_mean_sigma(p, cfg.quad_tol);
  };
  auto obj = [&](const std::vector<double>& uv) -> double {
    Eigen::VectorXd v = c;
    for (std::size_t k = 0; k < tang.size(); ++k) v += uv[k] * tang[k];
    v.normalize();
    Eigen::Vector3d th(v[0], v[1], v[2]);
    try {
      return -ratio_at(th);
    } catch (const NotInteriorError&) {
      return 1e6;
    } catch (const UnboundedSectionError&) {
      return 1e6;
    }
  };

  const double offsets[8][2] = {{0.0, 0.0},  {0.3, 0.0},  {-0.3, 0.0}, {0.0, 0.3},
                                {0.0, -0.3}, {0.2, 0.2},  {-0.2, 0.2}, {0.2, -0.2}};
  double best = -std::numeric_limits<double>::infinity();
  Eigen::Vector3d best_theta = dir.theta;
  const int n_starts = std::min(cfg.starts, 8);
  for (int s = 0; s < n_starts; ++s) {
    std::vector<double> x0 = {offsets[s][0], offsets[s][1]};
    auto r = nelder_mead(obj, x0, 0.2, 1e-13, cfg.max_iter);
    if (-r.value > best) {
      Eigen::VectorXd v = c;
      for (std::size_t k = 0; k < tang.size(); ++k) v += r.x[k] * tang[k];
      v.normalize();
      best = -r.value;
      best_theta = Eigen::Vector3d(v[0], v[1], v[2]);
    }
  }
  if (!(best > 0.0))
    throw OptimizationError("bounds_codim3: lower-bound optimization failed");

  out.theta_lower = best_theta;
  out.a_opt = best;
  out.lower = best * best;
  out.exact = (out.upper - out.lower) <= 1e-6 * out.upper;
  return out;
}

double sigma_codim_j_point(double b, const Eigen::VectorXd& g) {
  const int k = static_cast<int>(g.size());
  Eigen::VectorXd zeta = b * g;
  Eigen::MatrixXd Z = b * b * Eigen::MatrixXd::Identity(k, k) + g * g.transpose();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(Z);
  if (!lu.isInvertible())
    throw SingularZError("sigma_codim_j_point: Z matrix is singular");
  Eigen::VectorXd psi = lu.solve(zeta);
  double u = b - psi.dot(g);
  double denom = u * u + b * b * psi.squaredNorm();
  return std::sqrt(1.0 + 1.0 / denom);
}

ConeBounds bounds_codim_j(const SampledSphereField& field, int j, int grid_n) {
  if (j < 3) throw std::invalid_argument("bounds_codim_j: co-dimension must be >= 3");
  if (j > 4) throw std::invalid_argument("bounds_codim_j: sphere dimensions above S^2 not supported");

  struct Sample {
    Eigen::VectorXd point;
    double weight;
  };
  std::vector<Sample> samples;
  if (j == 3) {
    for (int i = 0; i < grid_n; ++i) {
      double phi = 2.0 * kPi * (i + 0.5) / grid_n;
      Eigen::VectorXd p(2);
      p << std::cos(phi), std::sin(phi);
      samples.push_back({p, 2.0 * kPi / grid_n});
    }
  } else {
    // Product rule on S^2: Gauss-Legendre in the polar cosine, uniform in
    // azimuth.
    std::vector<double> un, uw;
    gauss_legendre(grid_n, un, uw);
    const int m = 2 * grid_n;
    for (int i = 0; i < grid_n; ++i) {
      double ca = un[i];
      double sa = std::sqrt(std::max(0.0, 1.0 - ca * ca));
      for (int l = 0; l < m; ++l) {
        double be = 2.0 * kPi * (l + 0.5) / m;
        Eigen::VectorXd p(3);
        p << sa * std::cos(be), sa * std::sin(be), ca;
        samples.push_back({p, uw[i] * 2.0 * kPi / m});
      }
    }
  }

  // Gradient consistency: central differences of b along tangent directions.
  // A few mismatches are tolerated (samples can straddle kinks of a
  // piecewise-smooth field); systematic disagreement is an input error.
  {
    const double h = 1e-5;
    int checked = 0, bad = 0;
    for (std::size_t s = 0; s < samples.size() && checked < 32; s += samples.size() / 32 + 1) {
      const Eigen::VectorXd& p = samples[s].point;
      std::vector<Eigen::VectorXd> basis;
      tangent_basis(p, basis);
      Eigen::VectorXd g = field.gradient(p);
      bool ok = true;
      for (const auto& t : basis) {
        double fd = (field.value((p + h * t).normalized()) -
                     field.value((p - h * t).normalized())) /
                    (2.0 * h);
        ok = ok && std::abs(fd - g.dot(t)) <= 1e-6 * (1.0 + std::abs(fd));
      }
      if (!ok) ++bad;
      ++checked;
    }
    if (bad * 4 > checked)
      throw InconsistentGradientError(
          "bounds_codim_j: supplied gradient disagrees with finite differences");
  }

  double num = 0.0, den = 0.0, sup_sigma = 0.0;
  for (const auto& s : samples) {
    double b = field.value(s.point);
    if (!(b > 0.0)) throw std::invalid_argument("bounds_codim_j: b must be positive");
    std::vector<Eigen::VectorXd> basis;
    tangent_basis(s.point, basis);
    Eigen::VectorXd grad = field.gradient(s.point);
    Eigen::VectorXd g(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) g[k] = grad.dot(basis[k]);
    double sigma = sigma_codim_j_point(b, g);
    double w = s.weight * std::pow(b, j - 1);
    num += w * sigma;
    den += w;
    sup_sigma = std::max(sup_sigma, sigma);
  }

  ConeBounds out;
  double ratio = num / den;
  out.lower = ratio * ratio;
  out.upper = sup_sigma * sup_sigma;
  out.a_opt = ratio;
  out.exact = (out.upper - out.lower) <= 1e-6 * out.upper;
  return out;
}

DomainConstant domain_constant(const std::vector<CornerDescriptor>& corners) {
  bool any_positive = false;
  for (const auto& c : corners) any_positive = any_positive || c.weight > 0.0;
  if (!any_positive)
    throw std::invalid_argument("domain_constant: boundary weight must be positive somewhere");

  DomainConstant out;
  out.value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < corners.size(); ++i) {
    const auto& c = corners[i];
    if (!(c.weight > 0.0)) continue;
    double cy_lo = 0.0, cy_hi = 0.0;
    switch (c.kind) {
      case CornerDescriptor::Kind::SmoothPoint:
      case CornerDescriptor::Kind::HalfSpaceContaining:
        cy_lo = cy_hi = smooth_constant();
        break;
      case CornerDescriptor::Kind::PlanarAngle:
      case CornerDescriptor::Kind::Wedge:
        cy_lo = cy_hi = c2d(c.alpha);
        break;
      case CornerDescriptor::Kind::Cone: {
        if (!c.cone) throw std::invalid_argument("domain_constant: cone descriptor without cone");
        ConeBounds b = bounds_codim3(*c.cone);
        cy_lo = b.lower;
        cy_hi = b.upper;
        break;
      }
    }
    double g2 = c.weight * c.weight;
    double mid = g2 * 0.5 * (cy_lo + cy_hi);
    if (mid > out.value) {
      out.value = mid;
      out.argmax = i;
      out.bracket_lower = g2 * cy_lo;
      out.bracket_upper = g2 * cy_hi;
    }
  }
  return out;
}

}  // namespace robin
