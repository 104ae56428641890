#include "robin/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "robin/nelder_mead.hpp"

namespace robin {

namespace {

const double kPi = std::acos(-1.0);

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

// Proper intersection test for closed segments [a,b] and [c,d].
bool segments_intersect(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                        const Eigen::Vector2d& c, const Eigen::Vector2d& d) {
  auto orient = [](const Eigen::Vector2d& p, const Eigen::Vector2d& q,
                   const Eigen::Vector2d& r) {
    double v = cross2(q - p, r - p);
    if (v > 1e-14) return 1;
    if (v < -1e-14) return -1;
    return 0;
  };
  int o1 = orient(a, b, c), o2 = orient(a, b, d);
  int o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  auto on = [](const Eigen::Vector2d& p, const Eigen::Vector2d& q,
               const Eigen::Vector2d& r) {
    return std::min(p.x(), q.x()) - 1e-14 <= r.x() && r.x() <= std::max(p.x(), q.x()) + 1e-14 &&
           std::min(p.y(), q.y()) - 1e-14 <= r.y() && r.y() <= std::max(p.y(), q.y()) + 1e-14;
  };
  if (o1 == 0 && on(a, b, c)) return true;
  if (o2 == 0 && on(a, b, d)) return true;
  if (o3 == 0 && on(c, d, a)) return true;
  if (o4 == 0 && on(c, d, b)) return true;
  return false;
}

double reduce_angle(double phi, double base) {
  const double two_pi = 2.0 * kPi;
  double t = std::fmod(phi - base, two_pi);
  if (t < 0) t += two_pi;
  return base + t;
}

void sphere_chart(const Eigen::VectorXd& center, std::vector<Eigen::VectorXd>& tangents) {
  const int n = static_cast<int>(center.size());
  tangents.clear();
  // Gram-Schmidt on the coordinate basis against the chart center.
  for (int k = 0; k < n && static_cast<int>(tangents.size()) < n - 1; ++k) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    v[k] = 1.0;
    v -= v.dot(center) * center;
    for (const auto& t : tangents) v -= v.dot(t) * t;
    double nv = v.norm();
    if (nv > 1e-8) tangents.push_back(v / nv);
  }
}

// Maximizes min_i theta . n_i over the unit sphere; returns the best value
// found and the maximizer.  Deterministic grid seeding plus Nelder-Mead
// refinement from the best starts.
double maximize_min_dot(const std::vector<Eigen::VectorXd>& normals, int dim,
                        Eigen::VectorXd& best_theta, int n_starts = 8) {
  auto min_dot = [&](const Eigen::VectorXd& th) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& n : normals) m = std::min(m, th.dot(n));
    return m;
  };

  // Deterministic seed directions: coordinate axes, all normals, the mean
  // normal, and (for dim 3) a latitude-longitude grid.
  std::vector<Eigen::VectorXd> seeds;
  for (int k = 0; k < dim; ++k) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
    e[k] = 1.0;
    seeds.push_back(e);
    seeds.push_back(-e);
  }
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(dim);
  for (const auto& n : normals) {
    seeds.push_back(n);
    mean += n;
  }
  if (mean.norm() > 1e-12) seeds.push_back(mean.normalized());
  if (dim == 3) {
    for (int i = 1; i < 24; ++i) {
      double ph = kPi * i / 24.0;
      for (int j = 0; j < 48; ++j) {
        double la = 2.0 * kPi * j / 48.0;
        Eigen::VectorXd v(3);
        v << std::sin(ph) * std::cos(la), std::sin(ph) * std::sin(la), std::cos(ph);
        seeds.push_back(v);
      }
    }
  }

  std::stable_sort(seeds.begin(), seeds.end(),
                   [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
                     return min_dot(a) > min_dot(b);
                   });
  if (static_cast<int>(seeds.size()) > n_starts) seeds.resize(n_starts);

  double best = -std::numeric_limits<double>::infinity();
  best_theta = seeds.front();
  for (const auto& s : seeds) {
    std::vector<Eigen::VectorXd> tang;
    sphere_chart(s, tang);
    auto obj = [&](const std::vector<double>& uv) {
      Eigen::VectorXd th = s;
      for (std::size_t k = 0; k < tang.size(); ++k) th += uv[k] * tang[k];
      th.normalize();
      return -min_dot(th);
    };
    auto r = nelder_mead(obj, std::vector<double>(tang.size(), 0.0), 0.5, 1e-14, 400);
    Eigen::VectorXd th = s;
    for (std::size_t k = 0; k < tang.size(); ++k) th += r.x[k] * tang[k];
    th.normalize();
    double v = min_dot(th);
    if (v > best + 1e-12 ||
        (v > best - 1e-12 && std::lexicographical_compare(
                                 th.data(), th.data() + dim, best_theta.data(),
                                 best_theta.data() + dim))) {
      best = v;
      best_theta = th;
    }
  }
  return best;
}

}  // namespace

PlanarPolygon PlanarPolygon::create(std::vector<Eigen::Vector2d> vertices,
                                    std::vector<double> edge_weight) {
  const std::size_t n = vertices.size();
  if (n < 3) throw std::invalid_argument("polygon: need at least 3 vertices");
  for (std::size_t i = 0; i < n; ++i) {
    if ((vertices[i] - vertices[(i + 1) % n]).norm() < 1e-14)
      throw std::invalid_argument("polygon: consecutive vertices coincide");
  }
  double signed_area = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    signed_area += cross2(vertices[i], vertices[(i + 1) % n]);
  if (signed_area <= 0.0)
    throw std::invalid_argument("polygon: orientation must be counterclockwise");
  // Simplicity: no two non-adjacent edges may intersect.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      if (segments_intersect(vertices[i], vertices[(i + 1) % n], vertices[j],
                             vertices[(j + 1) % n]))
        throw std::invalid_argument("polygon: self-intersection detected");
    }
  }
  if (edge_weight.empty()) edge_weight.assign(n, 1.0);
  if (edge_weight.size() != n)
    throw std::invalid_argument("polygon: need one weight value per edge");
  if (*std::max_element(edge_weight.begin(), edge_weight.end()) <= 0.0)
    throw std::invalid_argument("polygon: boundary weight must be positive somewhere");
  PlanarPolygon p;
  p.vertices = std::move(vertices);
  p.edge_weight = std::move(edge_weight);
  return p;
}

double PlanarPolygon::area() const {
  double s = 0.0;
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) s += cross2(vertices[i], vertices[(i + 1) % n]);
  return 0.5 * s;
}

double PlanarPolygon::perimeter() const {
  double s = 0.0;
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) s += (vertices[(i + 1) % n] - vertices[i]).norm();
  return s;
}

double PlanarPolygon::half_angle(int i) const {
  const int n = static_cast<int>(vertices.size());
  const Eigen::Vector2d ep = vertices[i] - vertices[(i + n - 1) % n];
  const Eigen::Vector2d en = vertices[(i + 1) % n] - vertices[i];
  double turn = std::atan2(cross2(ep, en), ep.dot(en));
  return 0.5 * (kPi - turn);
}

PolyhedralCone PolyhedralCone::create(int dim, std::vector<Eigen::VectorXd> normals) {
  if (dim < 3) throw std::invalid_argument("cone: dimension must be >= 3");
  if (normals.empty()) throw std::invalid_argument("cone: need at least one face normal");
  for (const auto& n : normals) {
    if (static_cast<int>(n.size()) != dim)
      throw std::invalid_argument("cone: normal dimension mismatch");
    if (std::abs(n.norm() - 1.0) > 1e-12)
      throw std::invalid_argument("cone: face normals must have unit length");
  }
  Eigen::VectorXd th;
  if (maximize_min_dot(normals, dim, th) <= 0.0)
    throw std::invalid_argument("cone: empty interior");
  PolyhedralCone c;
  c.dim = dim;
  c.normals = std::move(normals);
  return c;
}

double face_distance(const Eigen::VectorXd& theta, const Eigen::VectorXd& n) {
  double t = theta.dot(n);
  t = std::min(t, 1.0 - 1e-16);
  return t / std::sqrt(1.0 - t * t);
}

const ProfileArc& SectionProfile::arc_at(double phi) const {
  double p = reduce_angle(phi, arcs.front().phi_begin);
  for (const auto& a : arcs) {
    if (p >= a.phi_begin - 1e-12 && p < a.phi_end - 1e-15) return a;
  }
  return arcs.back();
}

double SectionProfile::b(double phi) const {
  const ProfileArc& a = arc_at(phi);
  return a.d / std::cos(phi - a.phi_foot);
}

double SectionProfile::b_prime(double phi) const {
  const ProfileArc& a = arc_at(phi);
  double c = std::cos(phi - a.phi_foot);
  return a.d * std::sin(phi - a.phi_foot) / (c * c);
}

double SectionProfile::min_distance() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& a : arcs) m = std::min(m, a.d);
  return m;
}

SectionProfile section_profile(const PolyhedralCone& cone, const Eigen::Vector3d& theta_in) {
  if (cone.dim != 3)
    throw std::invalid_argument("section_profile: cone must be 3-dimensional");
  Eigen::Vector3d theta = theta_in.normalized();

  for (const auto& n : cone.normals) {
    if (theta.dot(n) < kInteriorTol)
      throw NotInteriorError("section_profile: theta is not strictly interior");
  }

  // Orthonormal frame of the plane through theta.
  Eigen::Vector3d aux = std::abs(theta.x()) < 0.9 ? Eigen::Vector3d::UnitX()
                                                  : Eigen::Vector3d::UnitY();
  Eigen::Vector3d e1 = (aux - aux.dot(theta) * theta).normalized();
  Eigen::Vector3d e2 = theta.cross(e1);

  // Each face cuts the half-plane constraint eta . m <= d in the section
  // plane, with foot direction m and distance d.
  struct Line {
    Eigen::Vector2d m;
    double d;
    int face;
  };
  std::vector<Line> lines;
  for (std::size_t i = 0; i < cone.normals.size(); ++i) {
    const Eigen::VectorXd& n = cone.normals[i];
    Eigen::Vector2d p(e1.dot(n.head<3>()), e2.dot(n.head<3>()));
    double pn = p.norm();
    if (pn < 1e-13) continue;  // face parallel to the section plane
    Line l;
    l.m = -p / pn;
    l.d = theta.dot(n.head<3>()) / pn;
    l.face = static_cast<int>(i);
    // Drop exact duplicates (coincident faces).
    bool dup = false;
    for (const auto& o : lines)
      dup = dup || ((o.m - l.m).norm() < 1e-12 && std::abs(o.d - l.d) < 1e-12);
    if (!dup) lines.push_back(l);
  }
  if (lines.size() < 3) throw UnboundedSectionError("section_profile: section is unbounded");

  // Bounded iff the foot directions leave no angular gap of pi or more.
  {
    std::vector<double> ang;
    for (const auto& l : lines) ang.push_back(std::atan2(l.m.y(), l.m.x()));
    std::sort(ang.begin(), ang.end());
    double max_gap = ang.front() + 2.0 * kPi - ang.back();
    for (std::size_t i = 1; i < ang.size(); ++i)
      max_gap = std::max(max_gap, ang[i] - ang[i - 1]);
    if (max_gap >= kPi - 1e-12)
      throw UnboundedSectionError("section_profile: section is unbounded");
  }

  // Vertices of the convex section polygon: pairwise line intersections that
  // satisfy every constraint.
  std::vector<Eigen::Vector2d> verts;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      double det = cross2(lines[i].m, lines[j].m);
      if (std::abs(det) < 1e-12) continue;
      Eigen::Vector2d v;
      v.x() = (lines[i].d * lines[j].m.y() - lines[j].d * lines[i].m.y()) / det;
      v.y() = (lines[i].m.x() * lines[j].d - lines[j].m.x() * lines[i].d) / det;
      bool ok = true;
      for (const auto& l : lines)
        ok = ok && v.dot(l.m) <= l.d + 1e-9 * (1.0 + v.norm());
      if (!ok) continue;
      bool dup = false;
      for (const auto& w : verts) dup = dup || (w - v).norm() < 1e-10 * (1.0 + v.norm());
      if (!dup) verts.push_back(v);
    }
  }
  if (verts.size() < 3) throw UnboundedSectionError("section_profile: degenerate section");

  std::sort(verts.begin(), verts.end(),
            [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
              return std::atan2(a.y(), a.x()) < std::atan2(b.y(), b.x());
            });

  SectionProfile prof;
  prof.theta = theta;
  prof.e1 = e1;
  prof.e2 = e2;
  const std::size_t nv = verts.size();
  for (std::size_t k = 0; k < nv; ++k) {
    const Eigen::Vector2d& a = verts[k];
    const Eigen::Vector2d& b = verts[(k + 1) % nv];
    // The edge between consecutive vertices lies on the unique line through
    // both.
    const Line* active = nullptr;
    for (const auto& l : lines) {
      double ra = std::abs(a.dot(l.m) - l.d);
      double rb = std::abs(b.dot(l.m) - l.d);
      if (ra < 1e-8 * (1.0 + a.norm()) && rb < 1e-8 * (1.0 + b.norm())) {
        active = &l;
        break;
      }
    }
    if (!active) throw UnboundedSectionError("section_profile: inconsistent section polygon");
    ProfileArc arc;
    arc.phi_begin = std::atan2(a.y(), a.x());
    arc.phi_end = reduce_angle(std::atan2(b.y(), b.x()), arc.phi_begin);
    if (arc.phi_end - arc.phi_begin < 1e-14) continue;
    arc.d = active->d;
    arc.phi_foot = std::atan2(active->m.y(), active->m.x());
    arc.face = active->face;
    prof.arcs.push_back(arc);
  }

  double total = 0.0;
  for (const auto& a : prof.arcs) total += a.phi_end - a.phi_begin;
  if (std::abs(total - 2.0 * kPi) > 1e-10)
    throw UnboundedSectionError("section_profile: arcs do not cover the full circle");
  return prof;
}

DirectionResult max_min_distance_direction(const PolyhedralCone& cone) {
  if (cone.dim != 3)
    throw std::invalid_argument("max_min_distance_direction: cone must be 3-dimensional");

  Eigen::VectorXd th;
  double best = maximize_min_dot(cone.normals, 3, th);
  if (best <= kInteriorTol)
    throw OptimizationError("max_min_distance_direction: no admissible direction found");

  DirectionResult res;
  res.theta = Eigen::Vector3d(th[0], th[1], th[2]).normalized();
  // Propagates UnboundedSectionError for cones with unbounded sections.
  SectionProfile prof = section_profile(cone, res.theta);
  double dmin = std::numeric_limits<double>::infinity();
  double dmax = 0.0;
  for (const auto& a : prof.arcs) {
    dmin = std::min(dmin, a.d);
    dmax = std::max(dmax, a.d);
  }
  res.d = dmin;
  res.inscribed = (dmax - dmin) <= 1e-8;
  return res;
}

}  // namespace robin
