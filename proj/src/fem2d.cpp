#include "robin/fem2d.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <set>

namespace robin {

namespace {

const double kPi = std::acos(-1.0);

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

double tri_area(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
  return 0.5 * cross2(b - a, c - a);
}

double tri_min_angle(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                     const Eigen::Vector2d& c) {
  double la = (b - c).norm(), lb = (c - a).norm(), lc = (a - b).norm();
  auto ang = [](double opp, double s1, double s2) {
    double v = (s1 * s1 + s2 * s2 - opp * opp) / (2.0 * s1 * s2);
    return std::acos(std::clamp(v, -1.0, 1.0));
  };
  return std::min({ang(la, lb, lc), ang(lb, lc, la), ang(lc, la, lb)});
}

bool point_in_triangle(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                       const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
  double d1 = cross2(b - a, p - a);
  double d2 = cross2(c - b, p - b);
  double d3 = cross2(a - c, p - c);
  return d1 > -1e-14 && d2 > -1e-14 && d3 > -1e-14;
}

// Ear clipping with a max-min-angle greedy ear choice.
std::vector<std::array<int, 3>> ear_clip(const std::vector<Eigen::Vector2d>& pts) {
  const int n = static_cast<int>(pts.size());
  std::vector<int> ring(n);
  for (int i = 0; i < n; ++i) ring[i] = i;

  std::vector<std::array<int, 3>> tris;
  while (ring.size() > 3) {
    const int m = static_cast<int>(ring.size());
    int best = -1;
    double best_q = -1.0;
    for (int k = 0; k < m; ++k) {
      int ia = ring[(k + m - 1) % m], ib = ring[k], ic = ring[(k + 1) % m];
      const auto &a = pts[ia], &b = pts[ib], &c = pts[ic];
      if (tri_area(a, b, c) <= 1e-15) continue; // reflex or degenerate
      bool ear = true;
      for (int l = 0; l < m && ear; ++l) {
        int iv = ring[l];
        if (iv == ia || iv == ib || iv == ic) continue;
        ear = !point_in_triangle(pts[iv], a, b, c);
      }
      if (!ear) continue;
      double q = tri_min_angle(a, b, c);
      if (q > best_q) {
        best_q = q;
        best = k;
      }
    }
    if (best < 0) throw MeshError("mesh_polygon: ear clipping failed (polygon not simple?)");
    const int m2 = static_cast<int>(ring.size());
    tris.push_back({ring[(best + m2 - 1) % m2], ring[best], ring[(best + 1) % m2]});
    ring.erase(ring.begin() + best);
  }
  tris.push_back({ring[0], ring[1], ring[2]});
  return tris;
}

using EdgeKey = std::pair<int, int>;
EdgeKey edge_key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

struct MeshBuilder {
  std::vector<Eigen::Vector2d> nodes;
  std::vector<std::array<int, 3>> tris;
  std::map<EdgeKey, BoundaryEdge> boundary; // keyed for split lookups

};

// Delaunay test: does d lie strictly inside the circumcircle of (a, b, c)?
// The determinant sign depends on the orientation of (a, b, c), which is
// normalized here so callers may pass the vertices in any order.
bool incircle_violates(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                       const Eigen::Vector2d& c, const Eigen::Vector2d& d) {
  Eigen::Matrix3d m;
  m << a.x() - d.x(), a.y() - d.y(), (a - d).squaredNorm(),
       b.x() - d.x(), b.y() - d.y(), (b - d).squaredNorm(),
       c.x() - d.x(), c.y() - d.y(), (c - d).squaredNorm();
  double orient = cross2(b - a, c - a);
  if (orient == 0.0) return false;
  return (orient > 0 ? m.determinant() : -m.determinant()) > 1e-14;
}

void lawson_flips(MeshBuilder& mb) {
  for (int pass = 0; pass < 50; ++pass) {
    std::map<EdgeKey, std::vector<int>> edge_tris;
    for (int t = 0; t < static_cast<int>(mb.tris.size()); ++t)
      for (int e = 0; e < 3; ++e)
        edge_tris[edge_key(mb.tris[t][e], mb.tris[t][(e + 1) % 3])].push_back(t);

    bool flipped = false;
    for (const auto& [key, ts] : edge_tris) {
      if (ts.size() != 2) continue;
      if (mb.boundary.count(key)) continue;
      int t1 = ts[0], t2 = ts[1];
      // Earlier flips in this pass may have invalidated this adjacency entry.
      auto has_edge = [&](int t) {
        int hit = 0;
        for (int v : mb.tris[t]) hit += (v == key.first || v == key.second);
        return hit == 2;
      };
      if (!has_edge(t1) || !has_edge(t2)) continue;
      auto find_opp = [&](int t) {
        for (int v : mb.tris[t])
          if (v != key.first && v != key.second) return v;
        return -1;
      };
      int o1 = find_opp(t1), o2 = find_opp(t2);
      if (o1 < 0 || o2 < 0 || o1 == o2) continue;
      const auto &p1 = mb.nodes[key.first], &p2 = mb.nodes[key.second];
      const auto &q1 = mb.nodes[o1], &q2 = mb.nodes[o2];
      if (!incircle_violates(p1, p2, q1, q2)) continue;
      // New triangles (o1, o2) diagonal; only flip if both stay positive.
      if (tri_area(q1, q2, p1) <= 1e-15 && tri_area(q2, q1, p1) <= 1e-15) continue;
      std::array<int, 3> n1, n2;
      if (tri_area(q1, q2, p1) > 1e-15) {
        n1 = {o1, o2, key.first};
        n2 = {o2, o1, key.second};
      } else {
        n1 = {o2, o1, key.first};
        n2 = {o1, o2, key.second};
      }
      if (tri_area(mb.nodes[n1[0]], mb.nodes[n1[1]], mb.nodes[n1[2]]) <= 1e-15 ||
          tri_area(mb.nodes[n2[0]], mb.nodes[n2[1]], mb.nodes[n2[2]]) <= 1e-15)
        continue;
      mb.tris[t1] = n1;
      mb.tris[t2] = n2;
      flipped = true;
    }
    if (!flipped) return;
  }
}

void smooth(MeshBuilder& mb, int passes) {
  std::set<int> bnodes;
  for (const auto& [k, e] : mb.boundary) {
    bnodes.insert(e.a);
    bnodes.insert(e.b);
  }
  std::vector<std::vector<int>> node_tris(mb.nodes.size());
  for (int t = 0; t < static_cast<int>(mb.tris.size()); ++t)
    for (int v : mb.tris[t]) node_tris[v].push_back(t);

  for (int pass = 0; pass < passes; ++pass) {
    for (int v = 0; v < static_cast<int>(mb.nodes.size()); ++v) {
      if (bnodes.count(v)) continue;
      std::set<int> nb;
      for (int t : node_tris[v])
        for (int w : mb.tris[t])
          if (w != v) nb.insert(w);
      if (nb.empty()) continue;
      Eigen::Vector2d target = Eigen::Vector2d::Zero();
      for (int w : nb) target += mb.nodes[w];
      target /= static_cast<double>(nb.size());

      auto local_quality = [&](const Eigen::Vector2d& pos) {
        double q = std::numeric_limits<double>::infinity();
        for (int t : node_tris[v]) {
          std::array<Eigen::Vector2d, 3> p;
          for (int i = 0; i < 3; ++i)
            p[i] = mb.tris[t][i] == v ? pos : mb.nodes[mb.tris[t][i]];
          if (tri_area(p[0], p[1], p[2]) <= 1e-15) return -1.0;
          q = std::min(q, tri_min_angle(p[0], p[1], p[2]));
        }
        return q;
      };
      double before = local_quality(mb.nodes[v]);
      double after = local_quality(target);
      if (after > before) mb.nodes[v] = target;
    }
  }
}

// Splits every edge longer than the size field at its midpoint; returns
// whether anything was split.
bool refine_pass(MeshBuilder& mb, const std::function<double(const Eigen::Vector2d&)>& size) {
  std::map<EdgeKey, int> midpoint;
  for (const auto& tri : mb.tris) {
    for (int e = 0; e < 3; ++e) {
      int a = tri[e], b = tri[(e + 1) % 3];
      EdgeKey k = edge_key(a, b);
      if (midpoint.count(k)) continue;
      Eigen::Vector2d mid = 0.5 * (mb.nodes[a] + mb.nodes[b]);
      double len = (mb.nodes[a] - mb.nodes[b]).norm();
      if (len > size(mid)) {
        midpoint[k] = static_cast<int>(mb.nodes.size());
        mb.nodes.push_back(mid);
      }
    }
  }
  if (midpoint.empty()) return false;

  // Split boundary edges first so weights and parent ids follow.
  std::vector<std::pair<EdgeKey, BoundaryEdge>> new_bedges;
  for (auto it = mb.boundary.begin(); it != mb.boundary.end();) {
    auto mp = midpoint.find(it->first);
    if (mp == midpoint.end()) {
      ++it;
      continue;
    }
    BoundaryEdge e = it->second;
    int m = mp->second;
    BoundaryEdge e1{e.a, m, e.g, e.parent_edge};
    BoundaryEdge e2{m, e.b, e.g, e.parent_edge};
    it = mb.boundary.erase(it);
    new_bedges.push_back({edge_key(e1.a, e1.b), e1});
    new_bedges.push_back({edge_key(e2.a, e2.b), e2});
  }
  for (auto& [k, e] : new_bedges) mb.boundary.emplace(k, e);

  std::vector<std::array<int, 3>> out;
  out.reserve(mb.tris.size() * 2);
  for (const auto& tri : mb.tris) {
    int m01 = -1, m12 = -1, m20 = -1;
    auto get = [&](int a, int b) {
      auto it = midpoint.find(edge_key(a, b));
      return it == midpoint.end() ? -1 : it->second;
    };
    m01 = get(tri[0], tri[1]);
    m12 = get(tri[1], tri[2]);
    m20 = get(tri[2], tri[0]);
    int nsplit = (m01 >= 0) + (m12 >= 0) + (m20 >= 0);
    if (nsplit == 0) {
      out.push_back(tri);
    } else if (nsplit == 3) {
      out.push_back({tri[0], m01, m20});
      out.push_back({tri[1], m12, m01});
      out.push_back({tri[2], m20, m12});
      out.push_back({m01, m12, m20});
    } else {
      // Rotate so that vertex 0 is opposite an unsplit configuration:
      // handle 1 and 2 splits by case analysis after rotation.
      std::array<int, 3> v = tri;
      std::array<int, 3> m = {m12, m20, m01}; // m[i] = midpoint opposite v[i]
      auto rot = [&]() {
        v = {v[1], v[2], v[0]};
        m = {m[1], m[2], m[0]};
      };
      if (nsplit == 1) {
        while (m[0] < 0) rot();
        // Split edge v1-v2.
        out.push_back({v[0], v[1], m[0]});
        out.push_back({v[0], m[0], v[2]});
      } else {
        while (m[0] >= 0) rot(); // unsplit edge is v1-v2
        // Edges v0-v1 (m[2]) and v0-v2 (m[1]) are split.
        out.push_back({v[0], m[2], m[1]});
        // Choose the shorter diagonal of the quad (m2, v1, v2, m1).
        if ((mb.nodes[m[2]] - mb.nodes[v[2]]).norm() <
            (mb.nodes[m[1]] - mb.nodes[v[1]]).norm()) {
          out.push_back({m[2], v[1], v[2]});
          out.push_back({m[2], v[2], m[1]});
        } else {
          out.push_back({m[2], v[1], m[1]});
          out.push_back({m[1], v[1], v[2]});
        }
      }
    }
  }
  mb.tris = std::move(out);
  return true;
}

double dist_to_boundary(const PlanarPolygon& poly, const Eigen::Vector2d& p) {
  double d = std::numeric_limits<double>::infinity();
  const std::size_t n = poly.vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto &a = poly.vertices[i], &b = poly.vertices[(i + 1) % n];
    Eigen::Vector2d ab = b - a;
    double t = std::clamp((p - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
    d = std::min(d, (p - a - t * ab).norm());
  }
  return d;
}

}  // namespace

double Mesh::min_angle() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& t : triangles)
    m = std::min(m, tri_min_angle(nodes[t[0]], nodes[t[1]], nodes[t[2]]));
  return m * 180.0 / kPi;
}

Mesh mesh_polygon(const PlanarPolygon& polygon, double h,
                  std::optional<double> boundary_layer) {
  if (!(h > 0.0)) throw MeshError("mesh_polygon: h must be positive");

  MeshBuilder mb;
  mb.nodes = polygon.vertices;
  mb.tris = ear_clip(polygon.vertices);
  const int n = static_cast<int>(polygon.vertices.size());
  for (int i = 0; i < n; ++i) {
    BoundaryEdge e{i, (i + 1) % n, polygon.edge_weight[i], i};
    mb.boundary.emplace(edge_key(e.a, e.b), e);
  }

  double hb = h;
  double layer = 0.0;
  if (boundary_layer) {
    double gamma = *boundary_layer;
    if (gamma > 0.0) {
      hb = std::min(h, 0.2 / gamma);
      layer = 3.0 / gamma;
    }
  }
  auto size = [&](const Eigen::Vector2d& p) {
    if (hb >= h) return h;
    double d = dist_to_boundary(polygon, p);
    if (d <= layer) return hb;
    return std::min(h, hb + 0.5 * (d - layer));
  };

  lawson_flips(mb);
  for (int pass = 0; pass < 64; ++pass) {
    if (!refine_pass(mb, size)) break;
    lawson_flips(mb);
    smooth(mb, 2);
  }
  lawson_flips(mb);
  smooth(mb, 4);

  Mesh mesh;
  mesh.nodes = std::move(mb.nodes);
  mesh.triangles = std::move(mb.tris);
  for (const auto& [k, e] : mb.boundary) mesh.boundary_edges.push_back(e);

  for (auto& t : mesh.triangles) {
    double a = tri_area(mesh.nodes[t[0]], mesh.nodes[t[1]], mesh.nodes[t[2]]);
    if (a < 0) std::swap(t[1], t[2]);
    if (std::abs(a) < 1e-16) throw MeshError("mesh_polygon: degenerate triangle");
  }
  for (const auto& t : mesh.triangles)
    for (int e = 0; e < 3; ++e)
      mesh.h_max = std::max(mesh.h_max, (mesh.nodes[t[e]] - mesh.nodes[t[(e + 1) % 3]]).norm());
  for (const auto& e : mesh.boundary_edges)
    mesh.h_boundary = std::max(mesh.h_boundary, (mesh.nodes[e.a] - mesh.nodes[e.b]).norm());

  if (mesh.min_angle() < 15.0)
    throw MeshError("mesh_polygon: mesh quality below 15 degrees");
  return mesh;
}

EigResult principal_eigenvalue(const Mesh& mesh, double gamma) {
  const int n = static_cast<int>(mesh.nodes.size());
  using T = Eigen::Triplet<double>;
  std::vector<T> ta, tm, tb;
  ta.reserve(mesh.triangles.size() * 9);
  tm.reserve(mesh.triangles.size() * 9);

  for (const auto& t : mesh.triangles) {
    const auto &p0 = mesh.nodes[t[0]], &p1 = mesh.nodes[t[1]], &p2 = mesh.nodes[t[2]];
    double area = tri_area(p0, p1, p2);
    // Barycentric gradients.
    Eigen::Matrix<double, 2, 3> g;
    g.col(0) << p1.y() - p2.y(), p2.x() - p1.x();
    g.col(1) << p2.y() - p0.y(), p0.x() - p2.x();
    g.col(2) << p0.y() - p1.y(), p1.x() - p0.x();
    g /= 2.0 * area;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        ta.emplace_back(t[i], t[j], area * g.col(i).dot(g.col(j)));
        tm.emplace_back(t[i], t[j], area * (i == j ? 1.0 / 6.0 : 1.0 / 12.0));
      }
  }
  for (const auto& e : mesh.boundary_edges) {
    double len = (mesh.nodes[e.a] - mesh.nodes[e.b]).norm();
    double w = e.g * len / 6.0;
    tb.emplace_back(e.a, e.a, 2.0 * w);
    tb.emplace_back(e.b, e.b, 2.0 * w);
    tb.emplace_back(e.a, e.b, w);
    tb.emplace_back(e.b, e.a, w);
  }

  Eigen::SparseMatrix<double> A(n, n), M(n, n), B(n, n);
  A.setFromTriplets(ta.begin(), ta.end());
  M.setFromTriplets(tm.begin(), tm.end());
  B.setFromTriplets(tb.begin(), tb.end());
  Eigen::SparseMatrix<double> S = A - gamma * B;

  // Shift safely below the lowest eigenvalue: corner-law upper estimate for
  // the quadratic regime plus the perimeter/area slope for the linear one.
  double per = 0.0, vol = 0.0;
  for (const auto& e : mesh.boundary_edges)
    per += e.g * (mesh.nodes[e.a] - mesh.nodes[e.b]).norm();
  for (const auto& t : mesh.triangles)
    vol += tri_area(mesh.nodes[t[0]], mesh.nodes[t[1]], mesh.nodes[t[2]]);
  double c_up = 4.0; // generous corner-constant cap for the shift only
  double shift = -c_up * gamma * gamma - (per / vol) * gamma - 1.0;

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  EigResult res;
  res.dof = n;
  // Inertia check: the shift must sit below the whole spectrum.
  auto factor_below_spectrum = [&](double sh) {
    Eigen::SparseMatrix<double> K = S - sh * M;
    ldlt.compute(K);
    if (ldlt.info() != Eigen::Success)
      throw ConvergenceError("principal_eigenvalue: factorization failed");
    int negatives = 0;
    auto d = ldlt.vectorD();
    for (int i = 0; i < d.size(); ++i)
      if (d[i] < 0) ++negatives;
    return negatives == 0;
  };
  bool bracketed = false;
  for (int attempt = 0; attempt < 8 && !bracketed; ++attempt) {
    bracketed = factor_below_spectrum(shift);
    if (!bracketed) shift *= 4.0;
  }
  if (!bracketed)
    throw ConvergenceError("principal_eigenvalue: could not bracket the spectrum");

  double s_norm = 1e-30;
  for (int k = 0; k < S.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator si(S, k); si; ++si)
      s_norm = std::max(s_norm, std::abs(si.value()));

  Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
  x /= std::sqrt(x.dot(M * x));
  double lambda = 0.0, lambda_old = std::numeric_limits<double>::infinity();
  bool converged = false;
  for (int outer = 0; outer < 6 && !converged; ++outer) {
    for (int it = 0; it < 100; ++it) {
      ++res.iterations;
      Eigen::VectorXd y = ldlt.solve(M * x);
      y /= std::sqrt(y.dot(M * y));
      lambda = y.dot(S * y) / y.dot(M * y);
      x = y;
      Eigen::VectorXd r = S * x - lambda * M * x;
      res.residual =
          r.norm() / (s_norm * x.norm() + std::abs(lambda) * (M * x).norm() + 1e-30);
      if (std::abs(lambda - lambda_old) < 1e-10 * std::max(1.0, std::abs(lambda)) &&
          res.residual < 1e-8) {
        converged = true;
        break;
      }
      lambda_old = lambda;
    }
    if (!converged) {
      // Slow convergence means the initial shift was far from the bottom of
      // the spectrum.  The Rayleigh quotient bounds the lowest eigenvalue
      // from above, so a shift just below it is safe once verified by the
      // factorization inertia.
      double delta = 0.01 * (1.0 + std::abs(lambda));
      int tries = 0;
      while (!factor_below_spectrum(lambda - delta) && tries < 8) {
        delta *= 4.0;
        ++tries;
      }
      if (tries >= 8)
        throw ConvergenceError("principal_eigenvalue: could not bracket the spectrum");
      shift = lambda - delta;
    }
  }
  if (!converged)
    throw ConvergenceError("principal_eigenvalue: inverse iteration stalled");
  res.lambda = lambda;
  return res;
}

SweepResult gamma_sweep(const PlanarPolygon& polygon, const std::vector<double>& gammas,
                        double h) {
  if (gammas.empty()) throw std::invalid_argument("gamma_sweep: empty gamma grid");
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    if (!(gammas[i] > 0.0)) throw std::invalid_argument("gamma_sweep: gamma must be positive");
    if (i > 0 && !(gammas[i] > gammas[i - 1]))
      throw std::invalid_argument("gamma_sweep: gamma grid must be increasing");
  }

  SweepResult out;
  for (double g : gammas) {
    Mesh mesh = mesh_polygon(polygon, h, g);
    EigResult r = principal_eigenvalue(mesh, g);
    out.rows.push_back({g, r.lambda, r.lambda / (g * g), r.dof, r.residual});
  }
  if (out.rows.size() >= 2) {
    // Linear extrapolation of lambda/gamma^2 in 1/gamma from the two
    // largest gamma values.
    const auto& r1 = out.rows[out.rows.size() - 2];
    const auto& r2 = out.rows.back();
    double x1 = 1.0 / r1.gamma, x2 = 1.0 / r2.gamma;
    double intercept = (x1 * r2.ratio - x2 * r1.ratio) / (x1 - x2);
    out.c_est = -intercept;
  } else {
    out.c_est = -out.rows.back().ratio;
  }
  return out;
}

void write_mesh(const Mesh& mesh, std::ostream& os) {
  os.precision(17);
  os << mesh.nodes.size() << "\n";
  for (const auto& p : mesh.nodes) os << p.x() << " " << p.y() << "\n";
  os << mesh.triangles.size() << "\n";
  for (const auto& t : mesh.triangles) os << t[0] << " " << t[1] << " " << t[2] << "\n";
  os << mesh.boundary_edges.size() << "\n";
  for (const auto& e : mesh.boundary_edges) os << e.a << " " << e.b << " " << e.g << "\n";
}

Mesh read_mesh(std::istream& is) {
  Mesh mesh;
  std::size_t n = 0;
  is >> n;
  mesh.nodes.resize(n);
  for (auto& p : mesh.nodes) is >> p.x() >> p.y();
  is >> n;
  mesh.triangles.resize(n);
  for (auto& t : mesh.triangles) is >> t[0] >> t[1] >> t[2];
  is >> n;
  mesh.boundary_edges.resize(n);
  for (auto& e : mesh.boundary_edges) is >> e.a >> e.b >> e.g;
  if (!is) throw MeshError("read_mesh: malformed mesh file");
  for (const auto& t : mesh.triangles)
    for (int e = 0; e < 3; ++e)
      mesh.h_max = std::max(mesh.h_max, (mesh.nodes[t[e]] - mesh.nodes[t[(e + 1) % 3]]).norm());
  for (const auto& e : mesh.boundary_edges)
    mesh.h_boundary = std::max(mesh.h_boundary, (mesh.nodes[e.a] - mesh.nodes[e.b]).norm());
  return mesh;
}

}  // namespace robin
