#include "steklov/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

namespace steklov {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::pair<int, int> edge_key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

double triangle_min_angle(Vec2 a, Vec2 b, Vec2 c) {
  const double la = (b - c).norm(), lb = (c - a).norm(), lc = (a - b).norm();
  const auto angle = [](double opp, double s1, double s2) {
    const double cosv = std::clamp((s1 * s1 + s2 * s2 - opp * opp) / (2.0 * s1 * s2), -1.0, 1.0);
    return std::acos(cosv);
  };
  const double amin = std::min({angle(la, lb, lc), angle(lb, lc, la), angle(lc, la, lb)});
  return amin * 180.0 / std::numbers::pi;
}

/// Boundary sample points in ccw order, spaced at most h apart by arclength;
/// polygon corners are kept exactly. Subdivision points carry a tiny
/// deterministic jitter (tangential on polygon edges, radial ~1e-9 on star
/// curves) so that symmetric inputs do not produce exactly cocircular sets.
std::vector<Vec2> boundary_samples(const Domain& dom, double h) {
  std::vector<Vec2> pts;
  std::mt19937 rng(0xb0d1);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  if (dom.shape == Domain::Shape::polygon) {
    const std::size_t n = dom.vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 a = dom.vertices[i];
      const Vec2 b = dom.vertices[(i + 1) % n];
      const int pieces = std::max(1, static_cast<int>(std::ceil((b - a).norm() / h)));
      pts.push_back(a);
      for (int k = 1; k < pieces; ++k) {
        const double t = (k + 1e-5 * unit(rng)) / pieces;
        pts.push_back(a + (b - a) * t);
      }
    }
    return pts;
  }
  // Equidistribute by arclength of the closed curve theta -> R(theta) e(theta).
  const int fine = 1 << 14;
  std::vector<double> cumulative(fine + 1, 0.0);
  for (int i = 0; i < fine; ++i) {
    const double theta = kTwoPi * (i + 0.5) / fine;
    const double r = dom.boundary_radius(theta);
    const double rp = dom.boundary_radius_prime(theta);
    cumulative[i + 1] = cumulative[i] + std::sqrt(r * r + rp * rp) * kTwoPi / fine;
  }
  const double total = cumulative.back();
  const int m = std::max(8, static_cast<int>(std::ceil(total / h)));
  std::size_t cursor = 0;
  for (int k = 0; k < m; ++k) {
    const double target = total * k / m;
    while (cursor + 1 < cumulative.size() && cumulative[cursor + 1] < target) ++cursor;
    const double seg = cumulative[cursor + 1] - cumulative[cursor];
    const double frac = seg > 0.0 ? (target - cumulative[cursor]) / seg : 0.0;
    const double theta = kTwoPi * (cursor + frac) / fine;
    const double r = dom.boundary_radius(theta) * (1.0 - 1e-9 * std::abs(unit(rng)));
    pts.push_back({r * std::cos(theta), r * std::sin(theta)});
  }
  return pts;
}

double distance_to_boundary(const Domain& dom, Vec2 p, double slope_bound) {
  if (dom.shape == Domain::Shape::polygon) {
    double d = std::numeric_limits<double>::max();
    const std::size_t n = dom.vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 a = dom.vertices[i];
      const Vec2 b = dom.vertices[(i + 1) % n];
      const Vec2 e = b - a;
      const double t = std::clamp((p - a).dot(e) / e.squared_norm(), 0.0, 1.0);
      d = std::min(d, (p - (a + e * t)).norm());
    }
    return d;
  }
  // Conservative bound through the radial gap and the curve slope.
  const double gap = dom.boundary_radius(p.angle()) - p.norm();
  return gap / std::sqrt(1.0 + slope_bound * slope_bound);
}

/// Bowyer-Watson incremental Delaunay triangulation.
class Delaunay {
 public:
  explicit Delaunay(double extent) {
    // Enclosing super-triangle; its vertices use negative indices -1,-2,-3
    // mapped to slots 0,1,2 of the local store.
    const double s = 64.0 * extent + 64.0;
    points_ = {{-s, -s}, {s, -s}, {0.0, s}};
    tris_.push_back(make_tri(0, 1, 2));
  }

  void insert(Vec2 p) {
    const int id = static_cast<int>(points_.size());
    points_.push_back(p);
    std::vector<int> bad;
    for (std::size_t t = 0; t < tris_.size(); ++t) {
      if (tris_[t].alive && in_circle(tris_[t], p)) bad.push_back(static_cast<int>(t));
    }
    if (bad.empty()) {
      // Cocircular corner case: p sits on the circumcircle of the triangle
      // containing it; fall back to that triangle as the cavity.
      const int host = find_containing(p);
      require(host >= 0, errc::mesh_failure, "point location failed during triangulation");
      bad.push_back(host);
    }
    // Boundary of the cavity: edges used by exactly one bad triangle.
    std::map<std::pair<int, int>, std::pair<int, int>> edges;  // sorted -> oriented
    for (int t : bad) {
      const auto& tr = tris_[t];
      const int v[3] = {tr.a, tr.b, tr.c};
      for (int e = 0; e < 3; ++e) {
        const int u = v[e], w = v[(e + 1) % 3];
        const auto key = edge_key(u, w);
        auto it = edges.find(key);
        if (it == edges.end()) {
          edges.emplace(key, std::make_pair(u, w));
        } else {
          edges.erase(it);
        }
      }
      tris_[t].alive = false;
    }
    for (const auto& [key, oriented] : edges) {
      tris_.push_back(make_tri(oriented.first, oriented.second, id));
    }
  }

  /// Kept triangles as indices into the inserted points (super vertices
  /// dropped), ccw.
  std::vector<std::array<int, 3>> triangles() const {
    std::vector<std::array<int, 3>> out;
    for (const auto& t : tris_) {
      if (!t.alive || t.a < 3 || t.b < 3 || t.c < 3) continue;
      out.push_back({t.a - 3, t.b - 3, t.c - 3});
    }
    return out;
  }

 private:
  struct Tri {
    int a, b, c;
    double cx, cy, r2;
    bool alive = true;
  };

  Tri make_tri(int a, int b, int c) {
    // Orient ccw, then cache the circumcircle.
    const Vec2 pa = points_[a], pb = points_[b], pc = points_[c];
    if ((pb - pa).cross(pc - pa) < 0.0) std::swap(b, c);
    const Vec2 A = points_[a], B = points_[b], C = points_[c];
    const double d = 2.0 * (A.x * (B.y - C.y) + B.x * (C.y - A.y) + C.x * (A.y - B.y));
    Tri t{a, b, c, 0.0, 0.0, std::numeric_limits<double>::max(), true};
    if (d != 0.0) {
      const double a2 = A.squared_norm(), b2 = B.squared_norm(), c2 = C.squared_norm();
      t.cx = (a2 * (B.y - C.y) + b2 * (C.y - A.y) + c2 * (A.y - B.y)) / d;
      t.cy = (a2 * (C.x - B.x) + b2 * (A.x - C.x) + c2 * (B.x - A.x)) / d;
      t.r2 = (A.x - t.cx) * (A.x - t.cx) + (A.y - t.cy) * (A.y - t.cy);
    }
    return t;
  }

  bool in_circle(const Tri& t, Vec2 p) const {
    // Strictly-inside with a relative margin: cocircular points count as
    // outside, which keeps cavities consistent on symmetric inputs.
    const double dx = p.x - t.cx, dy = p.y - t.cy;
    return dx * dx + dy * dy < t.r2 * (1.0 - 1e-12);
  }

  int find_containing(Vec2 p) const {
    for (std::size_t t = 0; t < tris_.size(); ++t) {
      if (!tris_[t].alive) continue;
      const Vec2 a = points_[tris_[t].a], b = points_[tris_[t].b], c = points_[tris_[t].c];
      const double s = (b - a).cross(c - a);
      const double tol = -1e-12 * std::abs(s);
      if ((b - a).cross(p - a) >= tol && (c - b).cross(p - b) >= tol &&
          (a - c).cross(p - c) >= tol) {
        return static_cast<int>(t);
      }
    }
    return -1;
  }

  std::vector<Vec2> points_;
  std::vector<Tri> tris_;
};

bool mesh_is_valid(const Mesh& mesh) {
  for (const auto& t : mesh.triangles) {
    const double area2 = (mesh.vertices[t[1]] - mesh.vertices[t[0]])
                             .cross(mesh.vertices[t[2]] - mesh.vertices[t[0]]);
    if (!(area2 > 0.0)) return false;
  }
  return true;
}

/// Damped Jacobi smoothing of interior vertices (origin and boundary pinned);
/// keeps a sweep only while it does not degrade validity or the worst angle.
void smooth_interior(Mesh& mesh, int sweeps) {
  const std::size_t n = mesh.vertices.size();
  std::vector<bool> pinned(n, false);
  if (mesh.origin_vertex >= 0) pinned[mesh.origin_vertex] = true;
  for (const auto& e : mesh.boundary_edges) pinned[e[0]] = pinned[e[1]] = true;

  std::vector<std::vector<int>> nbrs(n);
  for (const auto& t : mesh.triangles) {
    for (int i = 0; i < 3; ++i) {
      nbrs[t[i]].push_back(t[(i + 1) % 3]);
      nbrs[t[i]].push_back(t[(i + 2) % 3]);
    }
  }
  for (auto& list : nbrs) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }

  double best_angle = mesh.min_angle();
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    std::vector<Vec2> next = mesh.vertices;
    for (std::size_t v = 0; v < n; ++v) {
      if (pinned[v] || nbrs[v].empty()) continue;
      Vec2 mean{0.0, 0.0};
      for (int u : nbrs[v]) mean = mean + mesh.vertices[u];
      mean = mean / static_cast<double>(nbrs[v].size());
      next[v] = mesh.vertices[v] + (mean - mesh.vertices[v]) * 0.5;
    }
    const std::vector<Vec2> prev = std::move(mesh.vertices);
    mesh.vertices = std::move(next);
    const double angle = mesh_is_valid(mesh) ? mesh.min_angle() : -1.0;
    if (angle < best_angle) {
      mesh.vertices = prev;
      return;
    }
    best_angle = angle;
  }
}

}  // namespace

double Mesh::min_angle() const {
  double amin = 180.0;
  for (const auto& t : triangles) {
    amin = std::min(amin, triangle_min_angle(vertices[t[0]], vertices[t[1]], vertices[t[2]]));
  }
  return amin;
}

Mesh triangulate(const Domain& dom, double h) {
  require(h > 0.0, errc::mesh_failure, "mesh size must be positive");
  if (h >= diameter(dom) / 4.0) {
    fail(errc::mesh_failure, "mesh size must be below a quarter of the diameter");
  }

  Mesh mesh;
  mesh.h = h;
  const std::vector<Vec2> boundary = boundary_samples(dom, h);
  const int nb = static_cast<int>(boundary.size());
  mesh.vertices = boundary;

  double slope_bound = 0.0;
  if (dom.shape == Domain::Shape::star) {
    for (int i = 0; i < 4096; ++i) {
      const double theta = kTwoPi * i / 4096;
      slope_bound = std::max(
          slope_bound, std::abs(dom.boundary_radius_prime(theta) / dom.boundary_radius(theta)));
    }
  }

  // Interior points: origin-centered hexagonal lattice with spacing h, kept
  // at a clearance from the boundary; tiny deterministic jitter breaks
  // cocircular degeneracies.
  const double clearance = 0.6 * h;
  const double row = h * std::numbers::sqrt3 / 2.0;
  const double r_max = max_radius(dom);
  const int jmax = static_cast<int>(std::ceil(r_max / row)) + 1;
  const int imax = static_cast<int>(std::ceil(r_max / h)) + 1;
  std::mt19937 rng(0x5eed);
  std::uniform_real_distribution<double> jitter(-0.02 * h, 0.02 * h);
  for (int j = -jmax; j <= jmax; ++j) {
    for (int i = -imax; i <= imax; ++i) {
      Vec2 p{i * h + (j & 1 ? 0.5 * h : 0.0), j * row};
      const bool is_origin = i == 0 && j == 0;
      if (!is_origin) p = p + Vec2{jitter(rng), jitter(rng)};
      if (!contains(dom, p)) continue;
      if (distance_to_boundary(dom, p, slope_bound) < clearance) continue;
      if (is_origin) mesh.origin_vertex = static_cast<int>(mesh.vertices.size());
      mesh.vertices.push_back(p);
    }
  }

  Delaunay delaunay(r_max);
  for (const auto& p : mesh.vertices) delaunay.insert(p);

  // Keep triangles whose centroid lies inside the domain.
  for (const auto& t : delaunay.triangles()) {
    const Vec2 centroid =
        (mesh.vertices[t[0]] + mesh.vertices[t[1]] + mesh.vertices[t[2]]) / 3.0;
    if (contains(dom, centroid)) mesh.triangles.push_back(t);
  }

  // The boundary polyline must be covered by mesh edges.
  std::map<std::pair<int, int>, int> edge_use;
  for (const auto& t : mesh.triangles) {
    for (int e = 0; e < 3; ++e) {
      ++edge_use[edge_key(t[e], t[(e + 1) % 3])];
    }
  }
  for (int k = 0; k < nb; ++k) {
    const auto key = edge_key(k, (k + 1) % nb);
    const auto it = edge_use.find(key);
    if (it == edge_use.end() || it->second != 1) {
      fail(errc::mesh_failure,
           "triangulation does not conform to the boundary (segment " + std::to_string(k) +
               ", use count " + std::to_string(it == edge_use.end() ? 0 : it->second) + ")");
    }
    mesh.boundary_edges.push_back({k, (k + 1) % nb});
  }
  for (const auto& [key, count] : edge_use) {
    if (count == 1 && (key.second >= nb || key.second - key.first != 1) &&
        !(key.first == 0 && key.second == nb - 1)) {
      fail(errc::mesh_failure, "mesh has free edges away from the boundary");
    }
  }

  if (!mesh_is_valid(mesh)) fail(errc::mesh_failure, "degenerate triangle produced");
  smooth_interior(mesh, 12);
  mesh.min_angle_deg = mesh.min_angle();
  return mesh;
}

Mesh refine_uniform(const Mesh& mesh) {
  Mesh out;
  out.h = mesh.h / 2.0;
  out.origin_vertex = mesh.origin_vertex;
  out.vertices = mesh.vertices;

  std::map<std::pair<int, int>, int> midpoint;
  const auto mid_id = [&](int a, int b) {
    const auto key = edge_key(a, b);
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    const int id = static_cast<int>(out.vertices.size());
    out.vertices.push_back((mesh.vertices[a] + mesh.vertices[b]) * 0.5);
    midpoint.emplace(key, id);
    return id;
  };

  for (const auto& t : mesh.triangles) {
    const int m01 = mid_id(t[0], t[1]);
    const int m12 = mid_id(t[1], t[2]);
    const int m20 = mid_id(t[2], t[0]);
    out.triangles.push_back({t[0], m01, m20});
    out.triangles.push_back({t[1], m12, m01});
    out.triangles.push_back({t[2], m20, m12});
    out.triangles.push_back({m01, m12, m20});
  }
  for (const auto& e : mesh.boundary_edges) {
    const int m = mid_id(e[0], e[1]);
    out.boundary_edges.push_back({e[0], m});
    out.boundary_edges.push_back({m, e[1]});
  }
  out.min_angle_deg = out.min_angle();
  return out;
}

}  // namespace steklov
