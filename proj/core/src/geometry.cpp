#include "steklov/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "steklov/quadrature.hpp"

namespace steklov {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t;
}

double polygon_signed_area(const std::vector<Vec2>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    s += v[i].cross(v[(i + 1) % v.size()]);
  }
  return 0.5 * s;
}

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const auto orient = [](Vec2 p, Vec2 q, Vec2 r) {
    const double v = (q - p).cross(r - p);
    return (v > 0.0) - (v < 0.0);
  };
  const int o1 = orient(a, b, c), o2 = orient(a, b, d);
  const int o3 = orient(c, d, a), o4 = orient(c, d, b);
  return o1 != o2 && o3 != o4;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 d = b - a;
  const double len2 = d.squared_norm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(d) / len2, 0.0, 1.0);
  return (p - (a + d * t)).norm();
}

bool point_in_polygon(const std::vector<Vec2>& v, Vec2 p) {
  bool inside = false;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    if ((v[i].y > p.y) != (v[j].y > p.y)) {
      const double xc = v[j].x + (v[i].x - v[j].x) * (p.y - v[j].y) / (v[i].y - v[j].y);
      if (p.x < xc) inside = !inside;
    }
  }
  return inside;
}

}  // namespace

double Domain::boundary_radius(double theta) const {
  double r = cos_coef.empty() ? 0.0 : cos_coef[0];
  for (std::size_t q = 1; q < cos_coef.size(); ++q) r += cos_coef[q] * std::cos(q * theta);
  for (std::size_t q = 1; q < sin_coef.size(); ++q) r += sin_coef[q] * std::sin(q * theta);
  return r;
}

double Domain::boundary_radius_prime(double theta) const {
  double r = 0.0;
  for (std::size_t q = 1; q < cos_coef.size(); ++q) r -= q * cos_coef[q] * std::sin(q * theta);
  for (std::size_t q = 1; q < sin_coef.size(); ++q) r += q * sin_coef[q] * std::cos(q * theta);
  return r;
}

Domain make_polygon(std::vector<Vec2> vertices, bool declared_central,
                    bool declared_quarter_turn) {
  require(vertices.size() >= 3, errc::degenerate_domain, "polygon needs at least 3 vertices");
  Domain dom;
  dom.shape = Domain::Shape::polygon;
  dom.vertices = std::move(vertices);
  dom.declared_central = declared_central;
  dom.declared_quarter_turn = declared_quarter_turn;

  const double area = polygon_signed_area(dom.vertices);
  require(std::abs(area) > 0.0, errc::degenerate_domain, "polygon has zero area");
  if (area < 0.0) std::reverse(dom.vertices.begin(), dom.vertices.end());

  const std::size_t n = dom.vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;  // shared endpoints
      if (segments_intersect(dom.vertices[i], dom.vertices[(i + 1) % n], dom.vertices[j],
                             dom.vertices[(j + 1) % n])) {
        fail(errc::degenerate_domain, "polygon is self-intersecting");
      }
    }
  }

  const double dist = min_boundary_distance(dom);
  if (dist <= 1e-9 * diameter(dom)) {
    fail(errc::origin_on_boundary, "origin lies on (or too close to) the boundary");
  }
  dom.contains_origin = point_in_polygon(dom.vertices, {0.0, 0.0});
  return dom;
}

Domain make_star(std::vector<double> cos_coef, std::vector<double> sin_coef,
                 bool declared_central, bool declared_quarter_turn) {
  require(!cos_coef.empty(), errc::degenerate_domain, "star boundary needs a constant term");
  Domain dom;
  dom.shape = Domain::Shape::star;
  dom.cos_coef = std::move(cos_coef);
  dom.sin_coef = std::move(sin_coef);
  if (dom.sin_coef.size() < dom.cos_coef.size()) dom.sin_coef.resize(dom.cos_coef.size(), 0.0);
  dom.declared_central = declared_central;
  dom.declared_quarter_turn = declared_quarter_turn;
  dom.contains_origin = true;

  double rmin = std::numeric_limits<double>::max(), rmax = 0.0;
  for (int i = 0; i < 4096; ++i) {
    const double r = dom.boundary_radius(kTwoPi * i / 4096);
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
  }
  require(rmin > 1e-9 * (2.0 * rmax), errc::origin_on_boundary,
          "star boundary radius must stay positive");
  return dom;
}

Domain make_disc(double radius) {
  require(radius > 0.0, errc::degenerate_domain, "disc radius must be positive");
  return make_star({radius}, {}, true, true);
}

Domain make_rectangle(double half_width, double half_height) {
  return make_polygon({{half_width, -half_height},
                       {half_width, half_height},
                       {-half_width, half_height},
                       {-half_width, -half_height}},
                      true, half_width == half_height);
}

Domain make_square(double half_side) { return make_rectangle(half_side, half_side); }

Domain make_cross(double arm_half_length, double arm_half_width) {
  require(arm_half_length > arm_half_width && arm_half_width > 0.0, errc::degenerate_domain,
          "cross needs 0 < width < length");
  const double a = arm_half_length, b = arm_half_width;
  return make_polygon({{a, -b},
                       {a, b},
                       {b, b},
                       {b, a},
                       {-b, a},
                       {-b, b},
                       {-a, b},
                       {-a, -b},
                       {-b, -b},
                       {-b, -a},
                       {b, -a},
                       {b, -b}},
                      true, true);
}

Domain dilate(const Domain& dom, double t) {
  require(t > 0.0, errc::degenerate_domain, "dilation factor must be positive");
  Domain out = dom;
  if (dom.shape == Domain::Shape::polygon) {
    for (auto& v : out.vertices) v = v * t;
  } else {
    for (auto& c : out.cos_coef) c *= t;
    for (auto& s : out.sin_coef) s *= t;
  }
  return out;
}

bool contains(const Domain& dom, Vec2 p) {
  if (dom.shape == Domain::Shape::polygon) return point_in_polygon(dom.vertices, p);
  return p.norm() < dom.boundary_radius(p.angle());
}

double max_radius(const Domain& dom) {
  if (dom.shape == Domain::Shape::polygon) {
    double r = 0.0;
    for (const auto& v : dom.vertices) r = std::max(r, v.norm());
    return r;
  }
  double r = 0.0;
  for (int i = 0; i < 8192; ++i) r = std::max(r, dom.boundary_radius(kTwoPi * i / 8192));
  return r;
}

double min_boundary_distance(const Domain& dom) {
  if (dom.shape == Domain::Shape::polygon) {
    double d = std::numeric_limits<double>::max();
    const std::size_t n = dom.vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
      d = std::min(d, point_segment_distance({0, 0}, dom.vertices[i], dom.vertices[(i + 1) % n]));
    }
    return d;
  }
  double d = std::numeric_limits<double>::max();
  for (int i = 0; i < 8192; ++i) d = std::min(d, dom.boundary_radius(kTwoPi * i / 8192));
  return d;
}

double diameter(const Domain& dom) {
  if (dom.shape == Domain::Shape::polygon) {
    double d = 0.0;
    for (std::size_t i = 0; i < dom.vertices.size(); ++i) {
      for (std::size_t j = i + 1; j < dom.vertices.size(); ++j) {
        d = std::max(d, (dom.vertices[i] - dom.vertices[j]).norm());
      }
    }
    return d;
  }
  return 2.0 * max_radius(dom);  // upper bound, adequate for tolerances
}

double ray_boundary_distance(const Domain& dom, double theta) {
  if (dom.shape == Domain::Shape::star) return dom.boundary_radius(theta);
  require(dom.contains_origin, errc::degenerate_domain,
          "ray distance needs the origin inside the domain");
  const Vec2 d{std::cos(theta), std::sin(theta)};
  double best = std::numeric_limits<double>::max();
  const std::size_t n = dom.vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = dom.vertices[i];
    const Vec2 e = dom.vertices[(i + 1) % n] - a;
    const double denom = d.cross(e);
    if (std::abs(denom) < 1e-300) continue;  // ray parallel to edge
    const double t = a.cross(e) / denom;     // along the ray
    const double s = a.cross(d) / denom;     // along the edge… see below
    if (t > 1e-12 && s >= -1e-12 && s <= 1.0 + 1e-12) best = std::min(best, t);
  }
  require(best < std::numeric_limits<double>::max(), errc::degenerate_domain,
          "ray does not meet the boundary");
  return best;
}

bool is_star_shaped_about_origin(const Domain& dom, int n_rays) {
  if (dom.shape == Domain::Shape::star) return true;
  if (!dom.contains_origin) return false;
  const std::size_t n = dom.vertices.size();
  for (int i = 0; i < n_rays; ++i) {
    const double theta = kTwoPi * (i + 0.41421356) / n_rays;  // avoid vertex directions
    const Vec2 d{std::cos(theta), std::sin(theta)};
    int crossings = 0;
    for (std::size_t e = 0; e < n; ++e) {
      const Vec2 a = dom.vertices[e];
      const Vec2 ed = dom.vertices[(e + 1) % n] - a;
      const double denom = d.cross(ed);
      if (std::abs(denom) < 1e-300) continue;
      const double t = a.cross(ed) / denom;
      const double s = a.cross(d) / denom;
      if (t > 0.0 && s >= 0.0 && s < 1.0) ++crossings;
    }
    if (crossings != 1) return false;
  }
  return true;
}

double ArcSet::total_angle() const {
  double s = 0.0;
  for (const auto& [a, b] : intervals) s += b - a;
  return s;
}

namespace {

ArcSet polygon_circle_arcs(const Domain& dom, double r) {
  std::vector<double> crossings;
  const std::size_t n = dom.vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 p0 = dom.vertices[i];
    const Vec2 d = dom.vertices[(i + 1) % n] - p0;
    const double a = d.squared_norm();
    const double b = 2.0 * p0.dot(d);
    const double c = p0.squared_norm() - r * r;
    const double disc = b * b - 4.0 * a * c;
    if (disc <= 0.0 || a == 0.0) continue;
    const double sq = std::sqrt(disc);
    for (const double t : {(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)}) {
      if (t >= 0.0 && t < 1.0) {
        crossings.push_back(wrap_angle((p0 + d * t).angle()));
      }
    }
  }
  ArcSet arcs;
  if (crossings.empty()) {
    if (contains(dom, {r, 0.0})) arcs.intervals.emplace_back(0.0, kTwoPi);
    return arcs;
  }
  std::sort(crossings.begin(), crossings.end());
  // Merge near-duplicates (tangency, vertex-on-circle).
  std::vector<double> unique;
  for (double c : crossings) {
    if (unique.empty() || c - unique.back() > 1e-12) unique.push_back(c);
  }
  if (unique.size() > 1 && unique.front() + kTwoPi - unique.back() <= 1e-12) unique.pop_back();
  const std::size_t m = unique.size();
  for (std::size_t i = 0; i < m; ++i) {
    const double a = unique[i];
    const double b = (i + 1 < m) ? unique[i + 1] : unique[0] + kTwoPi;
    const double mid = 0.5 * (a + b);
    if (contains(dom, {r * std::cos(mid), r * std::sin(mid)})) {
      arcs.intervals.emplace_back(a, b);
    }
  }
  return arcs;
}

ArcSet star_circle_arcs(const Domain& dom, double r, int n_scan) {
  ArcSet arcs;
  std::vector<double> theta(n_scan + 1), g(n_scan + 1);
  for (int i = 0; i <= n_scan; ++i) {
    theta[i] = kTwoPi * i / n_scan;
    g[i] = dom.boundary_radius(theta[i]) - r;
  }
  std::vector<double> crossings;
  for (int i = 0; i < n_scan; ++i) {
    if ((g[i] > 0.0) == (g[i + 1] > 0.0)) continue;
    double lo = theta[i], hi = theta[i + 1];
    double glo = g[i];
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      const double gm = dom.boundary_radius(mid) - r;
      if ((gm > 0.0) == (glo > 0.0)) {
        lo = mid;
        glo = gm;
      } else {
        hi = mid;
      }
    }
    crossings.push_back(0.5 * (lo + hi));
  }
  if (crossings.empty()) {
    if (dom.boundary_radius(0.0) > r) arcs.intervals.emplace_back(0.0, kTwoPi);
    return arcs;
  }
  for (std::size_t i = 0; i < crossings.size(); ++i) {
    const double a = crossings[i];
    const double b =
        (i + 1 < crossings.size()) ? crossings[i + 1] : crossings[0] + kTwoPi;
    const double mid = 0.5 * (a + b);
    if (dom.boundary_radius(mid) > r) arcs.intervals.emplace_back(a, b);
  }
  return arcs;
}

}  // namespace

ArcSet circle_intersection(const Domain& dom, double r, int n_scan) {
  require(r > 0.0, errc::degenerate_domain, "circle radius must be positive");
  if (dom.shape == Domain::Shape::polygon) return polygon_circle_arcs(dom, r);
  return star_circle_arcs(dom, r, n_scan);
}

namespace {

bool polygon_vertices_closed_under(const std::vector<Vec2>& v,
                                   const std::function<Vec2(Vec2)>& map, double tol) {
  for (const auto& p : v) {
    const Vec2 q = map(p);
    bool found = false;
    for (const auto& w : v) {
      if ((w - q).norm() <= tol) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

bool star_coeffs_vanish_unless(const Domain& dom, int modulus) {
  double scale = std::abs(dom.cos_coef[0]);
  for (std::size_t q = 1; q < dom.cos_coef.size(); ++q) {
    if (q % modulus != 0 &&
        (std::abs(dom.cos_coef[q]) > 1e-14 * scale || std::abs(dom.sin_coef[q]) > 1e-14 * scale)) {
      return false;
    }
  }
  return true;
}

bool analytic_symmetry(const Domain& dom, bool quarter_turn) {
  const double tol = 1e-12 * diameter(dom);
  if (dom.shape == Domain::Shape::polygon) {
    if (quarter_turn) {
      return polygon_vertices_closed_under(
          dom.vertices, [](Vec2 p) { return Vec2{-p.y, p.x}; }, tol);
    }
    return polygon_vertices_closed_under(
        dom.vertices, [](Vec2 p) { return Vec2{-p.x, -p.y}; }, tol);
  }
  return star_coeffs_vanish_unless(dom, quarter_turn ? 4 : 2);
}

struct MomentScan {
  double max_dev = 0.0;
  int sampled = 0;
};

template <class PerRadius>
MomentScan scan_radii(const Domain& dom, int n_radii, int n_angles, PerRadius&& per_radius) {
  MomentScan scan;
  const double r_hi = max_radius(dom);
  const double r_lo = dom.contains_origin ? min_boundary_distance(dom)
                                          : std::max(0.0, min_boundary_distance(dom));
  for (int j = 0; j < n_radii; ++j) {
    const double r = r_lo + (r_hi - r_lo) * (j + 0.5) / n_radii;
    const ArcSet arcs = circle_intersection(dom, r, n_angles);
    if (arcs.intervals.empty()) continue;
    scan.max_dev = std::max(scan.max_dev, per_radius(r, arcs));
    ++scan.sampled;
  }
  require(scan.sampled > 0, errc::degenerate_domain, "no sphere slice met the domain");
  return scan;
}

}  // namespace

SymmetryCheck check_s1(const Domain& dom, int n_radii, int n_angles) {
  SymmetryCheck out;
  if (dom.declared_central && analytic_symmetry(dom, false)) {
    out.pass = true;
    out.analytic = true;
    return out;
  }
  const auto scan = scan_radii(dom, n_radii, n_angles, [](double r, const ArcSet& arcs) {
    double mx = 0.0, my = 0.0;
    for (const auto& [a, b] : arcs.intervals) {
      mx += std::sin(b) - std::sin(a);
      my += std::cos(a) - std::cos(b);
    }
    const double arclength = r * arcs.total_angle();
    // First moments are r^2 * integral of (cos, sin); normalize by r * |arc|.
    return std::max(std::abs(mx), std::abs(my)) * r * r / (r * arclength);
  });
  out.max_deviation = scan.max_dev;
  out.radii_sampled = scan.sampled;
  out.pass = scan.max_dev <= 1e-8;
  return out;
}

SymmetryCheck check_s2(const Domain& dom, int n_radii, int n_angles) {
  SymmetryCheck out;
  if (dom.declared_quarter_turn && analytic_symmetry(dom, true)) {
    out.pass = true;
    out.analytic = true;
    return out;
  }
  const auto scan = scan_radii(dom, n_radii, n_angles, [](double /*r*/, const ArcSet& arcs) {
    double ixx = 0.0, iyy = 0.0, ixy = 0.0;
    for (const auto& [a, b] : arcs.intervals) {
      const double half = 0.5 * (b - a);
      const double osc = 0.25 * (std::sin(2.0 * b) - std::sin(2.0 * a));
      ixx += half + osc;
      iyy += half - osc;
      ixy -= 0.25 * (std::cos(2.0 * b) - std::cos(2.0 * a));
    }
    const double c = 0.5 * (ixx + iyy);
    if (c <= 0.0) return 0.0;
    return std::max({std::abs(ixx - c), std::abs(iyy - c), std::abs(ixy)}) / c;
  });
  out.max_deviation = scan.max_dev;
  out.radii_sampled = scan.sampled;
  out.pass = scan.max_dev <= 1e-8;
  return out;
}

namespace {

/// Per-edge boundary integral sum over a polygon: sum of f(edge) where f
/// integrates along the segment adaptively.
double polygon_edge_sum(const Domain& dom,
                        const std::function<double(Vec2, Vec2)>& edge_integral) {
  std::vector<double> parts;
  const std::size_t n = dom.vertices.size();
  parts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    parts.push_back(edge_integral(dom.vertices[i], dom.vertices[(i + 1) % n]));
  }
  return pairwise_sum(parts);
}

}  // namespace

double radial_volume_integral(const Domain& dom,
                              const std::function<double(double)>& primitive) {
  if (dom.shape == Domain::Shape::star) {
    return integrate_adaptive(
        [&](double theta) { return primitive(dom.boundary_radius(theta)); }, 0.0, kTwoPi,
        1e-12);
  }
  // Green identity: int_Omega g(|x|) dx = sum_edges (x . nu) int_edge
  // g-primitive(|x|)/|x|^2 ds, with x . nu constant on each straight edge.
  return polygon_edge_sum(dom, [&](Vec2 a, Vec2 b) {
    const Vec2 d = b - a;
    const double len = d.norm();
    if (len == 0.0) return 0.0;
    const Vec2 nu{d.y / len, -d.x / len};  // outward for ccw loops
    const double dist = a.dot(nu);
    if (dist == 0.0) return 0.0;
    const double integral = integrate_adaptive(
        [&](double t) {
          const Vec2 x = a + d * t;
          return primitive(x.norm()) / x.squared_norm();
        },
        0.0, 1.0, 1e-12);
    return dist * len * integral;
  });
}

double radial_boundary_integral(const Domain& dom, const std::function<double(double)>& g) {
  if (dom.shape == Domain::Shape::star) {
    return integrate_adaptive(
        [&](double theta) {
          const double r = dom.boundary_radius(theta);
          const double rp = dom.boundary_radius_prime(theta);
          return g(r) * std::sqrt(r * r + rp * rp);
        },
        0.0, kTwoPi, 1e-12);
  }
  return polygon_edge_sum(dom, [&](Vec2 a, Vec2 b) {
    const Vec2 d = b - a;
    const double len = d.norm();
    if (len == 0.0) return 0.0;
    return len * integrate_adaptive([&](double t) { return g((a + d * t).norm()); }, 0.0, 1.0,
                                    1e-12);
  });
}

double weighted_volume(const Domain& dom, double ell) {
  require(ell > -2.0, errc::integrability_violation,
          "volume weight exponent must satisfy ell > -2");
  return radial_volume_integral(
      dom, [ell](double t) { return t <= 0.0 ? 0.0 : std::pow(t, ell + 2.0) / (ell + 2.0); });
}

double weighted_perimeter(const Domain& dom, double k) {
  return radial_boundary_integral(dom, [k](double t) { return std::pow(t, k); });
}

double equivalent_radius(double vol_ell, double ell, int dim) {
  require(vol_ell > 0.0, errc::degenerate_domain, "weighted volume must be positive");
  require(ell > -dim, errc::ell_out_of_range, "need ell > -dim");
  const double n_omega = dim * unit_ball_volume(dim);
  return std::pow((ell + dim) * vol_ell / n_omega, 1.0 / (ell + dim));
}

}  // namespace steklov
