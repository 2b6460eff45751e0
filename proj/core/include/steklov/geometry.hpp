#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "steklov/common.hpp"

namespace steklov {

/// Planar domain, either a simple polygon (ccw vertex loop) or a star-shaped
/// region with Fourier boundary R(theta) = a0 + sum_q (a_q cos q theta +
/// b_q sin q theta), R > 0. The origin must not lie on the boundary.
struct Domain {
  enum class Shape { polygon, star };

  Shape shape = Shape::polygon;
  std::vector<Vec2> vertices;      // polygon only
  std::vector<double> cos_coef;    // star only; cos_coef[0] = a0
  std::vector<double> sin_coef;    // star only; sin_coef[0] unused
  bool contains_origin = false;
  bool declared_central = false;
  bool declared_quarter_turn = false;

  double boundary_radius(double theta) const;        // star representation
  double boundary_radius_prime(double theta) const;  // dR/dtheta
};

Domain make_polygon(std::vector<Vec2> vertices, bool declared_central = false,
                    bool declared_quarter_turn = false);
Domain make_star(std::vector<double> cos_coef, std::vector<double> sin_coef,
                 bool declared_central = false, bool declared_quarter_turn = false);

Domain make_disc(double radius);
Domain make_rectangle(double half_width, double half_height);
Domain make_square(double half_side);
/// Plus-shaped union of two centered rectangles (quarter-turn symmetric).
Domain make_cross(double arm_half_length, double arm_half_width);

/// Uniformly scaled copy t * Omega (origin-centered dilation).
Domain dilate(const Domain& dom, double t);

bool contains(const Domain& dom, Vec2 p);
double max_radius(const Domain& dom);
double min_boundary_distance(const Domain& dom);
double diameter(const Domain& dom);

/// Distance from the origin to the boundary along direction theta (nearest
/// crossing). Requires the origin inside the domain.
double ray_boundary_distance(const Domain& dom, double theta);

/// True when every ray from the (interior) origin crosses the boundary once.
bool is_star_shaped_about_origin(const Domain& dom, int n_rays = 1024);

/// Angular intervals of { theta : r e(theta) in Omega } on the circle of
/// radius r. Exact edge-circle intersections for polygons, sign-scan plus
/// bisection on R(theta) - r for star boundaries.
struct ArcSet {
  std::vector<std::pair<double, double>> intervals;  // (begin, end), begin < end
  double total_angle() const;
};
ArcSet circle_intersection(const Domain& dom, double r, int n_scan = 512);

struct SymmetryCheck {
  bool pass = false;
  bool analytic = false;      // certified on the representation itself
  double max_deviation = 0.0; // largest relative moment deviation (numeric path)
  int radii_sampled = 0;
};

struct SymmetryCertificate {
  SymmetryCheck s1, s2;
};

/// Balanced-slice condition: all first moments of Omega cut with each sphere
/// vanish. Analytic pass for representations exactly symmetric under
/// x -> -x; otherwise sampled arc moments with relative tolerance 1e-8.
SymmetryCheck check_s1(const Domain& dom, int n_radii = 24, int n_angles = 512);

/// Isotropic-slice condition: second moments of each spherical slice are a
/// multiple of the identity. Analytic pass for quarter-turn symmetric
/// representations; otherwise sampled arc moments, tolerance 1e-8 relative.
SymmetryCheck check_s2(const Domain& dom, int n_radii = 24, int n_angles = 512);

/// int_Omega |x|^ell dx, ell > -2.
double weighted_volume(const Domain& dom, double ell);

/// int_{boundary} |x|^k dH^1.
double weighted_perimeter(const Domain& dom, double k);

/// Radius R of the origin-centered ball with the same ell-weighted volume:
/// R = ((ell+N) vol / (N omega_N))^(1/(ell+N)).
double equivalent_radius(double vol_ell, double ell, int dim);

/// int_Omega g(|x|) dx given the primitive Q(t) = int_0^t s g(s) ds.
double radial_volume_integral(const Domain& dom,
                              const std::function<double(double)>& primitive);

/// int_{boundary} g(|x|) dH^1.
double radial_boundary_integral(const Domain& dom,
                                const std::function<double(double)>& g);

}  // namespace steklov
