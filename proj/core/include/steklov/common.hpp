#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

namespace steklov {

/// Failure categories shared across the library. Each maps one-to-one onto a
/// documented error condition of the public operations.
enum class errc {
  alpha_out_of_range,
  dim_too_small,
  singular_evaluation,
  weight_invalid,
  no_root_in_bracket,
  ell_out_of_range,
  degenerate_domain,
  integrability_violation,
  origin_on_boundary,
  integration_failure,
  mesh_failure,
  factorization_failure,
  root_find_failure,
  monotone_cond_violated,
  config_error,
};

const char* errc_name(errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message);
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] void fail(errc code, const std::string& message);

inline void require(bool condition, errc code, const char* message) {
  if (!condition) fail(code, message);
}

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  /// z-component of the 3D cross product; positive when o is ccw from *this.
  double cross(Vec2 o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
  double squared_norm() const { return x * x + y * y; }
  double angle() const { return std::atan2(y, x); }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

/// Volume of the unit ball in R^dim.
double unit_ball_volume(int dim);

/// Surface area of the unit sphere in R^dim (= dim * unit_ball_volume).
double unit_sphere_area(int dim);

/// Pairwise (cascade) summation; deterministic and accurate for long sums.
double pairwise_sum(std::span<const double> values);

}  // namespace steklov
