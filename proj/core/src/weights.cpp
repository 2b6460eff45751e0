#include "steklov/weights.hpp"

#include <algorithm>
#include <cmath>

#include "steklov/quadrature.hpp"

namespace steklov {

PowerWeightPair make_power_pair(double alpha, double beta, int dim) {
  require(dim >= 2, errc::dim_too_small, "dimension must be at least 2");
  if (!(alpha > -dim)) {
    fail(errc::alpha_out_of_range,
         "interior exponent must satisfy alpha > -dim, got alpha = " + std::to_string(alpha) +
             ", dim = " + std::to_string(dim));
  }
  return PowerWeightPair{alpha, beta, dim};
}

namespace {

double power_of_radius(double exponent, double r) {
  if (r == 0.0) {
    if (exponent < 0.0) {
      fail(errc::singular_evaluation, "negative power weight evaluated at the origin");
    }
    return exponent == 0.0 ? 1.0 : 0.0;
  }
  return std::pow(r, exponent);
}

}  // namespace

double eval_interior_weight(const PowerWeightPair& wp, double r) {
  return power_of_radius(wp.alpha, r);
}

double eval_interior_weight(const PowerWeightPair& wp, Vec2 x) {
  return eval_interior_weight(wp, x.norm());
}

double eval_boundary_density(const PowerWeightPair& wp, double r) {
  return power_of_radius(wp.beta, r);
}

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  require(n >= 3 && y_.size() == n, errc::weight_invalid, "spline needs at least 3 knots");
  for (std::size_t i = 1; i < n; ++i) {
    require(x_[i] > x_[i - 1], errc::weight_invalid, "spline knots must increase");
  }
  // Natural end conditions; tridiagonal solve for second derivatives.
  m_.assign(n, 0.0);
  std::vector<double> u(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double sig = (x_[i] - x_[i - 1]) / (x_[i + 1] - x_[i - 1]);
    const double pden = sig * m_[i - 1] + 2.0;
    m_[i] = (sig - 1.0) / pden;
    u[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]) - (y_[i] - y_[i - 1]) / (x_[i] - x_[i - 1]);
    u[i] = (6.0 * u[i] / (x_[i + 1] - x_[i - 1]) - sig * u[i - 1]) / pden;
  }
  for (std::size_t i = n - 1; i-- > 1;) {
    m_[i] = m_[i] * m_[i + 1] + u[i];
  }
  m_[0] = m_[n - 1] = 0.0;
}

double CubicSpline::value(double x) const {
  const std::size_t n = x_.size();
  std::size_t hi = std::upper_bound(x_.begin(), x_.end(), x) - x_.begin();
  hi = std::clamp<std::size_t>(hi, 1, n - 1);
  const std::size_t lo = hi - 1;
  const double h = x_[hi] - x_[lo];
  const double a = (x_[hi] - x) / h;
  const double b = (x - x_[lo]) / h;
  return a * y_[lo] + b * y_[hi] +
         ((a * a * a - a) * m_[lo] + (b * b * b - b) * m_[hi]) * h * h / 6.0;
}

double CubicSpline::derivative(double x) const {
  const std::size_t n = x_.size();
  std::size_t hi = std::upper_bound(x_.begin(), x_.end(), x) - x_.begin();
  hi = std::clamp<std::size_t>(hi, 1, n - 1);
  const std::size_t lo = hi - 1;
  const double h = x_[hi] - x_[lo];
  const double a = (x_[hi] - x) / h;
  const double b = (x - x_[lo]) / h;
  return (y_[hi] - y_[lo]) / h +
         ((3.0 * b * b - 1.0) * m_[hi] - (3.0 * a * a - 1.0) * m_[lo]) * h / 6.0;
}

double LogConvexWeight::potential(double r) const {
  switch (family) {
    case Family::constant: return c;
    case Family::quadratic: return a * r * r;
    case Family::power: return a * std::pow(r, p);
    case Family::spline: return spline.value(r);
  }
  return 0.0;
}

double LogConvexWeight::potential_prime(double r) const {
  switch (family) {
    case Family::constant: return 0.0;
    case Family::quadratic: return 2.0 * a * r;
    case Family::power: return r > 0.0 ? a * p * std::pow(r, p - 1.0) : (p == 1.0 ? a : 0.0);
    case Family::spline: return spline.derivative(r);
  }
  return 0.0;
}

double LogConvexWeight::value(double r) const { return std::exp(potential(r)); }

std::string LogConvexWeight::family_name() const {
  switch (family) {
    case Family::constant: return "constant";
    case Family::quadratic: return "quadratic";
    case Family::power: return "power";
    case Family::spline: return "spline";
  }
  return "?";
}

LogConvexWeight make_constant_weight(double c, double r_max) {
  LogConvexWeight w;
  w.family = LogConvexWeight::Family::constant;
  w.c = c;
  w.r_max = r_max;
  return w;
}

LogConvexWeight make_quadratic_weight(double a, double r_max) {
  LogConvexWeight w;
  w.family = LogConvexWeight::Family::quadratic;
  w.a = a;
  w.r_max = r_max;
  return w;
}

LogConvexWeight make_power_potential_weight(double a, double p, double r_max) {
  LogConvexWeight w;
  w.family = LogConvexWeight::Family::power;
  w.a = a;
  w.p = p;
  w.r_max = r_max;
  return w;
}

LogConvexWeight make_spline_weight(std::vector<double> r, std::vector<double> v) {
  LogConvexWeight w;
  w.family = LogConvexWeight::Family::spline;
  require(!r.empty(), errc::weight_invalid, "empty spline table");
  require(r.front() == 0.0, errc::weight_invalid, "spline table must start at r = 0");
  w.r_max = r.back();
  w.spline = CubicSpline(std::move(r), std::move(v));
  return w;
}

double eval_interior_weight(const LogConvexWeight& w, double r) { return w.value(r); }

double eval_interior_weight(const LogConvexWeight& w, Vec2 x) { return w.value(x.norm()); }

LogConvexCertificate validate_log_convex(const LogConvexWeight& w, int grid_size) {
  require(grid_size >= 16, errc::weight_invalid, "validation grid too coarse");
  LogConvexCertificate cert;

  const double h = w.r_max / grid_size;
  double scale = 0.0;
  for (int i = 0; i <= grid_size; ++i) {
    scale = std::max(scale, std::abs(w.potential(i * h)));
  }
  scale = std::max(1.0, scale);
  const double tol_slope = 1e-10 * scale;
  // Second differences amplify rounding by 1/h^2; keep the tolerance above
  // that noise floor.
  const double tol_curv = 1e-10 * scale + 64.0 * 2.2e-16 * scale / (h * h);

  const bool tabulated = w.family == LogConvexWeight::Family::spline;
  for (int i = 1; i < grid_size; ++i) {
    const double r = i * h;
    double vp, vpp;
    if (tabulated) {
      // Divided differences avoid end-condition artifacts of the spline.
      vp = (w.potential(r + h) - w.potential(r - h)) / (2.0 * h);
      vpp = (w.potential(r + h) - 2.0 * w.potential(r) + w.potential(r - h)) / (h * h);
    } else {
      vp = w.potential_prime(r);
      const double dr = std::max(1e-5 * w.r_max, 1e-9);
      vpp = (w.potential_prime(r + dr) - w.potential_prime(r - dr)) / (2.0 * dr);
    }
    if (vp < -tol_slope) {
      return {false, r, "decreasing"};
    }
    if (vpp < -tol_curv) {
      return {false, r, "not log-convex"};
    }
  }
  return cert;
}

double radial_volume_primitive(const LogConvexWeight& w, double t, int dim) {
  if (t <= 0.0) return 0.0;
  if (dim == 2) {
    switch (w.family) {
      case LogConvexWeight::Family::constant:
        return std::exp(w.c) * 0.5 * t * t;
      case LogConvexWeight::Family::quadratic:
        if (w.a != 0.0) return (std::exp(w.a * t * t) - 1.0) / (2.0 * w.a);
        return 0.5 * t * t;
      default: break;
    }
  }
  return integrate_adaptive(
      [&](double s) { return std::pow(s, dim - 1) * w.value(s); }, 0.0, t, 1e-13);
}

}  // namespace steklov
