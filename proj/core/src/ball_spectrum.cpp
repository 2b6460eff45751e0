#include "steklov/ball_spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace steklov {

double exponent_m(int j, double alpha, int dim, Branch branch) {
  require(j >= 0, errc::degenerate_domain, "mode index must be non-negative");
  const double n = dim;
  const double disc = (n - 2.0 + alpha) * (n - 2.0 + alpha) + 4.0 * j * (j + n - 2.0);
  const double root = std::sqrt(disc);
  const double base = 0.5 * (2.0 - n - alpha);
  return branch == Branch::plus ? base + 0.5 * root : base - 0.5 * root;
}

int spherical_harmonic_multiplicity(int j, int dim) {
  if (j == 0) return 1;
  if (dim == 2) return 2;
  // binom(N+j-1, j) - binom(N+j-3, j-2)
  const auto binom = [](int n, int k) -> long long {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  return static_cast<int>(binom(dim + j - 1, j) - binom(dim + j - 3, j - 2));
}

BallSpectrum power_ball_spectrum(const PowerWeightPair& wp, double radius, int j_max) {
  require(radius > 0.0, errc::degenerate_domain, "ball radius must be positive");
  require(j_max >= 1, errc::degenerate_domain, "need at least the first nontrivial mode");
  BallSpectrum spec;
  spec.radius = radius;
  const double scale = std::pow(radius, wp.alpha - wp.beta - 1.0);
  for (int j = 0; j <= j_max; ++j) {
    const double m = exponent_m(j, wp.alpha, wp.dim, Branch::plus);
    spec.entries.push_back({j, m, m * scale, spherical_harmonic_multiplicity(j, wp.dim)});
  }
  // m1(j) increases with j, so entries are already sorted by eigenvalue.
  return spec;
}

namespace {

struct OdeState {
  double f;
  double fp;
};

/// Right side of the first-order system for (F, F').
OdeState ode_rhs(const LogConvexWeight& w, int dim, double r, OdeState y) {
  const double logd = w.log_deriv(r);
  const double n1 = dim - 1.0;
  return {y.fp, -(logd + n1 / r) * y.fp + n1 * y.f / (r * r)};
}

OdeState rk4_step(const LogConvexWeight& w, int dim, double r, OdeState y, double h) {
  const OdeState k1 = ode_rhs(w, dim, r, y);
  const OdeState k2 = ode_rhs(w, dim, r + 0.5 * h, {y.f + 0.5 * h * k1.f, y.fp + 0.5 * h * k1.fp});
  const OdeState k3 = ode_rhs(w, dim, r + 0.5 * h, {y.f + 0.5 * h * k2.f, y.fp + 0.5 * h * k2.fp});
  const OdeState k4 = ode_rhs(w, dim, r + h, {y.f + h * k3.f, y.fp + h * k3.fp});
  return {y.f + h / 6.0 * (k1.f + 2.0 * k2.f + 2.0 * k3.f + k4.f),
          y.fp + h / 6.0 * (k1.fp + 2.0 * k2.fp + 2.0 * k3.fp + k4.fp)};
}

/// Advance from r0 to r1 with substeps bounded by r/64 so the 1/r
/// coefficients stay resolved near the origin.
OdeState integrate_span(const LogConvexWeight& w, int dim, double r0, double r1, OdeState y) {
  double r = r0;
  int guard = 0;
  while (r < r1) {
    const double h = std::min(r / 64.0, r1 - r);
    y = rk4_step(w, dim, r, y, h);
    r += h;
    if (++guard > 4000000) {
      fail(errc::integration_failure, "step control collapsed in the radial equation");
    }
  }
  return y;
}

}  // namespace

RadialProfile solve_radial_ode(const LogConvexWeight& weight, double R, int dim, int steps,
                               double eps_factor) {
  require(steps >= 128, errc::integration_failure, "need at least 128 output steps");
  require(R > 0.0, errc::degenerate_domain, "radius must be positive");
  const auto cert = validate_log_convex(weight);
  if (!cert.ok) {
    fail(errc::weight_invalid, "weight is not non-decreasing log-convex (" + cert.reason +
                                   " near r = " + std::to_string(cert.violation_r) + ")");
  }
  require(weight.r_max >= R, errc::weight_invalid, "weight horizon smaller than radius");

  RadialProfile profile;
  profile.weight = weight;
  profile.dim = dim;
  profile.eps = R * eps_factor;

  const double h = R / steps;
  profile.grid.push_back(profile.eps);
  profile.F.push_back(profile.eps);
  profile.Fprime.push_back(1.0);

  OdeState y{profile.eps, 1.0};
  double r_prev = profile.eps;
  for (int i = 1; i <= steps; ++i) {
    const double r = i * h;
    if (r <= profile.eps) continue;
    y = integrate_span(weight, dim, r_prev, r, y);
    r_prev = r;
    profile.grid.push_back(r);
    profile.F.push_back(y.f);
    profile.Fprime.push_back(y.fp);
    if (!std::isfinite(y.f) || !std::isfinite(y.fp) || y.f <= 0.0) {
      fail(errc::integration_failure, "radial solution lost positivity or blew up");
    }
  }

  // Residual of the radial equation on the uniform part, F'' from 4th-order
  // central differences of the stored derivative.
  double max_res = 0.0;
  const std::size_t n = profile.grid.size();
  for (std::size_t i = 3; i + 2 < n; ++i) {
    const double r = profile.grid[i];
    const double fpp = (-profile.Fprime[i + 2] + 8.0 * profile.Fprime[i + 1] -
                        8.0 * profile.Fprime[i - 1] + profile.Fprime[i - 2]) /
                       (12.0 * h);
    const double n1 = dim - 1.0;
    const double t1 = weight.log_deriv(r) * profile.Fprime[i];
    const double t2 = n1 * profile.Fprime[i] / r;
    const double t3 = n1 * profile.F[i] / (r * r);
    const double res = fpp + t1 + t2 - t3;
    const double scale = std::abs(fpp) + std::abs(t1) + std::abs(t2) + std::abs(t3);
    if (scale > 0.0) max_res = std::max(max_res, std::abs(res) / scale);
  }
  profile.max_residual = max_res;
  return profile;
}

namespace {

std::size_t grid_interval(const std::vector<double>& grid, double r) {
  auto it = std::upper_bound(grid.begin(), grid.end(), r);
  std::size_t hi = it - grid.begin();
  hi = std::clamp<std::size_t>(hi, 1, grid.size() - 1);
  return hi - 1;
}

}  // namespace

double RadialProfile::value(double r) const {
  if (r <= eps) return F.front() * r / eps;  // regular branch: F ~ c r
  if (r >= grid.back()) return F.back() + Fprime.back() * (r - grid.back());
  const std::size_t i = grid_interval(grid, r);
  const double h = grid[i + 1] - grid[i];
  const double t = (r - grid[i]) / h;
  const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
  const double h10 = t * (1 - t) * (1 - t);
  const double h01 = t * t * (3 - 2 * t);
  const double h11 = t * t * (t - 1);
  return h00 * F[i] + h10 * h * Fprime[i] + h01 * F[i + 1] + h11 * h * Fprime[i + 1];
}

double RadialProfile::derivative(double r) const {
  if (r <= eps) return F.front() / eps;
  if (r >= grid.back()) return Fprime.back();
  const std::size_t i = grid_interval(grid, r);
  const double h = grid[i + 1] - grid[i];
  const double t = (r - grid[i]) / h;
  const double d00 = 6.0 * t * (t - 1) / h;
  const double d10 = (1 - t) * (1 - 3 * t);
  const double d01 = -d00;
  const double d11 = t * (3 * t - 2);
  return d00 * F[i] + d10 * Fprime[i] + d01 * F[i + 1] + d11 * Fprime[i + 1];
}

double logconvex_ball_gamma1(const RadialProfile& profile) {
  return profile.Fprime.back() / profile.F.back();
}

double logconvex_ball_gamma1(const RadialProfile& profile, double r) {
  const double f = profile.value(r);
  require(f > 0.0, errc::integration_failure, "profile not positive at requested radius");
  return profile.derivative(r) / f;
}

MonotoneCertificate profile_monotonicity(const std::vector<double>& grid,
                                         const std::vector<double>& F,
                                         const std::vector<double>& Fprime,
                                         const LogConvexWeight& weight, int dim) {
  const std::size_t n = grid.size();
  const double n1 = dim - 1.0;
  std::vector<double> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = grid[i];
    const double f = F[i];
    const double fp = Fprime[i];
    a[i] = fp * fp + n1 * f * f / (r * r);
    b[i] = n1 * f * f / r + 2.0 * f * fp + weight.log_deriv(r) * f * f;
  }
  double scale_a = 0.0, scale_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    scale_a = std::max(scale_a, std::abs(a[i]));
    scale_b = std::max(scale_b, std::abs(b[i]));
  }
  MonotoneCertificate cert;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (a[i + 1] > a[i] + 1e-8 * scale_a) {
      return {false, "A", grid[i + 1], a[i + 1] - a[i]};
    }
    if (b[i + 1] < b[i] - 1e-8 * scale_b) {
      return {false, "B", grid[i + 1], b[i] - b[i + 1]};
    }
  }
  return cert;
}

MonotoneCertificate profile_monotonicity(const RadialProfile& profile) {
  return profile_monotonicity(profile.grid, profile.F, profile.Fprime, profile.weight,
                              profile.dim);
}

}  // namespace steklov
