#include "steklov/isoperimetry.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "steklov/quadrature.hpp"

namespace steklov {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

double isop_constant(double k, double ell, int dim) {
  require(ell > -dim, errc::ell_out_of_range, "need ell > -dim");
  const double n_omega = dim * unit_ball_volume(dim);
  const double denom = ell + dim;
  return std::pow(n_omega, (ell - k + 1.0) / denom) * std::pow(denom, (k + dim - 1.0) / denom);
}

IsopMargin check_isop(const Domain& dom, double k, double ell, int dim) {
  require(dim == 2, errc::degenerate_domain, "domain quadrature is planar only");
  IsopMargin out;
  out.condition = classify_lemma21(k, ell, dim);
  out.supported = out.condition != LemmaCase::none;

  const double vol = weighted_volume(dom, ell);
  out.lhs = weighted_perimeter(dom, k);
  out.rhs = isop_constant(k, ell, dim) * std::pow(vol, (k + dim - 1.0) / (ell + dim));
  out.margin = out.lhs - out.rhs;
  out.relative_margin = out.margin / out.lhs;

  out.equivalent_R = equivalent_radius(vol, ell, dim);
  out.ball_perimeter =
      dim * unit_ball_volume(dim) * std::pow(out.equivalent_R, k + dim - 1.0);
  out.ball_margin = out.lhs - out.ball_perimeter;
  return out;
}

RadialFunction constant_function(double c) {
  return {[c](double) { return c; }, {}, "constant"};
}

RadialFunction power_function(double coef, double exponent) {
  return {[=](double r) { return coef * std::pow(r, exponent); }, {}, "power"};
}

RadialFunction step_function(std::vector<double> breaks, std::vector<double> values) {
  require(values.size() == breaks.size() + 1, errc::config_error,
          "step function needs one more value than breakpoints");
  for (std::size_t i = 1; i < breaks.size(); ++i) {
    require(breaks[i] > breaks[i - 1], errc::config_error, "breakpoints must increase");
  }
  auto eval = [breaks, values](double r) {
    std::size_t i = std::upper_bound(breaks.begin(), breaks.end(), r) - breaks.begin();
    return values[i];
  };
  return {std::move(eval), std::move(breaks), "step"};
}

bool is_non_decreasing(const RadialFunction& H, double r_max, int grid) {
  std::vector<double> vals(grid + 1);
  double scale = 0.0;
  for (int i = 0; i <= grid; ++i) {
    vals[i] = H.eval(r_max * i / grid);
    if (!std::isfinite(vals[i])) return false;
    scale = std::max(scale, std::abs(vals[i]));
  }
  const double tol = 1e-12 * std::max(1.0, scale);
  for (int i = 1; i <= grid; ++i) {
    if (vals[i] < vals[i - 1] - tol) return false;
  }
  return true;
}

namespace {

/// int_a^b s g(s) W(s) ds split at the jump points of g.
double radial_line_integral(const std::function<double(double)>& g,
                            const std::vector<double>& breaks, const LogConvexWeight& w,
                            double a, double b) {
  std::vector<double> cuts{a};
  for (double c : breaks) {
    if (c > a && c < b) cuts.push_back(c);
  }
  cuts.push_back(b);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    // Open the panel slightly inside the jumps so the integrand is smooth.
    sum += integrate_adaptive([&](double s) { return s * g(s) * w.value(s); }, cuts[i],
                              cuts[i + 1], 1e-12);
  }
  return sum;
}

double sector_union_integral(const std::vector<AnnularSector>& sectors,
                             const std::function<double(double)>& g,
                             const std::vector<double>& breaks, const LogConvexWeight& w) {
  double sum = 0.0;
  for (const auto& s : sectors) {
    require(s.r1 > s.r0 && s.r0 >= 0.0 && s.theta1 > s.theta0, errc::degenerate_domain,
            "invalid annular sector");
    sum += (s.theta1 - s.theta0) * radial_line_integral(g, breaks, w, s.r0, s.r1);
  }
  return sum;
}

double set_radius_bound(const MeasurableSet& set) {
  if (const auto* dom = std::get_if<Domain>(&set)) return max_radius(*dom);
  double r = 0.0;
  for (const auto& s : std::get<std::vector<AnnularSector>>(set)) r = std::max(r, s.r1);
  return r;
}

double set_weighted_integral(const MeasurableSet& set, const std::function<double(double)>& g,
                             const std::vector<double>& breaks, const LogConvexWeight& w) {
  if (const auto* dom = std::get_if<Domain>(&set)) {
    return radial_volume_integral(
        *dom, [&](double t) { return radial_line_integral(g, breaks, w, 0.0, t); });
  }
  return sector_union_integral(std::get<std::vector<AnnularSector>>(set), g, breaks, w);
}

/// Solve 2 pi Q_W(R) = target for R on [0, r_hi]; Q_W is strictly increasing.
double invert_ball_measure(const LogConvexWeight& w, double target, double r_hi) {
  require(target > 0.0, errc::root_find_failure, "measure must be positive");
  double hi = r_hi;
  int guard = 0;
  while (kTwoPi * radial_volume_primitive(w, hi) < target) {
    hi *= 2.0;
    if (++guard > 200) fail(errc::root_find_failure, "could not bracket the equal-measure radius");
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (kTwoPi * radial_volume_primitive(w, mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double mu_measure(const MeasurableSet& set, const LogConvexWeight& weight) {
  return set_weighted_integral(set, [](double) { return 1.0; }, {}, weight);
}

HLResult check_hardy_littlewood(const MeasurableSet& M, const RadialFunction& H,
                                const LogConvexWeight& mu_weight) {
  const double r_bound = set_radius_bound(M);
  require(is_non_decreasing(H, std::max(r_bound, 1.0)), errc::root_find_failure,
          "comparison function must be non-decreasing");
  HLResult out;
  const double measure = mu_measure(M, mu_weight);
  require(measure > 0.0, errc::root_find_failure, "set has zero weighted measure");
  out.R = invert_ball_measure(mu_weight, measure, std::max(r_bound, 1e-6));
  out.lhs = kTwoPi * radial_line_integral(H.eval, H.breakpoints, mu_weight, 0.0, out.R);
  out.rhs = set_weighted_integral(M, H.eval, H.breakpoints, mu_weight);
  out.ok = out.lhs <= out.rhs + 1e-9 * std::abs(out.rhs) + 1e-12;
  return out;
}

ScalarProfile power_profile(double exponent) {
  return {[exponent](double r) { return std::pow(r, exponent); },
          [exponent](double r) { return exponent * std::pow(r, exponent - 1.0); }, "power"};
}

ScalarProfile exp_decay_profile() {
  return {[](double r) { return std::exp(-r); }, [](double r) { return -std::exp(-r); },
          "exp_decay"};
}

ScalarProfile squared_profile(const RadialProfile& F) {
  // Copy the profile so the closure owns its data.
  auto shared = std::make_shared<RadialProfile>(F);
  return {[shared](double r) {
            const double f = shared->value(r);
            return f * f;
          },
          [shared](double r) { return 2.0 * shared->value(r) * shared->derivative(r); },
          "profile_squared"};
}

MonotoneCondResult check_monotone_cond(const LogConvexWeight& W, const ScalarProfile& Phi,
                                       int dim, double r_max, int grid) {
  MonotoneCondResult out;
  const double n1 = dim - 1.0;
  auto g = [&](double r) {
    return n1 * Phi.value(r) / r + Phi.deriv(r) + W.log_deriv(r) * Phi.value(r);
  };
  std::vector<double> samples(grid);
  double scale = 0.0;
  for (int i = 0; i < grid; ++i) {
    samples[i] = g(r_max * (i + 1.0) / grid);
    scale = std::max(scale, std::abs(samples[i]));
  }
  for (int i = 0; i + 1 < grid; ++i) {
    if (samples[i + 1] < samples[i] - 1e-8 * scale) {
      out.ok = false;
      out.violation_r = r_max * (i + 2.0) / grid;
      return out;
    }
  }
  return out;
}

double mu_equivalent_radius(const Domain& dom, const LogConvexWeight& W) {
  const double measure = mu_measure(MeasurableSet{dom}, W);
  return invert_ball_measure(W, measure, max_radius(dom));
}

BoundaryCompareResult check_weighted_boundary_isop(const Domain& dom,
                                                   const LogConvexWeight& W,
                                                   const ScalarProfile& Phi) {
  const double r_max = max_radius(dom);
  const auto cond = check_monotone_cond(W, Phi, 2, r_max * 1.05);
  if (!cond.ok) {
    fail(errc::monotone_cond_violated,
         "comparison profile violates the monotone condition near r = " +
             std::to_string(cond.violation_r));
  }
  BoundaryCompareResult out;
  out.R = mu_equivalent_radius(dom, W);
  out.lhs = kTwoPi * out.R * W.value(out.R) * Phi.value(out.R);
  out.rhs = radial_boundary_integral(dom, [&](double r) { return W.value(r) * Phi.value(r); });
  out.ok = out.lhs <= out.rhs + 1e-9 * std::abs(out.rhs) + 1e-12;
  return out;
}

}  // namespace steklov
