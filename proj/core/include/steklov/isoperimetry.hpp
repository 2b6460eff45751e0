#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "steklov/ball_spectrum.hpp"
#include "steklov/geometry.hpp"
#include "steklov/param_algebra.hpp"

namespace steklov {

/// Sharp constant of the weighted isoperimetric inequality
/// P_k(Omega) >= C |Omega|_ell^((k+N-1)/(ell+N)):
/// C = (N omega_N)^((ell-k+1)/(ell+N)) (ell+N)^((k+N-1)/(ell+N)).
double isop_constant(double k, double ell, int dim);

struct IsopMargin {
  double lhs = 0.0;              // P_k(Omega)
  double rhs = 0.0;              // C_{k,ell,N} |Omega|_ell^((k+N-1)/(ell+N))
  double margin = 0.0;           // lhs - rhs
  double relative_margin = 0.0;  // margin / lhs
  double equivalent_R = 0.0;     // radius of the ell-volume-equal centered ball
  double ball_perimeter = 0.0;   // P_k(B_R)
  double ball_margin = 0.0;      // lhs - P_k(B_R), the equal-volume form
  LemmaCase condition = LemmaCase::none;
  bool supported = false;  // condition matched; otherwise the margins are advisory
};

/// Both margins of the weighted isoperimetric inequality for a planar domain.
/// Outside the certified parameter range the margins are still computed and
/// flagged unsupported.
IsopMargin check_isop(const Domain& dom, double k, double ell, int dim = 2);

/// Radial function H(|x|) with optional jump points (for step functions).
struct RadialFunction {
  std::function<double(double)> eval;
  std::vector<double> breakpoints;  // ordered interior jump radii, may be empty
  std::string kind;
};

RadialFunction constant_function(double c);
RadialFunction power_function(double coef, double exponent);
/// Piecewise-constant with values[i] on (breaks[i-1], breaks[i]); breaks
/// strictly increasing, values.size() == breaks.size() + 1.
RadialFunction step_function(std::vector<double> breaks, std::vector<double> values);
bool is_non_decreasing(const RadialFunction& H, double r_max, int grid = 1024);

struct AnnularSector {
  double r0 = 0.0, r1 = 1.0;      // radii, r0 < r1
  double theta0 = 0.0, theta1 = 0.0;  // angles, theta0 < theta1
};

using MeasurableSet = std::variant<Domain, std::vector<AnnularSector>>;

double mu_measure(const MeasurableSet& set, const LogConvexWeight& weight);

struct HLResult {
  double lhs = 0.0;  // integral over the mu-equal centered ball
  double rhs = 0.0;  // integral over the set
  double R = 0.0;
  bool ok = false;
};

/// Rearrangement inequality: for non-decreasing radial h and mu(M) = mu(B_R),
/// the centered ball minimizes the integral of h d(mu).
HLResult check_hardy_littlewood(const MeasurableSet& M, const RadialFunction& H,
                                const LogConvexWeight& mu_weight);

/// Radial comparison profile Phi with derivative; positive on (0, inf).
struct ScalarProfile {
  std::function<double(double)> value;
  std::function<double(double)> deriv;
  std::string kind;
};

ScalarProfile power_profile(double exponent);           // Phi = r^m
ScalarProfile exp_decay_profile();                      // Phi = e^{-r} (violates monotonicity)
ScalarProfile squared_profile(const RadialProfile& F);  // Phi = F^2

struct MonotoneCondResult {
  bool ok = true;
  double violation_r = 0.0;
};

/// Certifies that G(r) = (N-1) Phi/r + Phi' + (W'/W) Phi is non-decreasing,
/// the hypothesis under which the weighted boundary comparison holds.
MonotoneCondResult check_monotone_cond(const LogConvexWeight& W, const ScalarProfile& Phi,
                                       int dim, double r_max, int grid = 512);

/// Radius of the centered ball with mu(B_R) = mu(Omega), d(mu) = W(|x|) dx.
double mu_equivalent_radius(const Domain& dom, const LogConvexWeight& W);

struct BoundaryCompareResult {
  double lhs = 0.0;  // int over boundary of the mu-equal ball of W Phi
  double rhs = 0.0;  // int over the domain boundary of W Phi
  double R = 0.0;
  bool ok = false;
};

/// Weighted boundary comparison: under the monotone condition,
/// int_{dB_R} W Phi <= int_{dOmega} W Phi for mu(Omega) = mu(B_R).
/// Throws MonotoneCondViolated when the hypothesis fails.
BoundaryCompareResult check_weighted_boundary_isop(const Domain& dom,
                                                   const LogConvexWeight& W,
                                                   const ScalarProfile& Phi);

}  // namespace steklov
