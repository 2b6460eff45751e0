#pragma once

#include <optional>
#include <string>
#include <vector>

#include "steklov/common.hpp"

namespace steklov {

/// Power-law weight pair: interior weight |x|^alpha, boundary weight
/// |x|^(beta-alpha). The product weight appearing in boundary integrals is
/// |x|^beta. Admissible for alpha > -dim.
struct PowerWeightPair {
  double alpha = 0.0;
  double beta = 0.0;
  int dim = 2;
};

PowerWeightPair make_power_pair(double alpha, double beta, int dim);

/// |x|^alpha at radius r. Throws SingularEvaluation at r = 0 when alpha < 0.
double eval_interior_weight(const PowerWeightPair& wp, double r);
double eval_interior_weight(const PowerWeightPair& wp, Vec2 x);

/// Effective boundary density |x|^beta (the product of the interior weight
/// and the boundary-condition weight).
double eval_boundary_density(const PowerWeightPair& wp, double r);

/// Natural cubic spline through (x_i, y_i); used for tabulated potentials.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<double> y);
  double value(double x) const;
  double derivative(double x) const;
  bool empty() const { return x_.empty(); }
  const std::vector<double>& knots() const { return x_; }
  const std::vector<double>& values() const { return y_; }

 private:
  std::vector<double> x_, y_, m_;  // m_: second derivatives at knots
};

/// Radial weight W(r) = exp(V(r)) defined by an analytic potential family or
/// a tabulated spline. Admissibility (V non-decreasing and convex, i.e. W
/// non-decreasing and log-convex) is certified separately by
/// validate_log_convex; construction does not reject inadmissible potentials
/// so that violations can be reported as results.
struct LogConvexWeight {
  enum class Family { constant, quadratic, power, spline };

  Family family = Family::constant;
  double c = 0.0;      // constant: V = c
  double a = 0.0;      // quadratic: V = a r^2; power: V = a r^p
  double p = 2.0;      // power family exponent
  CubicSpline spline;  // tabulated potential
  double r_max = 10.0;

  double potential(double r) const;        // V(r)
  double potential_prime(double r) const;  // V'(r); spline uses its derivative
  double value(double r) const;            // W(r) = exp(V(r))
  double log_deriv(double r) const { return potential_prime(r); }
  std::string family_name() const;
};

LogConvexWeight make_constant_weight(double c = 0.0, double r_max = 10.0);
LogConvexWeight make_quadratic_weight(double a, double r_max = 10.0);
LogConvexWeight make_power_potential_weight(double a, double p, double r_max = 10.0);
LogConvexWeight make_spline_weight(std::vector<double> r, std::vector<double> v);

double eval_interior_weight(const LogConvexWeight& w, double r);
double eval_interior_weight(const LogConvexWeight& w, Vec2 x);

struct LogConvexCertificate {
  bool ok = true;
  double violation_r = 0.0;
  std::string reason;  // "decreasing" or "not log-convex" when !ok
};

/// Samples V' and V'' on a uniform grid over [0, r_max] (analytic derivatives
/// for the closed-form families, divided differences for tabulated splines)
/// and reports the first violation of monotonicity or convexity.
LogConvexCertificate validate_log_convex(const LogConvexWeight& w, int grid_size = 256);

/// Antiderivative Q(t) = int_0^t s^(dim-1) W(s) ds, the radial factor of the
/// weighted volume of a ball. Closed form for constant and quadratic (dim=2)
/// potentials, adaptive quadrature otherwise.
double radial_volume_primitive(const LogConvexWeight& w, double t, int dim = 2);

}  // namespace steklov
