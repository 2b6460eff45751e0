#pragma once

#include <array>
#include <functional>
#include <vector>

#include "steklov/common.hpp"

namespace steklov {

/// Gauss-Legendre rule on [-1, 1]. An n-point rule integrates polynomials of
/// degree 2n-1 exactly.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes/weights computed by Newton iteration on the Legendre polynomial and
/// cached per order. Valid for 1 <= n <= 128.
const GaussRule& gauss_legendre(int n);

template <class F>
double gauss_1d(F&& f, double a, double b, const GaussRule& rule) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return sum * half;
}

/// Adaptive 1D integration by panel bisection with a 15-point Gauss kernel.
/// Error is estimated by comparing one panel against its two halves (order
/// doubling); panels below the tolerance split are accepted. Depth-capped so
/// that integrable endpoint singularities terminate.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-12, double abs_tol = 0.0);

/// Symmetric quadrature rule on the reference triangle, barycentric
/// coordinates with weights summing to one.
struct TriangleRule {
  std::vector<std::array<double, 3>> barycentric;
  std::vector<double> weights;
};

/// 6-point rule, exact for polynomials of degree 4.
const TriangleRule& triangle_rule_degree4();

template <class F>
double integrate_triangle(F&& f, Vec2 a, Vec2 b, Vec2 c, const TriangleRule& rule) {
  const double area2 = (b - a).cross(c - a);  // signed, twice the area
  double sum = 0.0;
  for (std::size_t q = 0; q < rule.weights.size(); ++q) {
    const auto& l = rule.barycentric[q];
    const Vec2 p = a * l[0] + b * l[1] + c * l[2];
    sum += rule.weights[q] * f(p);
  }
  return sum * 0.5 * area2;
}

}  // namespace steklov
