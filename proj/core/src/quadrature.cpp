#include "steklov/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace steklov {

namespace {

GaussRule compute_gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  require(n >= 1 && n <= 128, errc::integration_failure, "Gauss order out of range");
  static std::map<int, GaussRule> cache;
  static std::mutex mutex;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

namespace {

double adaptive_panel(const std::function<double(double)>& f, double a, double b,
                      double whole, double tol, int depth, const GaussRule& rule) {
  const double mid = 0.5 * (a + b);
  const double left = gauss_1d(f, a, mid, rule);
  const double right = gauss_1d(f, mid, b, rule);
  const double refined = left + right;
  if (!std::isfinite(refined)) {
    fail(errc::integration_failure, "integrand is not finite on the panel");
  }
  if (std::abs(refined - whole) <= tol || depth >= 52) {
    // At the depth cap the remaining panel is ~2^-52 of the original range;
    // for integrable singularities its contribution is below the tolerance.
    return refined;
  }
  return adaptive_panel(f, a, mid, left, 0.5 * tol, depth + 1, rule) +
         adaptive_panel(f, mid, b, right, 0.5 * tol, depth + 1, rule);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double abs_tol) {
  if (a == b) return 0.0;
  const GaussRule& rule = gauss_legendre(15);
  const double whole = gauss_1d(f, a, b, rule);
  const double tol = std::max(abs_tol, rel_tol * std::abs(whole)) + 1e-300;
  return adaptive_panel(f, a, b, whole, tol, 0, rule);
}

const TriangleRule& triangle_rule_degree4() {
  static const TriangleRule rule = [] {
    TriangleRule r;
    const double w1 = 0.223381589678011, a1 = 0.445948490915965;
    const double w2 = 0.109951743655322, a2 = 0.091576213509771;
    for (int k = 0; k < 3; ++k) {
      std::array<double, 3> l1{a1, a1, a1};
      l1[k] = 1.0 - 2.0 * a1;
      r.barycentric.push_back(l1);
      r.weights.push_back(w1);
      std::array<double, 3> l2{a2, a2, a2};
      l2[k] = 1.0 - 2.0 * a2;
      r.barycentric.push_back(l2);
      r.weights.push_back(w2);
    }
    return r;
  }();
  return rule;
}

}  // namespace steklov
