#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "steklov/weights.hpp"

using namespace steklov;

TEST_CASE("power pair construction enforces the admissible range") {
  const auto wp = make_power_pair(0.0, 0.0, 2);
  CHECK(wp.alpha == 0.0);
  CHECK(wp.beta == 0.0);

  CHECK_THROWS_AS(make_power_pair(-2.0, 5.0, 2), Error);
  CHECK_THROWS_AS(make_power_pair(-3.0, 0.0, 3), Error);
  CHECK_THROWS_AS(make_power_pair(0.0, 0.0, 1), Error);

  // alpha = 1 > -3 is fine; boundary weight exponent is beta - alpha = -1.5.
  const auto wp3 = make_power_pair(1.0, -0.5, 3);
  CHECK(wp3.beta - wp3.alpha == doctest::Approx(-1.5));
}

TEST_CASE("interior weight evaluation") {
  const auto w2 = make_power_pair(2.0, 0.0, 2);
  CHECK(eval_interior_weight(w2, Vec2{3.0, 4.0}) == doctest::Approx(25.0));

  const auto w0 = make_constant_weight();
  CHECK(eval_interior_weight(w0, 17.3) == doctest::Approx(1.0));

  const auto wq = make_quadratic_weight(0.5);
  CHECK(eval_interior_weight(wq, 1.0) == doctest::Approx(std::exp(0.5)));

  const auto wneg = make_power_pair(-1.0, 0.0, 2);
  CHECK_THROWS_AS(eval_interior_weight(wneg, 0.0), Error);
  CHECK(eval_interior_weight(make_power_pair(0.0, 0.0, 2), 0.0) == doctest::Approx(1.0));
}

TEST_CASE("boundary density is |x|^beta") {
  const auto wp = make_power_pair(1.0, -2.0, 2);
  CHECK(eval_boundary_density(wp, 2.0) == doctest::Approx(0.25));
}

TEST_CASE("log-convexity certificates") {
  CHECK(validate_log_convex(make_quadratic_weight(1.0)).ok);
  CHECK(validate_log_convex(make_constant_weight(3.0)).ok);
  CHECK(validate_log_convex(make_power_potential_weight(2.0, 1.0)).ok);

  // V = -r decreases.
  const auto decreasing = make_power_potential_weight(-1.0, 1.0);
  const auto c1 = validate_log_convex(decreasing);
  CHECK_FALSE(c1.ok);
  CHECK(c1.reason == "decreasing");

  // V = log(1+r) increases but is concave.
  std::vector<double> r, v;
  for (int i = 0; i <= 200; ++i) {
    r.push_back(i * 0.05);
    v.push_back(std::log(1.0 + r.back()));
  }
  const auto concave = make_spline_weight(r, v);
  const auto c2 = validate_log_convex(concave);
  CHECK_FALSE(c2.ok);
  CHECK(c2.reason == "not log-convex");

  CHECK_THROWS_AS(validate_log_convex(make_quadratic_weight(1.0), 8), Error);
}

TEST_CASE("accepted weights satisfy monotonicity and midpoint log-convexity") {
  std::mt19937 rng(20240901);
  std::uniform_real_distribution<double> coef(0.0, 2.0);
  std::uniform_real_distribution<double> expo(1.0, 3.0);
  std::uniform_real_distribution<double> radius(0.0, 5.0);

  for (int trial = 0; trial < 50; ++trial) {
    LogConvexWeight w;
    switch (trial % 3) {
      case 0: w = make_quadratic_weight(coef(rng), 5.0); break;
      case 1: w = make_power_potential_weight(coef(rng), expo(rng), 5.0); break;
      default: w = make_constant_weight(coef(rng), 5.0); break;
    }
    REQUIRE(validate_log_convex(w).ok);
    for (int s = 0; s < 20; ++s) {
      double r1 = radius(rng), r2 = radius(rng);
      if (r1 > r2) std::swap(r1, r2);
      const double w1 = w.value(r1), w2 = w.value(r2);
      CHECK(w1 <= w2 * (1.0 + 1e-10));
      const double wm = w.value(0.5 * (r1 + r2));
      CHECK(wm * wm <= w1 * w2 * (1.0 + 1e-10));
    }
  }
}

TEST_CASE("spline weight reproduces its table and derivative") {
  std::vector<double> r, v;
  for (int i = 0; i <= 100; ++i) {
    r.push_back(i * 0.02);
    v.push_back(r.back() * r.back());
  }
  const auto w = make_spline_weight(r, v);
  CHECK(w.potential(0.7) == doctest::Approx(0.49).epsilon(1e-6));
  CHECK(w.potential_prime(0.7) == doctest::Approx(1.4).epsilon(1e-4));
  CHECK(validate_log_convex(w).ok);
}

TEST_CASE("radial volume primitive matches quadrature") {
  const auto w = make_quadratic_weight(1.0);
  // Closed form (e^(t^2) - 1)/2 against the generic quadrature path.
  const auto wp = make_power_potential_weight(1.0, 2.0);  // same W, generic family
  for (double t : {0.3, 1.0, 1.7}) {
    CHECK(radial_volume_primitive(w, t) ==
          doctest::Approx(radial_volume_primitive(wp, t)).epsilon(1e-11));
    CHECK(radial_volume_primitive(w, t) ==
          doctest::Approx((std::exp(t * t) - 1.0) / 2.0).epsilon(1e-12));
  }
}
