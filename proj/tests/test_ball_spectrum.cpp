#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "steklov/ball_spectrum.hpp"

using namespace steklov;

TEST_CASE("radial exponents") {
  CHECK(exponent_m(1, 0.0, 2) == doctest::Approx(1.0));
  CHECK(exponent_m(0, 0.0, 3) == doctest::Approx(0.0));
  CHECK(exponent_m(2, 1.0, 2) == doctest::Approx((std::sqrt(17.0) - 1.0) / 2.0));
  // Plus branch is non-negative for j >= 1; minus branch is not.
  for (int j = 1; j <= 5; ++j) {
    CHECK(exponent_m(j, 1.5, 3, Branch::plus) >= 0.0);
    CHECK(exponent_m(j, 1.5, 3, Branch::minus) < 0.0);
  }
  CHECK_THROWS_AS(exponent_m(-1, 0.0, 2), Error);
}

TEST_CASE("spherical harmonic multiplicities") {
  CHECK(spherical_harmonic_multiplicity(0, 2) == 1);
  CHECK(spherical_harmonic_multiplicity(3, 2) == 2);
  for (int j = 0; j <= 6; ++j) {
    CHECK(spherical_harmonic_multiplicity(j, 3) == 2 * j + 1);
  }
  CHECK(spherical_harmonic_multiplicity(2, 4) == 9);
}

TEST_CASE("ball spectrum for power weights") {
  SUBCASE("classical disc") {
    const auto spec = power_ball_spectrum(make_power_pair(0, 0, 2), 1.0, 4);
    REQUIRE(spec.entries.size() == 5);
    CHECK(spec.entries[0].gamma == doctest::Approx(0.0));
    CHECK(spec.entries[0].multiplicity == 1);
    CHECK(spec.entries[1].gamma == doctest::Approx(1.0));
    CHECK(spec.entries[1].multiplicity == 2);  // two first-mode eigenfunctions
    CHECK(spec.entries[2].gamma == doctest::Approx(2.0));
  }
  SUBCASE("radius scaling") {
    const auto spec = power_ball_spectrum(make_power_pair(0, 0, 2), 2.0, 1);
    CHECK(spec.entries[1].gamma == doctest::Approx(0.5));
  }
  SUBCASE("weighted disc") {
    const auto spec = power_ball_spectrum(make_power_pair(1, 0, 2), 1.0, 1);
    CHECK(spec.entries[1].gamma == doctest::Approx((std::sqrt(5.0) - 1.0) / 2.0));
  }
  SUBCASE("first block is degenerate with multiplicity N") {
    for (int n : {2, 3, 4}) {
      const auto wp = make_power_pair(0.7, -0.3, n);
      const auto spec = power_ball_spectrum(wp, 1.3, 2);
      CHECK(spec.entries[1].multiplicity == n);
      const double m = exponent_m(1, wp.alpha, n);
      CHECK(spec.entries[1].gamma ==
            doctest::Approx(m * std::pow(1.3, wp.alpha - wp.beta - 1.0)));
    }
  }
  SUBCASE("scaling law gamma ~ R^(alpha-beta-1)") {
    std::mt19937 rng(31415);
    std::uniform_real_distribution<double> ab(-1.5, 2.5);
    for (int trial = 0; trial < 100; ++trial) {
      const auto wp = make_power_pair(ab(rng), ab(rng), 2);
      const double r1 = 0.7, r2 = 2.9;
      const double g1 = power_ball_spectrum(wp, r1, 1).entries[1].gamma;
      const double g2 = power_ball_spectrum(wp, r2, 1).entries[1].gamma;
      CHECK(g2 / g1 ==
            doctest::Approx(std::pow(r2 / r1, wp.alpha - wp.beta - 1.0)).epsilon(1e-12));
    }
  }
}

TEST_CASE("gradient identities for the explicit eigenfunctions") {
  // u_i = x_i |x|^(m-1): sum_i |grad u_i|^2 = (N + m^2 - 1) |x|^(2m-2),
  // checked against central finite differences at random points.
  std::mt19937 rng(2718);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  const int n = 3;
  const double alpha = 0.8;
  const double m = exponent_m(1, alpha, n);
  const double fd = 1e-5;

  auto u = [&](int i, const std::array<double, 3>& x) {
    const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    return x[i] * std::pow(r, m - 1.0);
  };
  for (int trial = 0; trial < 50; ++trial) {
    std::array<double, 3> x{coord(rng), coord(rng), coord(rng)};
    const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    if (r < 0.3) continue;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int kdir = 0; kdir < n; ++kdir) {
        auto xp = x, xm = x;
        xp[kdir] += fd;
        xm[kdir] -= fd;
        const double g = (u(i, xp) - u(i, xm)) / (2.0 * fd);
        sum += g * g;
      }
    }
    const double expected = (n + m * m - 1.0) * std::pow(r, 2.0 * m - 2.0);
    CHECK(sum == doctest::Approx(expected).epsilon(1e-6));
  }
}

TEST_CASE("gradient identity for the profile-based eigenfunctions") {
  // u_i = (x_i/|x|) F(|x|): sum_i |grad u_i|^2 = (F')^2 + (N-1) F^2/|x|^2.
  std::mt19937 rng(16180);
  std::uniform_real_distribution<double> coord(-0.9, 0.9);
  const auto profile = solve_radial_ode(make_quadratic_weight(1.0), 1.0, 2, 512);
  const double fd = 1e-6;
  auto u = [&](int i, const std::array<double, 2>& x) {
    const double r = std::hypot(x[0], x[1]);
    return x[i] / r * profile.value(r);
  };
  for (int trial = 0; trial < 30; ++trial) {
    std::array<double, 2> x{coord(rng), coord(rng)};
    const double r = std::hypot(x[0], x[1]);
    if (r < 0.2 || r > 0.95) continue;
    double sum = 0.0;
    for (int i = 0; i < 2; ++i) {
      for (int kdir = 0; kdir < 2; ++kdir) {
        auto xp = x, xm = x;
        xp[kdir] += fd;
        xm[kdir] -= fd;
        const double g = (u(i, xp) - u(i, xm)) / (2.0 * fd);
        sum += g * g;
      }
    }
    const double fp = profile.derivative(r);
    const double fv = profile.value(r);
    CHECK(sum == doctest::Approx(fp * fp + fv * fv / (r * r)).epsilon(1e-5));
  }
}

TEST_CASE("radial solver reproduces the linear solution for a flat weight") {
  const auto profile = solve_radial_ode(make_constant_weight(), 1.0, 2, 1024);
  double max_err = 0.0;
  for (std::size_t i = 0; i < profile.grid.size(); ++i) {
    max_err = std::max(max_err, std::abs(profile.F[i] - profile.grid[i]));
    max_err = std::max(max_err, std::abs(profile.Fprime[i] - 1.0));
  }
  CHECK(max_err <= 1e-8);
  CHECK(profile.max_residual <= 1e-8);
  CHECK(logconvex_ball_gamma1(profile) == doctest::Approx(1.0).epsilon(1e-8));

  for (int n : {3, 5}) {
    const auto p = solve_radial_ode(make_constant_weight(), 2.0, n, 1024);
    CHECK(logconvex_ball_gamma1(p) == doctest::Approx(0.5).epsilon(1e-8));
  }
}

TEST_CASE("radial solver self-consistency under step halving") {
  const auto coarse = solve_radial_ode(make_quadratic_weight(1.0), 1.0, 2, 512);
  const auto fine = solve_radial_ode(make_quadratic_weight(1.0), 1.0, 2, 1024);
  CHECK(coarse.max_residual <= 1e-8);
  for (std::size_t i = 0; i < coarse.grid.size(); ++i) {
    CHECK(coarse.F[i] == doctest::Approx(fine.value(coarse.grid[i])).epsilon(1e-9));
    CHECK(coarse.F[i] > 0.0);
  }
  CHECK(logconvex_ball_gamma1(coarse) ==
        doctest::Approx(logconvex_ball_gamma1(fine)).epsilon(1e-10));
}

TEST_CASE("starting-radius robustness") {
  const auto p6 = solve_radial_ode(make_quadratic_weight(1.0), 1.0, 2, 2048, 1e-6);
  const auto p8 = solve_radial_ode(make_quadratic_weight(1.0), 1.0, 2, 2048, 1e-8);
  const double g6 = logconvex_ball_gamma1(p6);
  const double g8 = logconvex_ball_gamma1(p8);
  CHECK(std::abs(g6 - g8) / g6 <= 1e-7);
}

TEST_CASE("solver rejects invalid weights") {
  CHECK_THROWS_AS(solve_radial_ode(make_power_potential_weight(-1.0, 1.0), 1.0, 2, 512), Error);
  CHECK_THROWS_AS(solve_radial_ode(make_constant_weight(), 1.0, 2, 16), Error);
}

TEST_CASE("monotone quantities along the regular solution") {
  // Flat weight: A = 2 is constant, B grows linearly.
  const auto flat = solve_radial_ode(make_constant_weight(), 1.0, 2, 512);
  CHECK(profile_monotonicity(flat).ok);

  const auto grown = solve_radial_ode(make_quadratic_weight(1.0), 1.5, 2, 1024);
  CHECK(profile_monotonicity(grown).ok);

  // Replacing F by r^2 makes A increasing: violation on A.
  std::vector<double> g = flat.grid, f(g.size()), fp(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    f[i] = g[i] * g[i];
    fp[i] = 2.0 * g[i];
  }
  const auto bad = profile_monotonicity(g, f, fp, flat.weight, 2);
  CHECK_FALSE(bad.ok);
  CHECK(bad.quantity == "A");
}

TEST_CASE("interior eigenvalue ratio for the flat weight matches 1/r") {
  const auto p = solve_radial_ode(make_constant_weight(), 2.0, 2, 2048);
  for (double r : {0.5, 1.0, 1.7}) {
    CHECK(logconvex_ball_gamma1(p, r) == doctest::Approx(1.0 / r).epsilon(1e-7));
  }
}
