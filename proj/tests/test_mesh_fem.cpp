#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "steklov/ball_spectrum.hpp"
#include "steklov/fem.hpp"
#include "steklov/param_algebra.hpp"

using namespace steklov;

namespace {

constexpr double kPi = std::numbers::pi;

double max_boundary_gap(const Mesh& mesh, const Domain& dom) {
  double gap = 0.0;
  for (const auto& e : mesh.boundary_edges) {
    const Vec2 mid = (mesh.vertices[e[0]] + mesh.vertices[e[1]]) * 0.5;
    if (dom.shape == Domain::Shape::star) {
      gap = std::max(gap, std::abs(dom.boundary_radius(mid.angle()) - mid.norm()));
    }
  }
  return gap;
}

}  // namespace

TEST_CASE("meshes resolve the boundary and keep quality") {
  const auto disc = make_disc(1.0);
  for (double h : {0.2, 0.1}) {
    const auto mesh = triangulate(disc, h);
    CHECK(mesh.min_angle_deg >= 20.0);
    CHECK(mesh.origin_vertex >= 0);
    CHECK(mesh.vertices[mesh.origin_vertex].norm() == 0.0);
    // Boundary vertices on the circle (up to the 1e-9 degeneracy-breaking
    // perturbation), chords sag at most h^2.
    for (const auto& e : mesh.boundary_edges) {
      CHECK(mesh.vertices[e[0]].norm() == doctest::Approx(1.0).epsilon(1e-8));
    }
    CHECK(max_boundary_gap(mesh, disc) <= h * h);
    // Triangle count scales like h^-2.
    const double expected = kPi / (h * h);
    CHECK(mesh.triangles.size() > 0.5 * expected);
    CHECK(mesh.triangles.size() < 8.0 * expected);
  }

  const auto square = make_square(1.0);
  const auto mesh = triangulate(square, 0.2);
  CHECK(mesh.min_angle_deg >= 20.0);
  // Every boundary vertex on the square's boundary.
  for (const auto& e : mesh.boundary_edges) {
    const Vec2 p = mesh.vertices[e[0]];
    CHECK(std::max(std::abs(p.x), std::abs(p.y)) == doctest::Approx(1.0).epsilon(1e-12));
  }

  CHECK(triangulate(make_cross(1.5, 0.5), 0.15).min_angle_deg >= 20.0);

  CHECK_THROWS_AS(triangulate(square, 5.0), Error);
}

TEST_CASE("meshing covers polygons that are not star-shaped about the origin") {
  // L-shaped polygon with a notch blocking some rays from the origin.
  const auto dom = make_polygon(
      {{0.2, 0.1}, {1.4, 0.1}, {1.4, 1.3}, {-1.0, 1.3}, {-1.0, -1.1}, {0.2, -1.1}});
  REQUIRE_FALSE(is_star_shaped_about_origin(dom));
  const auto mesh = triangulate(dom, 0.1);
  CHECK(mesh.triangles.size() > 100);
  double area = 0.0;
  for (const auto& t : mesh.triangles) {
    area += 0.5 * (mesh.vertices[t[1]] - mesh.vertices[t[0]])
                      .cross(mesh.vertices[t[2]] - mesh.vertices[t[0]]);
  }
  CHECK(area == doctest::Approx(weighted_volume(dom, 0.0)).epsilon(1e-12));
}

TEST_CASE("uniform refinement nests and preserves the boundary") {
  const auto mesh = triangulate(make_square(1.0), 0.4);
  const auto fine = refine_uniform(mesh);
  CHECK(fine.triangles.size() == 4 * mesh.triangles.size());
  CHECK(fine.boundary_edges.size() == 2 * mesh.boundary_edges.size());
  CHECK(fine.min_angle_deg == doctest::Approx(mesh.min_angle_deg).epsilon(1e-9));
}

TEST_CASE("stiffness matrix annihilates constants") {
  for (const auto& dom : {make_square(1.0), make_disc(1.0)}) {
    const auto mesh = triangulate(dom, 0.15);
    const auto sys = assemble(mesh, unit_weight(), unit_weight());
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(sys.A.rows());
    const Eigen::VectorXd r = sys.A * ones;
    // Row-sum residual relative to the row magnitude.
    double row_scale = 0.0;
    for (int i = 0; i < sys.A.outerSize(); ++i) {
      double s = 0.0;
      for (Eigen::SparseMatrix<double>::InnerIterator it(sys.A, i); it; ++it) {
        s += std::abs(it.value());
      }
      row_scale = std::max(row_scale, s);
    }
    CHECK(r.cwiseAbs().maxCoeff() <= 1e-12 * row_scale);
  }
}

TEST_CASE("element weight integrals match a Monte Carlo oracle") {
  // On a one-triangle mesh the stiffness entry ratio A_w / A_1 is the mean of
  // the weight over the element; Monte Carlo gives an independent estimate.
  const auto source = triangulate(make_disc(1.0), 0.25);
  const auto wp = make_power_pair(2.0, 0.0, 2);

  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  int checked = 0;
  for (std::size_t ti = 0; ti < source.triangles.size() && checked < 12; ti += 9) {
    const auto& tri = source.triangles[ti];
    Mesh single;
    single.h = source.h;
    single.vertices = {source.vertices[tri[0]], source.vertices[tri[1]],
                       source.vertices[tri[2]]};
    single.triangles = {{0, 1, 2}};
    single.boundary_edges = {{0, 1}, {1, 2}, {2, 0}};
    const Vec2 a = single.vertices[0], b = single.vertices[1], c = single.vertices[2];

    const auto aw = assemble(single, interior_weight(wp), unit_weight());
    const auto a1 = assemble(single, unit_weight(), unit_weight());
    const double ratio = aw.A.coeff(0, 1) / a1.A.coeff(0, 1);

    const int n = 40000;
    double sum = 0.0, sum2 = 0.0;
    for (int s = 0; s < n; ++s) {
      double u = uni(rng), v = uni(rng);
      if (u + v > 1.0) {
        u = 1.0 - u;
        v = 1.0 - v;
      }
      const Vec2 p = a + (b - a) * u + (c - a) * v;
      const double val = p.squared_norm();
      sum += val;
      sum2 += val * val;
    }
    const double mean = sum / n;
    const double sigma = std::sqrt((sum2 / n - mean * mean) / n);
    CHECK(std::abs(ratio - mean) <= 3.5 * sigma + 1e-12);
    ++checked;
  }
  CHECK(checked >= 10);
}

TEST_CASE("boundary mass blocks match 1D closed forms on a square") {
  const auto square = make_square(1.0);
  const auto mesh = triangulate(square, 0.3);
  const double beta = -1.0;
  const auto wp = make_power_pair(0.0, beta, 2);
  const auto sys = assemble(mesh, interior_weight(wp), boundary_weight(wp));
  // Pick a boundary edge on the face x = 1: |x|^beta = (1 + y^2)^(beta/2).
  for (const auto& e : mesh.boundary_edges) {
    const Vec2 a = mesh.vertices[e[0]];
    const Vec2 b = mesh.vertices[e[1]];
    if (std::abs(a.x - 1.0) > 1e-12 || std::abs(b.x - 1.0) > 1e-12) continue;
    const double y0 = a.y, y1 = b.y;
    const double len = std::abs(y1 - y0);
    // int phi_a phi_b |x|^beta ds with phi linear on the edge.
    const int n = 20000;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      const double t = (i + 0.5) / n;
      const double y = y0 + (y1 - y0) * t;
      acc += (1.0 - t) * t * std::pow(1.0 + y * y, beta / 2.0);
    }
    acc *= len / n;
    CHECK(sys.B.coeff(e[0], e[1]) == doctest::Approx(acc).epsilon(1e-6));
    break;
  }
}

TEST_CASE("classical disc spectrum converges at second order") {
  const auto disc = make_disc(1.0);
  const auto study =
      fem_eigen_study(disc, unit_weight(), unit_weight(), 0.05, 3, 4);
  // gamma_1 = gamma_2 = 1 exactly.
  CHECK(study.gamma1() == doctest::Approx(1.0).epsilon(0.01));
  CHECK(study.finest.gamma(2) == doctest::Approx(1.0).epsilon(0.01));
  CHECK(study.finest.gamma(3) == doctest::Approx(2.0).epsilon(0.02));

  // Observed order against the closed form.
  std::vector<double> errs;
  for (const auto& g : study.gammas) errs.push_back(std::abs(g[0] - 1.0));
  const double rate = std::log2(errs[0] / errs[1]);
  CHECK(rate > 1.7);
  CHECK(rate < 2.3);
}

TEST_CASE("weighted disc eigenvalue approaches the closed form") {
  const auto wp = make_power_pair(1.0, 0.0, 2);
  const auto study = fem_eigen_study(make_disc(1.0), interior_weight(wp), boundary_weight(wp),
                                     0.05, 3, 3);
  const double exact = (std::sqrt(5.0) - 1.0) / 2.0;
  CHECK(study.gamma1() == doctest::Approx(exact).epsilon(0.01));
  CHECK(study.rate > 1.5);
}

TEST_CASE("eigensolver invariants") {
  const auto mesh = triangulate(make_square(1.0), 0.12);
  const auto sys = assemble(mesh, unit_weight(), unit_weight());
  const auto res = solve_steklov(sys, 6);

  CHECK(std::abs(res.eigenvalues[0]) <= 1e-8 * res.eigenvalues[1]);
  CHECK(res.zero_mode_deviation <= 1e-6);
  for (double r : res.residuals) CHECK(r <= 1e-9);
  CHECK(res.max_offdiag_boundary <= 1e-8);
  CHECK(res.max_offdiag_energy <= 1e-8);
  // Rayleigh quotient consistency: gamma = x^T S x / x^T B x is what the
  // residual bound already enforces; spot-check the first pair ordering.
  for (std::size_t i = 1; i < res.eigenvalues.size(); ++i) {
    CHECK(res.eigenvalues[i] >= res.eigenvalues[i - 1] - 1e-12);
  }
}

TEST_CASE("discrete eigenvalues decrease on nested refinements") {
  const auto coarse_mesh = triangulate(make_square(1.0), 0.35);
  const auto fine_mesh = refine_uniform(coarse_mesh);
  const auto coarse = solve_steklov(assemble(coarse_mesh, unit_weight(), unit_weight()), 3);
  const auto fine = solve_steklov(assemble(fine_mesh, unit_weight(), unit_weight()), 3);
  for (int i = 1; i <= 3; ++i) {
    CHECK(fine.gamma(i) <= coarse.gamma(i) + 1e-10);
  }
}

TEST_CASE("dilation scaling of the first eigenvalue") {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> ab(-0.5, 1.0);
  const double alpha = ab(rng), beta = ab(rng);
  const auto wp = make_power_pair(alpha, beta, 2);
  const double t = 1.7;
  const auto g1 = fem_eigen_study(make_disc(1.0), interior_weight(wp), boundary_weight(wp),
                                  0.08, 1, 2)
                      .gamma1();
  const auto gt = fem_eigen_study(make_disc(t), interior_weight(wp), boundary_weight(wp),
                                  0.08 * t, 1, 2)
                      .gamma1();
  CHECK(gt / g1 == doctest::Approx(std::pow(t, alpha - beta - 1.0)).epsilon(5e-3));
}

TEST_CASE("harmonic mean margin on the ball is zero by degeneracy") {
  const auto study = fem_eigen_study(make_disc(1.0), unit_weight(), unit_weight(), 0.06, 1, 3);
  const double margin = harmonic_mean_margin(study.finest, 1.0, 2);
  CHECK(std::abs(margin) <= 5e-3);
}
