#include "steklov/fem.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>

#include "steklov/dense_eig.hpp"
#include "steklov/quadrature.hpp"

namespace steklov {

RadialWeight interior_weight(const PowerWeightPair& wp) {
  const double a = wp.alpha;
  return {[a](double r) { return std::pow(r, a); }, a};
}

RadialWeight boundary_weight(const PowerWeightPair& wp) {
  const double b = wp.beta;
  return {[b](double r) { return std::pow(r, b); }, b};
}

RadialWeight interior_weight(const LogConvexWeight& w) {
  return {[w](double r) { return w.value(r); }, std::nullopt};
}

RadialWeight boundary_weight(const LogConvexWeight& w) {
  return {[w](double r) { return w.value(r); }, std::nullopt};
}

RadialWeight unit_weight() {
  return {[](double) { return 1.0; }, 0.0};
}

namespace {

/// int_T r^a dx by the divergence identity: each straight edge contributes
/// (x.nu) int_edge |x|^a ds / (a+2); edges collinear with the origin drop
/// out. Exact in the radial direction, adaptive along each edge, and valid
/// for any triangle position relative to the origin (a > -2).
double power_integral_triangle(Vec2 p0, Vec2 p1, Vec2 p2, double a) {
  const Vec2 pts[3] = {p0, p1, p2};
  double sum = 0.0;
  for (int e = 0; e < 3; ++e) {
    const Vec2 s = pts[e];
    const Vec2 d = pts[(e + 1) % 3] - s;
    const double len = d.norm();
    if (len == 0.0) continue;
    const Vec2 nu{d.y / len, -d.x / len};
    const double dist = s.dot(nu);
    if (std::abs(dist) < 1e-14 * len) continue;
    const double line = integrate_adaptive(
        [&](double t) { return std::pow((s + d * t).norm(), a); }, 0.0, 1.0, 1e-12);
    sum += dist * len * line / (a + 2.0);
  }
  return sum;
}

double weight_integral_triangle(const Mesh& mesh, const std::array<int, 3>& tri,
                                const RadialWeight& w) {
  const Vec2 p0 = mesh.vertices[tri[0]];
  const Vec2 p1 = mesh.vertices[tri[1]];
  const Vec2 p2 = mesh.vertices[tri[2]];
  if (w.power_exponent) {
    const double a = *w.power_exponent;
    if (a == 0.0) return 0.5 * (p1 - p0).cross(p2 - p0);
    return power_integral_triangle(p0, p1, p2, a);
  }
  return integrate_triangle([&](Vec2 p) { return w.eval(p.norm()); }, p0, p1, p2,
                            triangle_rule_degree4());
}

}  // namespace

SteklovSystem assemble(const Mesh& mesh, const RadialWeight& w, const RadialWeight& v) {
  SteklovSystem sys;
  const int n = static_cast<int>(mesh.vertices.size());

  std::vector<Eigen::Triplet<double>> ta, tb;
  ta.reserve(mesh.triangles.size() * 9);

  for (const auto& tri : mesh.triangles) {
    const Vec2 p0 = mesh.vertices[tri[0]];
    const Vec2 p1 = mesh.vertices[tri[1]];
    const Vec2 p2 = mesh.vertices[tri[2]];
    const double area2 = (p1 - p0).cross(p2 - p0);
    // P1 gradients: rotate the opposite edge by +90 deg, divide by 2|T|.
    const Vec2 e[3] = {p2 - p1, p0 - p2, p1 - p0};
    Vec2 grad[3];
    for (int i = 0; i < 3; ++i) grad[i] = Vec2{-e[i].y, e[i].x} / area2;

    const double wint = weight_integral_triangle(mesh, tri, w);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        ta.emplace_back(tri[i], tri[j], wint * grad[i].dot(grad[j]));
      }
    }
  }

  const GaussRule& edge_rule = gauss_legendre(5);
  for (const auto& edge : mesh.boundary_edges) {
    const Vec2 a = mesh.vertices[edge[0]];
    const Vec2 b = mesh.vertices[edge[1]];
    const double len = (b - a).norm();
    double m00 = 0.0, m01 = 0.0, m11 = 0.0;
    for (std::size_t q = 0; q < edge_rule.nodes.size(); ++q) {
      const double t = 0.5 * (edge_rule.nodes[q] + 1.0);
      const double wq = 0.5 * edge_rule.weights[q] * len;
      const double vv = v.eval((a + (b - a) * t).norm());
      m00 += wq * vv * (1.0 - t) * (1.0 - t);
      m01 += wq * vv * (1.0 - t) * t;
      m11 += wq * vv * t * t;
    }
    tb.emplace_back(edge[0], edge[0], m00);
    tb.emplace_back(edge[0], edge[1], m01);
    tb.emplace_back(edge[1], edge[0], m01);
    tb.emplace_back(edge[1], edge[1], m11);
  }

  sys.A.resize(n, n);
  sys.A.setFromTriplets(ta.begin(), ta.end());
  sys.B.resize(n, n);
  sys.B.setFromTriplets(tb.begin(), tb.end());

  std::vector<int> bdofs;
  for (const auto& edge : mesh.boundary_edges) {
    bdofs.push_back(edge[0]);
    bdofs.push_back(edge[1]);
  }
  std::sort(bdofs.begin(), bdofs.end());
  bdofs.erase(std::unique(bdofs.begin(), bdofs.end()), bdofs.end());
  sys.boundary_dofs = std::move(bdofs);
  return sys;
}

SpectrumResult solve_steklov(const SteklovSystem& sys, int n_eigs) {
  require(n_eigs >= 1, errc::factorization_failure, "need at least one eigenvalue");
  const int n = static_cast<int>(sys.A.rows());
  const int nb = static_cast<int>(sys.boundary_dofs.size());
  const int ni = n - nb;
  require(nb >= 3, errc::mesh_failure, "too few boundary unknowns");

  // Global index -> (interior | boundary) position.
  std::vector<int> where(n, -1);  // >=0 boundary slot, <0 ~(interior slot)
  for (int s = 0; s < nb; ++s) where[sys.boundary_dofs[s]] = s;
  {
    int slot = 0;
    for (int i = 0; i < n; ++i) {
      if (where[i] < 0) where[i] = ~slot++;
    }
  }

  std::vector<Eigen::Triplet<double>> tii;
  Eigen::MatrixXd a_ib = Eigen::MatrixXd::Zero(ni, nb);
  Eigen::MatrixXd s_mat = Eigen::MatrixXd::Zero(nb, nb);
  for (int col = 0; col < sys.A.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(sys.A, col); it; ++it) {
      const int wi = where[it.row()];
      const int wj = where[it.col()];
      if (wi < 0 && wj < 0) {
        tii.emplace_back(~wi, ~wj, it.value());
      } else if (wi < 0 && wj >= 0) {
        a_ib(~wi, wj) += it.value();
      } else if (wi >= 0 && wj >= 0) {
        s_mat(wi, wj) += it.value();
      }
    }
  }

  if (ni > 0) {
    Eigen::SparseMatrix<double> a_ii(ni, ni);
    a_ii.setFromTriplets(tii.begin(), tii.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(a_ii);
    if (ldlt.info() != Eigen::Success) {
      fail(errc::factorization_failure, "interior stiffness block could not be factorized");
    }
    const Eigen::MatrixXd x = ldlt.solve(a_ib);
    s_mat -= a_ib.transpose() * x;
  }
  s_mat = 0.5 * (s_mat + s_mat.transpose()).eval();

  Eigen::MatrixXd b_bb = Eigen::MatrixXd::Zero(nb, nb);
  for (int col = 0; col < sys.B.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(sys.B, col); it; ++it) {
      const int wi = where[it.row()];
      const int wj = where[it.col()];
      require(wi >= 0 && wj >= 0, errc::factorization_failure,
              "boundary mass has interior support");
      b_bb(wi, wj) += it.value();
    }
  }

  const EigenPairs pairs = generalized_selfadjoint_eigen(s_mat, b_bb);

  SpectrumResult res;
  const int keep = std::min(n_eigs + 1, nb);
  res.boundary_vectors = pairs.vectors.leftCols(keep);
  res.eigenvalues.assign(pairs.values.data(), pairs.values.data() + keep);

  // Trivial mode checks: magnitude and closeness to the constant vector.
  const double g1 = std::abs(res.eigenvalues.size() > 1 ? res.eigenvalues[1] : 0.0);
  if (!(std::abs(res.eigenvalues[0]) <= 1e-8 * std::max(g1, 1e-300))) {
    fail(errc::factorization_failure, "trivial eigenvalue is not numerically zero");
  }
  {
    Eigen::VectorXd v0 = res.boundary_vectors.col(0);
    const double mean = v0.mean();
    const double dev = (v0.array() - mean).abs().maxCoeff() / v0.norm();
    res.zero_mode_deviation = dev;
    if (dev > 1e-6) {
      fail(errc::factorization_failure, "trivial eigenvector is not constant");
    }
  }

  const double s_norm = s_mat.cwiseAbs().rowwise().sum().maxCoeff();
  const double b_norm = b_bb.cwiseAbs().rowwise().sum().maxCoeff();
  for (int j = 0; j < keep; ++j) {
    const Eigen::VectorXd r =
        s_mat * res.boundary_vectors.col(j) - res.eigenvalues[j] * (b_bb * res.boundary_vectors.col(j));
    const double scale =
        (s_norm + std::abs(res.eigenvalues[j]) * b_norm) * res.boundary_vectors.col(j).norm();
    res.residuals.push_back(r.norm() / scale);
  }

  // Discrete orthogonality in both inner products.
  const Eigen::MatrixXd gram_b =
      res.boundary_vectors.transpose() * b_bb * res.boundary_vectors;
  const Eigen::MatrixXd gram_s =
      res.boundary_vectors.transpose() * s_mat * res.boundary_vectors;
  double ob = 0.0, os = 0.0;
  for (int i = 0; i < keep; ++i) {
    for (int j = 0; j < keep; ++j) {
      if (i == j) continue;
      ob = std::max(ob, std::abs(gram_b(i, j)));
      os = std::max(os, std::abs(gram_s(i, j)) /
                            std::max(1e-300, std::abs(pairs.values(std::max(i, j)))));
    }
  }
  res.max_offdiag_boundary = ob;
  res.max_offdiag_energy = os;
  return res;
}

double harmonic_mean_margin(const SpectrumResult& res, double gamma1_ball, int dim) {
  require(static_cast<int>(res.eigenvalues.size()) > dim, errc::factorization_failure,
          "not enough eigenvalues for the harmonic-mean margin");
  double sum = 0.0;
  for (int i = 1; i <= dim; ++i) sum += 1.0 / res.gamma(i);
  return sum - dim / gamma1_ball;
}

RefinementStudy fem_eigen_study(const Domain& dom, const RadialWeight& w,
                                const RadialWeight& v, double h, int levels, int n_eigs) {
  require(levels >= 1, errc::mesh_failure, "need at least one refinement level");
  RefinementStudy study;
  for (int level = levels - 1; level >= 0; --level) {
    const double hl = h * std::pow(2.0, level);
    const Mesh mesh = triangulate(dom, hl);
    const SteklovSystem sys = assemble(mesh, w, v);
    SpectrumResult res = solve_steklov(sys, n_eigs);
    res.h = hl;
    study.hs.push_back(hl);
    std::vector<double> nontrivial(res.eigenvalues.begin() + 1, res.eigenvalues.end());
    study.gammas.push_back(nontrivial);
    if (level == 0) study.finest = std::move(res);
  }

  // Richardson with a 1.5x cushion against mesh-family noise (levels are
  // re-meshed, not nested).
  const std::size_t m = study.gammas.size();
  if (m >= 3) {
    const double d1 = study.gammas[m - 3][0] - study.gammas[m - 2][0];
    const double d2 = study.gammas[m - 2][0] - study.gammas[m - 1][0];
    if (d2 != 0.0 && d1 / d2 > 0.0) {
      study.rate = std::log2(std::abs(d1 / d2));
      const double denom = std::pow(2.0, std::clamp(study.rate, 0.5, 4.0)) - 1.0;
      study.error_estimate = 1.5 * std::abs(d2) / denom;
    } else {
      study.rate = 0.0;
      study.error_estimate = 1.5 * std::abs(d2);
    }
  } else if (m == 2) {
    study.error_estimate = 1.5 * std::abs(study.gammas[1][0] - study.gammas[0][0]);
  } else {
    study.error_estimate = std::abs(study.gammas[0][0]) * 1e-2;
  }
  return study;
}

}  // namespace steklov
