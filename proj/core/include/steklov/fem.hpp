#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <functional>
#include <optional>
#include <vector>

#include "steklov/mesh.hpp"
#include "steklov/weights.hpp"

namespace steklov {

/// Radial coefficient of an assembly integral. Power-type weights carry their
/// exponent so element integrals can use the exact radial rule near the
/// origin.
struct RadialWeight {
  std::function<double(double)> eval;
  std::optional<double> power_exponent;
};

RadialWeight interior_weight(const PowerWeightPair& wp);   // |x|^alpha
RadialWeight boundary_weight(const PowerWeightPair& wp);   // |x|^beta (product density)
RadialWeight interior_weight(const LogConvexWeight& w);    // W(|x|)
RadialWeight boundary_weight(const LogConvexWeight& w);    // W(|x|), flat boundary factor
RadialWeight unit_weight();

/// Discrete eigenvalue pencil: stiffness A (weighted Dirichlet energy, ker
/// contains constants) and boundary mass B (supported on boundary dofs).
struct SteklovSystem {
  Eigen::SparseMatrix<double> A;
  Eigen::SparseMatrix<double> B;
  std::vector<int> boundary_dofs;  // sorted vertex indices on the boundary
};

SteklovSystem assemble(const Mesh& mesh, const RadialWeight& w, const RadialWeight& v);

struct SpectrumResult {
  std::vector<double> eigenvalues;  // ascending, eigenvalues[0] ~ 0 trivial
  Eigen::MatrixXd boundary_vectors; // boundary-trace coefficients per eigenvalue
  std::vector<double> residuals;    // relative pencil residual per pair
  double max_offdiag_boundary = 0;  // boundary-mass cross-Gram residual
  double max_offdiag_energy = 0;    // energy cross-Gram residual
  double zero_mode_deviation = 0;   // distance of the trivial vector from constants
  double h = 0;

  /// Nontrivial indexing: gamma(1) is the first nonzero eigenvalue.
  double gamma(int i) const { return eigenvalues.at(static_cast<std::size_t>(i)); }
};

/// Eliminates interior unknowns through the Schur complement (a discrete
/// Dirichlet-to-Neumann map) and solves the dense symmetric pencil on the
/// boundary. Returns the n_eigs + 1 smallest pairs including the trivial
/// mode, which is verified to be the constant vector.
SpectrumResult solve_steklov(const SteklovSystem& sys, int n_eigs);

/// Margin of the harmonic-mean bound: sum_{i=1..dim} 1/gamma_i - dim/gamma_ball.
double harmonic_mean_margin(const SpectrumResult& res, double gamma1_ball, int dim);

struct RefinementStudy {
  std::vector<double> hs;                   // coarse to fine
  std::vector<std::vector<double>> gammas;  // nontrivial eigenvalues per level
  double rate = 0.0;                        // observed order of gamma_1
  double error_estimate = 0.0;              // Richardson estimate at the finest level
  SpectrumResult finest;

  double gamma1() const { return gammas.back().front(); }
};

/// Solves on a sequence of refinements levels (h * 2^(levels-1) down to h)
/// and estimates the convergence order and discretization error of gamma_1.
RefinementStudy fem_eigen_study(const Domain& dom, const RadialWeight& w,
                                const RadialWeight& v, double h, int levels, int n_eigs);

}  // namespace steklov
