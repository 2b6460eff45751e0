#pragma once

#include <string>
#include <vector>

#include "steklov/weights.hpp"

namespace steklov {

enum class Branch { plus, minus };

/// Radial exponent of the mode-j separated solution r^m Y_j(theta):
/// m = (2-N-alpha)/2 +- sqrt((N-2+alpha)^2 + 4 j (j+N-2))/2.
/// Only the plus branch yields finite-energy eigenfunctions; the minus branch
/// is provided for testing.
double exponent_m(int j, double alpha, int dim, Branch branch = Branch::plus);

/// Dimension of the space of degree-j spherical harmonics on S^(N-1).
int spherical_harmonic_multiplicity(int j, int dim);

struct SpectrumEntry {
  int j = 0;            // spherical-harmonic degree
  double exponent = 0;  // radial exponent m1(j)
  double gamma = 0;     // eigenvalue m1(j) R^(alpha-beta-1)
  int multiplicity = 1;
};

struct BallSpectrum {
  double radius = 1.0;
  std::vector<SpectrumEntry> entries;  // sorted by gamma, j = 0 first
};

/// Exact spectrum of the power-weighted problem on the origin-centered ball,
/// modes j = 0..j_max.
BallSpectrum power_ball_spectrum(const PowerWeightPair& wp, double radius, int j_max);

/// Regular solution F of F'' + (W'/W) F' + (N-1) F'/r = (N-1) F/r^2 with
/// F ~ r at the origin, integrated from eps = R * 1e-6 on a uniform output
/// grid. F is unique up to scale; F'(R)/F(R) is scale-invariant.
struct RadialProfile {
  std::vector<double> grid;  // grid[0] = eps, then uniform up to R
  std::vector<double> F;
  std::vector<double> Fprime;
  LogConvexWeight weight;
  int dim = 2;
  double eps = 0.0;
  double max_residual = 0.0;  // relative residual of the radial equation

  double radius() const { return grid.back(); }
  double value(double r) const;       // cubic Hermite between grid points
  double derivative(double r) const;
};

RadialProfile solve_radial_ode(const LogConvexWeight& weight, double R, int dim,
                               int steps = 4096, double eps_factor = 1e-6);

/// gamma_1(B_R) = F'(R)/F(R) for the log-convex problem on the ball bounding
/// the profile.
double logconvex_ball_gamma1(const RadialProfile& profile);

/// Same ratio at an interior radius r <= R of the profile.
double logconvex_ball_gamma1(const RadialProfile& profile, double r);

/// Certifies the two monotone quantities carried by the regular solution:
///   A(r) = (F')^2 + (N-1) F^2/r^2          non-increasing,
///   B(r) = (N-1) F^2/r + 2 F F' + (W'/W) F^2   non-decreasing.
/// Checked by finite differences on the profile grid, tolerance 1e-8 * scale.
struct MonotoneCertificate {
  bool ok = true;
  std::string quantity;  // "A" or "B" when violated
  double violation_r = 0.0;
  double violation_amount = 0.0;
};

MonotoneCertificate profile_monotonicity(const RadialProfile& profile);

/// B-quantity check for an arbitrary (F, F') table on the same grid; used to
/// exercise perturbed profiles in tests.
MonotoneCertificate profile_monotonicity(const std::vector<double>& grid,
                                         const std::vector<double>& F,
                                         const std::vector<double>& Fprime,
                                         const LogConvexWeight& weight, int dim);

}  // namespace steklov
