#pragma once

#include <optional>
#include <string>

#include "steklov/weights.hpp"

namespace steklov {

/// Scalars derived from a power weight pair:
///   z   = beta + 1 - alpha
///   rho = sqrt(N^2 + 2 alpha (N-2) + alpha^2)
///   ell = rho - N            (volume-weight exponent)
///   k   = z + 1 - N + rho    (perimeter-weight exponent)
///   m   = first nontrivial radial exponent on the ball
/// The identities ell = alpha + 2m - 2 and k = beta + 2m hold exactly.
struct ParamSet {
  double alpha = 0.0;
  double beta = 0.0;
  int dim = 2;
  double z = 0.0;
  double rho = 0.0;
  double ell = 0.0;
  double k = 0.0;
  double m = 0.0;
};

ParamSet derive_params(const PowerWeightPair& wp);

/// f(z) = z (z + rho)^2 + rho (N-1)^2 / N. The cubic whose sign decides the
/// third eigenvalue-theorem case; strictly increasing on (-rho/3, 0).
double f_value(double z, double rho, int dim);

/// Unique zero of f in [-rho/3, 0], located by bisection and polished by
/// Newton so |f(z0)| <= 1e-12. Requires f(-rho/3) < 0, otherwise there is no
/// root in the bracket and NoRootInBracket is thrown.
double find_z0(double rho, int dim);

enum class TheoremCase { i, ii, iii, iv, none };
enum class LemmaCase { i, ii, iii, iv, none };

const char* theorem_case_name(TheoremCase c) noexcept;  // "i".."iv" / "none"
const char* lemma_case_name(LemmaCase c) noexcept;      // "i'".."iv'" / "none"

/// The printed trigger for the z0 proviso, N-1 < 2 rho/(3 sqrt 3), is
/// inconsistent with evaluating f at -rho/3 directly (the two differ by a
/// factor sqrt(N)); the sign-of-f rule decides by computing f(-rho/3) and is
/// the default.
enum class FThresholdRule { sign_of_f, printed };

struct ClassifyOptions {
  FThresholdRule f_rule = FThresholdRule::sign_of_f;
};

/// Cases overlap on their boundaries; classifiers return the lowest-numbered
/// matching case, with boundary values accepted (closed conditions).
TheoremCase classify_theorem11(const ParamSet& ps, const ClassifyOptions& opts = {});
LemmaCase classify_lemma21(double k, double ell, int dim);

struct ConditionTag {
  TheoremCase theorem_case = TheoremCase::none;
  LemmaCase lemma_case = LemmaCase::none;
  std::optional<double> z0;  // present only for case iii with the proviso active
  bool f_rules_agree = true;
  /// For case iv: whether the derived inequality 0 <= z + 1/(z+rho) holds.
  std::optional<bool> iv_derived_holds;
};

ConditionTag classify(const ParamSet& ps, const ClassifyOptions& opts = {});

/// True iff a matching eigenvalue-theorem case implies a matching
/// isoperimetric-lemma case for the derived (k, ell).
bool check_lemma23(const ParamSet& ps, const ClassifyOptions& opts = {});

}  // namespace steklov
