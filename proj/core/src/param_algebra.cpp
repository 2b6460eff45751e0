#include "steklov/param_algebra.hpp"

#include <algorithm>
#include <cmath>

namespace steklov {

ParamSet derive_params(const PowerWeightPair& wp) {
  ParamSet ps;
  ps.alpha = wp.alpha;
  ps.beta = wp.beta;
  ps.dim = wp.dim;
  const double n = wp.dim;
  ps.z = wp.beta + 1.0 - wp.alpha;
  ps.rho = std::sqrt(n * n + 2.0 * wp.alpha * (n - 2.0) + wp.alpha * wp.alpha);
  ps.ell = ps.rho - n;
  ps.k = ps.z + 1.0 - n + ps.rho;
  ps.m = 0.5 * (2.0 - n - wp.alpha) + 0.5 * ps.rho;
  return ps;
}

double f_value(double z, double rho, int dim) {
  const double n = dim;
  return z * (z + rho) * (z + rho) + rho * (n - 1.0) * (n - 1.0) / n;
}

double find_z0(double rho, int dim) {
  double lo = -rho / 3.0;
  double hi = 0.0;
  double flo = f_value(lo, rho, dim);
  if (flo >= 0.0) {
    fail(errc::no_root_in_bracket, "f(-rho/3) >= 0: f has no zero in [-rho/3, 0]");
  }
  // f is strictly increasing on the bracket, so bisection is safe.
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (f_value(mid, rho, dim) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double z0 = 0.5 * (lo + hi);
  for (int it = 0; it < 4; ++it) {
    const double fp = (z0 + rho) * (3.0 * z0 + rho);
    if (fp == 0.0) break;
    z0 = std::clamp(z0 - f_value(z0, rho, dim) / fp, -rho / 3.0, 0.0);
  }
  return z0;
}

const char* theorem_case_name(TheoremCase c) noexcept {
  switch (c) {
    case TheoremCase::i: return "i";
    case TheoremCase::ii: return "ii";
    case TheoremCase::iii: return "iii";
    case TheoremCase::iv: return "iv";
    case TheoremCase::none: return "none";
  }
  return "?";
}

const char* lemma_case_name(LemmaCase c) noexcept {
  switch (c) {
    case LemmaCase::i: return "i'";
    case LemmaCase::ii: return "ii'";
    case LemmaCase::iii: return "iii'";
    case LemmaCase::iv: return "iv'";
    case LemmaCase::none: return "none";
  }
  return "?";
}

namespace {

bool proviso_triggered(double rho, int dim, FThresholdRule rule) {
  if (rule == FThresholdRule::printed) {
    return dim - 1.0 < 2.0 * rho / (3.0 * std::sqrt(3.0));
  }
  return f_value(-rho / 3.0, rho, dim) < 0.0;
}

}  // namespace

TheoremCase classify_theorem11(const ParamSet& ps, const ClassifyOptions& opts) {
  const double n = ps.dim;
  const double z = ps.z;
  const double rho = ps.rho;
  if (z >= 0.0) return TheoremCase::i;
  if (z >= -rho / n && z <= std::min(0.0, n - 1.0 - rho)) return TheoremCase::ii;
  if (ps.dim >= 3 && z >= n - 1.0 - rho && z <= 0.0) {
    if (!proviso_triggered(rho, ps.dim, opts.f_rule)) return TheoremCase::iii;
    if (f_value(-rho / 3.0, rho, ps.dim) < 0.0) {
      if (z >= find_z0(rho, ps.dim)) return TheoremCase::iii;
    } else {
      // Printed trigger fired but f >= 0 on the whole bracket: no zero exists
      // and no extra restriction applies.
      return TheoremCase::iii;
    }
  }
  if (ps.dim == 2 && z >= 0.5 * (std::abs(ps.alpha) - rho) && z <= 0.0) return TheoremCase::iv;
  return TheoremCase::none;
}

LemmaCase classify_lemma21(double k, double ell, int dim) {
  require(ell > -dim, errc::ell_out_of_range, "volume exponent must satisfy ell > -dim");
  const double n = dim;
  if (k >= ell + 1.0) return LemmaCase::i;
  if (dim >= 2 && k <= ell + 1.0 && ell * (n - 1.0) / n <= k && k <= 0.0) return LemmaCase::ii;
  if (k >= 0.0 && k <= ell + 1.0) {
    if (dim >= 3) {
      const double s = k + n - 1.0;
      const double denom = s * s - (n - 1.0) * (n - 1.0) / n;
      if (denom > 0.0 && ell <= s * s * s / denom - n) return LemmaCase::iii;
    }
    if (dim == 2 && ell <= k - 1.0 + 1.0 / (k + 1.0)) return LemmaCase::iv;
  }
  return LemmaCase::none;
}

ConditionTag classify(const ParamSet& ps, const ClassifyOptions& opts) {
  ConditionTag tag;
  tag.theorem_case = classify_theorem11(ps, opts);
  tag.lemma_case = classify_lemma21(ps.k, ps.ell, ps.dim);

  const bool printed = proviso_triggered(ps.rho, ps.dim, FThresholdRule::printed);
  const bool by_sign = proviso_triggered(ps.rho, ps.dim, FThresholdRule::sign_of_f);
  tag.f_rules_agree = printed == by_sign;

  if (tag.theorem_case == TheoremCase::iii && by_sign) {
    tag.z0 = find_z0(ps.rho, ps.dim);
  }
  if (tag.theorem_case == TheoremCase::iv) {
    tag.iv_derived_holds = ps.z + 1.0 / (ps.z + ps.rho) >= 0.0;
  }
  return tag;
}

bool check_lemma23(const ParamSet& ps, const ClassifyOptions& opts) {
  if (classify_theorem11(ps, opts) == TheoremCase::none) return true;
  return classify_lemma21(ps.k, ps.ell, ps.dim) != LemmaCase::none;
}

}  // namespace steklov
