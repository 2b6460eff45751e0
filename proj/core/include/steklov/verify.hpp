#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "steklov/fem.hpp"
#include "steklov/geometry.hpp"
#include "steklov/isoperimetry.hpp"
#include "steklov/param_algebra.hpp"

namespace steklov {

using WeightSpec = std::variant<PowerWeightPair, LogConvexWeight>;

/// Report labels follow the statement numbering used in the external file
/// formats: T1.1/T1.2 are the power-weight first-eigenvalue and
/// harmonic-mean bounds, T1.4/T1.5 their log-convex counterparts, C1.3 the
/// alpha = 0 special case of T1.1.
enum class TheoremId {
  power_gamma1,        // "T1.1"
  power_harmonic,      // "T1.2"
  logconvex_gamma1,    // "T1.4"
  logconvex_harmonic,  // "T1.5"
  power_corollary,     // "C1.3"
};

const char* theorem_label(TheoremId id) noexcept;
std::optional<TheoremId> theorem_from_label(const std::string& label);

enum class VerifyStatus { verified, violated, unsupported, inconclusive };
const char* status_name(VerifyStatus s) noexcept;

/// Intermediate inequality or identity from the proof chain, recorded to
/// localize failures: a broken row with a healthy final margin points at the
/// quadrature, not the theorem.
struct ConsistencyRow {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = true;
};

struct VerificationReport {
  TheoremId theorem = TheoremId::power_gamma1;
  std::string domain_id;
  std::string weight_id;
  std::string weight_json;  // the weight record as configured
  std::optional<ParamSet> params;
  std::optional<ConditionTag> condition;
  SymmetryCertificate symmetry;
  double gamma1_omega = 0.0;
  std::vector<double> gamma_list_omega;
  double R = 0.0;
  double gamma1_ball = 0.0;
  double margin = 0.0;
  double tolerance_used = 0.0;
  VerifyStatus status = VerifyStatus::inconclusive;
  double mesh_h = 0.0;
  double convergence_rate = 0.0;
  std::vector<ConsistencyRow> consistency;
  std::string note;
};

/// Error budget: margins are compared against eps_total = eps_fem (Richardson
/// from the refinement study) + eps_ode (step-doubling) + quadrature slack.
/// |margin| below the budget is reported inconclusive, never violated.
struct ToleranceModel {
  double quad = 1e-9;
  double ode = 1e-8;
  double slack = 1e-9;
};

struct VerifyOptions {
  double h = 0.06;
  int refinements = 3;
  int ode_steps = 4096;
  int n_radii = 24;    // symmetry sampling
  int n_angles = 512;
  ToleranceModel tol;
  ClassifyOptions classify;
};

VerificationReport verify_power_gamma1(const Domain& dom, const PowerWeightPair& wp,
                                       const VerifyOptions& opts = {},
                                       TheoremId label = TheoremId::power_gamma1);
VerificationReport verify_power_harmonic(const Domain& dom, const PowerWeightPair& wp,
                                         const VerifyOptions& opts = {});
VerificationReport verify_logconvex_gamma1(const Domain& dom, const LogConvexWeight& weight,
                                           const VerifyOptions& opts = {});
VerificationReport verify_logconvex_harmonic(const Domain& dom, const LogConvexWeight& weight,
                                             const VerifyOptions& opts = {});

/// Dispatch on the theorem id; throws ConfigError when the weight kind does
/// not fit the requested statement.
VerificationReport verify(TheoremId id, const Domain& dom, const WeightSpec& weight,
                          const VerifyOptions& opts = {});

struct SuiteDomain {
  std::string id;
  Domain domain;
  std::vector<TheoremId> theorems;  // empty: use the suite-level list
};

struct SuiteWeight {
  std::string id;
  WeightSpec spec;
  std::string json;  // original record, echoed into reports
};

struct SuiteConfig {
  std::vector<SuiteDomain> domains;
  std::vector<SuiteWeight> weights;
  std::vector<TheoremId> theorems;
  VerifyOptions options;
};

struct SuiteOutcome {
  std::vector<VerificationReport> reports;
  int exit_code = 0;  // 0 ok, 1 at least one violation
};

/// Runs every compatible (domain, weight, theorem) triple. Reports are
/// written as JSON lines and a CSV summary when paths are given; two runs of
/// the same config produce identical bytes.
SuiteOutcome run_suite(const SuiteConfig& config, const std::string& jsonl_path = "",
                       const std::string& csv_path = "");

}  // namespace steklov
