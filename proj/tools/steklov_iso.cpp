// steklov-iso: weighted Steklov eigenvalue toolkit.
//
// Subcommands: classify, ball, geometry, isop, isop32, solve, verify, suite.
// Exit codes: 0 success, 1 a verification reported a violation, 2 error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "steklov/ball_spectrum.hpp"
#include "steklov/io.hpp"
#include "steklov/verify.hpp"

using namespace steklov;
using ordered = nlohmann::ordered_json;

namespace {

void print_json(const ordered& j) { std::cout << j.dump(2) << std::endl; }

ordered symmetry_json(const SymmetryCheck& c) {
  ordered j;
  j["pass"] = c.pass;
  j["analytic"] = c.analytic;
  if (!c.analytic) {
    j["max_deviation"] = c.max_deviation;
    j["radii_sampled"] = c.radii_sampled;
  }
  return j;
}

int cmd_classify(double alpha, double beta, int dim, const std::string& f_rule) {
  ClassifyOptions copts;
  if (f_rule == "paper") copts.f_rule = FThresholdRule::printed;
  const auto ps = derive_params(make_power_pair(alpha, beta, dim));
  const auto tag = classify(ps, copts);
  ordered j;
  j["params"] = {{"alpha", ps.alpha}, {"beta", ps.beta}, {"dim", ps.dim}, {"z", ps.z},
                 {"rho", ps.rho},     {"ell", ps.ell},   {"k", ps.k},     {"m", ps.m}};
  j["theorem_case"] = theorem_case_name(tag.theorem_case);
  j["lemma_case"] = lemma_case_name(tag.lemma_case);
  if (tag.z0) j["z0"] = *tag.z0;
  j["f_rules_agree"] = tag.f_rules_agree;
  if (tag.iv_derived_holds) j["iv_derived_holds"] = *tag.iv_derived_holds;
  j["lemma_implication_holds"] = check_lemma23(ps, copts);
  print_json(j);
  return 0;
}

int cmd_ball(const std::string& weight_arg, double radius, int dim, int jmax, int steps,
             const std::string& profile_csv) {
  const WeightSpec spec = load_weight_arg(weight_arg);
  ordered j;
  j["radius"] = radius;
  j["dim"] = dim;
  if (const auto* wp = std::get_if<PowerWeightPair>(&spec)) {
    PowerWeightPair adjusted = *wp;
    adjusted.dim = dim;
    const auto spectrum = power_ball_spectrum(adjusted, radius, jmax);
    ordered entries = ordered::array();
    for (const auto& e : spectrum.entries) {
      entries.push_back({{"j", e.j},
                         {"exponent", e.exponent},
                         {"gamma", e.gamma},
                         {"multiplicity", e.multiplicity}});
    }
    j["kind"] = "power";
    j["entries"] = entries;
    print_json(j);
    return 0;
  }
  const auto& w = std::get<LogConvexWeight>(spec);
  const auto profile = solve_radial_ode(w, radius, dim, steps);
  const double gamma1 = logconvex_ball_gamma1(profile);
  j["kind"] = "logconvex";
  j["entries"] = ordered::array();
  j["entries"].push_back(
      {{"j", 0}, {"gamma", 0.0}, {"multiplicity", 1}});
  j["entries"].push_back(
      {{"j", 1}, {"gamma", gamma1}, {"multiplicity", spherical_harmonic_multiplicity(1, dim)}});
  j["ode_residual"] = profile.max_residual;
  if (!profile_csv.empty()) {
    std::ofstream out(profile_csv);
    out << "r,F,Fprime\n";
    for (std::size_t i = 0; i < profile.grid.size(); ++i) {
      char buf[128];
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", profile.grid[i], profile.F[i],
                    profile.Fprime[i]);
      out << buf;
    }
    j["profile_csv"] = profile_csv;
  }
  print_json(j);
  return 0;
}

int cmd_geometry(const std::string& domain_path, double ell, double k, int n_radii,
                 int n_angles) {
  const Domain dom = load_domain(domain_path);
  ordered j;
  const double vol = weighted_volume(dom, ell);
  j["volume_ell"] = vol;
  j["perimeter_k"] = weighted_perimeter(dom, k);
  j["equivalent_R"] = equivalent_radius(vol, ell, 2);
  j["s1"] = symmetry_json(check_s1(dom, n_radii, n_angles));
  j["s2"] = symmetry_json(check_s2(dom, n_radii, n_angles));
  print_json(j);
  return 0;
}

int cmd_isop(const std::string& domain_path, double k, double ell) {
  const Domain dom = load_domain(domain_path);
  const auto m = check_isop(dom, k, ell);
  ordered j;
  j["k"] = k;
  j["ell"] = ell;
  j["condition"] = lemma_case_name(m.condition);
  j["supported"] = m.supported;
  j["perimeter"] = m.lhs;
  j["sharp_bound"] = m.rhs;
  j["margin"] = m.margin;
  j["relative_margin"] = m.relative_margin;
  j["equivalent_R"] = m.equivalent_R;
  j["ball_perimeter"] = m.ball_perimeter;
  j["ball_margin"] = m.ball_margin;
  if (!m.supported) j["note"] = "unsupported parameter range; margins are advisory";
  print_json(j);
  return 0;
}

ScalarProfile parse_phi(const std::string& phi_arg, const LogConvexWeight& weight,
                        double r_need, int steps) {
  const auto j = nlohmann::json::parse(phi_arg);
  const std::string kind = j.value("kind", "power");
  if (kind == "power") return power_profile(j.value("m", 1.0));
  if (kind == "exp_decay") return exp_decay_profile();
  if (kind == "profile_squared") {
    return squared_profile(solve_radial_ode(weight, r_need, 2, steps));
  }
  fail(errc::config_error, "unknown comparison profile kind: " + kind);
}

int cmd_isop32(const std::string& domain_path, const std::string& weight_arg,
               const std::string& phi_arg, int steps) {
  const Domain dom = load_domain(domain_path);
  const WeightSpec spec = load_weight_arg(weight_arg);
  const auto* w = std::get_if<LogConvexWeight>(&spec);
  if (w == nullptr) {
    fail(errc::config_error, "the boundary comparison needs a log-convex weight");
  }
  const auto phi = parse_phi(phi_arg, *w, max_radius(dom) * 1.01, steps);
  const auto res = check_weighted_boundary_isop(dom, *w, phi);
  ordered j;
  j["phi"] = phi.kind;
  j["R"] = res.R;
  j["ball_side"] = res.lhs;
  j["domain_side"] = res.rhs;
  j["ok"] = res.ok;
  print_json(j);
  return 0;
}

int cmd_solve(const std::string& domain_path, const std::string& weight_arg, double h,
              int n_eigs, int refinements) {
  const Domain dom = load_domain(domain_path);
  const WeightSpec spec = load_weight_arg(weight_arg);
  RadialWeight w, v;
  if (const auto* wp = std::get_if<PowerWeightPair>(&spec)) {
    w = interior_weight(*wp);
    v = boundary_weight(*wp);
  } else {
    const auto& lw = std::get<LogConvexWeight>(spec);
    w = interior_weight(lw);
    v = boundary_weight(lw);
  }
  const auto study = fem_eigen_study(dom, w, v, h, refinements, n_eigs);
  ordered j;
  ordered levels = ordered::array();
  for (std::size_t m = 0; m < study.hs.size(); ++m) {
    levels.push_back({{"h", study.hs[m]}, {"gammas", study.gammas[m]}});
  }
  j["levels"] = levels;
  j["convergence_rate"] = study.rate;
  j["error_estimate"] = study.error_estimate;
  j["residuals"] = study.finest.residuals;
  j["orthogonality"] = {{"boundary", study.finest.max_offdiag_boundary},
                        {"energy", study.finest.max_offdiag_energy}};
  print_json(j);
  return 0;
}

int cmd_verify(const std::string& theorem, const std::string& domain_path,
               const std::string& weight_arg, const VerifyOptions& opts) {
  const auto id = theorem_from_label(theorem);
  if (!id) fail(errc::config_error, "unknown theorem label: " + theorem);
  const Domain dom = load_domain(domain_path);
  const WeightSpec spec = load_weight_arg(weight_arg);
  VerificationReport rep = verify(*id, dom, spec, opts);
  rep.domain_id = domain_path;
  rep.weight_id = weight_arg;
  std::cout << report_to_json_line(rep) << std::endl;
  return rep.status == VerifyStatus::violated ? 1 : 0;
}

int cmd_suite(const std::string& config_path, const std::string& out_path,
              const std::string& csv_path) {
  const SuiteConfig config = load_suite_config(config_path);
  const SuiteOutcome outcome = run_suite(config, out_path, csv_path);
  if (out_path.empty()) {
    for (const auto& r : outcome.reports) std::cout << report_to_json_line(r) << '\n';
  }
  std::size_t verified = 0, violated = 0, unsupported = 0, inconclusive = 0;
  for (const auto& r : outcome.reports) {
    switch (r.status) {
      case VerifyStatus::verified: ++verified; break;
      case VerifyStatus::violated: ++violated; break;
      case VerifyStatus::unsupported: ++unsupported; break;
      case VerifyStatus::inconclusive: ++inconclusive; break;
    }
  }
  std::fprintf(stderr, "suite: %zu entries, %zu verified, %zu inconclusive, %zu unsupported, %zu violated\n",
               outcome.reports.size(), verified, inconclusive, unsupported, violated);
  return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted Steklov eigenvalues and isoperimetric verification"};
  app.require_subcommand(1);

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "Derived parameters and condition cases");
  double alpha = 0.0, beta = 0.0;
  int dim = 2;
  std::string f_rule = "derived";
  classify_cmd->add_option("--alpha", alpha, "Interior weight exponent")->required();
  classify_cmd->add_option("--beta", beta, "Boundary exponent parameter")->required();
  classify_cmd->add_option("--dim", dim, "Space dimension")->required();
  classify_cmd->add_option("--f-threshold", f_rule, "Case-iii trigger rule: derived|paper")
      ->check(CLI::IsMember({"derived", "paper"}));

  // ball
  auto* ball_cmd = app.add_subcommand("ball", "Spectrum of the centered ball");
  std::string weight_arg;
  double radius = 1.0;
  int jmax = 4, ode_steps = 4096;
  std::string profile_csv;
  ball_cmd->add_option("--weight", weight_arg, "Weight record (JSON or file)")->required();
  ball_cmd->add_option("--radius", radius, "Ball radius")->required();
  ball_cmd->add_option("--dim", dim, "Space dimension");
  ball_cmd->add_option("--jmax", jmax, "Largest mode index (power weights)");
  ball_cmd->add_option("--steps", ode_steps, "Radial grid steps (log-convex weights)");
  ball_cmd->add_option("--profile", profile_csv, "Write (r, F, F') rows to this CSV");

  // geometry
  auto* geo_cmd = app.add_subcommand("geometry", "Weighted measures and symmetry certificates");
  std::string domain_path;
  double ell = 0.0, kexp = 0.0;
  int n_radii = 24, n_angles = 512;
  geo_cmd->add_option("--domain", domain_path, "Domain JSON file")->required();
  geo_cmd->add_option("--ell", ell, "Volume weight exponent")->required();
  geo_cmd->add_option("--k", kexp, "Perimeter weight exponent")->required();
  geo_cmd->add_option("--radii", n_radii, "Radii sampled by the symmetry checks");
  geo_cmd->add_option("--angles", n_angles, "Angular scan resolution");

  // isop
  auto* isop_cmd = app.add_subcommand("isop", "Weighted isoperimetric margins");
  isop_cmd->add_option("--domain", domain_path, "Domain JSON file")->required();
  isop_cmd->add_option("--k", kexp, "Perimeter weight exponent")->required();
  isop_cmd->add_option("--ell", ell, "Volume weight exponent")->required();

  // isop32
  auto* isop32_cmd =
      app.add_subcommand("isop32", "Weighted boundary comparison against the equal-measure ball");
  std::string phi_arg = "{\"kind\":\"power\",\"m\":1}";
  isop32_cmd->add_option("--domain", domain_path, "Domain JSON file")->required();
  isop32_cmd->add_option("--weight", weight_arg, "Log-convex weight record")->required();
  isop32_cmd->add_option("--phi", phi_arg, "Comparison profile record");
  isop32_cmd->add_option("--steps", ode_steps, "Radial grid steps for profile_squared");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Finite element Steklov spectrum");
  solve_cmd->set_help_flag("--help", "Print help");
  double h = 0.06;
  int n_eigs = 4, refinements = 3;
  solve_cmd->add_option("--domain", domain_path, "Domain JSON file")->required();
  solve_cmd->add_option("--weight", weight_arg, "Weight record (JSON or file)")->required();
  solve_cmd->add_option("--h", h, "Target mesh size")->required();
  solve_cmd->add_option("--neigs", n_eigs, "Number of nontrivial eigenvalues");
  solve_cmd->add_option("--refinements", refinements, "Number of refinement levels");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Run one verification pipeline");
  verify_cmd->set_help_flag("--help", "Print help");
  std::string theorem;
  verify_cmd->add_option("--theorem", theorem, "T1.1|T1.2|T1.4|T1.5|C1.3")->required();
  verify_cmd->add_option("--domain", domain_path, "Domain JSON file")->required();
  verify_cmd->add_option("--weight", weight_arg, "Weight record (JSON or file)")->required();
  verify_cmd->add_option("--h", h, "Target mesh size");
  verify_cmd->add_option("--refinements", refinements, "Refinement levels");
  verify_cmd->add_option("--ode-steps", ode_steps, "Radial grid steps");
  verify_cmd->add_option("--f-threshold", f_rule, "Case-iii trigger rule: derived|paper")
      ->check(CLI::IsMember({"derived", "paper"}));

  // suite
  auto* suite_cmd = app.add_subcommand("suite", "Run a configured verification suite");
  std::string config_path, out_path, csv_path;
  suite_cmd->add_option("--config", config_path, "Suite configuration JSON")->required();
  suite_cmd->add_option("--out", out_path, "JSON-lines report path");
  suite_cmd->add_option("--csv", csv_path, "CSV summary path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*classify_cmd) return cmd_classify(alpha, beta, dim, f_rule);
    if (*ball_cmd) return cmd_ball(weight_arg, radius, dim, jmax, ode_steps, profile_csv);
    if (*geo_cmd) return cmd_geometry(domain_path, ell, kexp, n_radii, n_angles);
    if (*isop_cmd) return cmd_isop(domain_path, kexp, ell);
    if (*isop32_cmd) return cmd_isop32(domain_path, weight_arg, phi_arg, ode_steps);
    if (*solve_cmd) return cmd_solve(domain_path, weight_arg, h, n_eigs, refinements);
    if (*verify_cmd) {
      VerifyOptions opts;
      opts.h = h;
      opts.refinements = refinements;
      opts.ode_steps = ode_steps;
      if (f_rule == "paper") opts.classify.f_rule = FThresholdRule::printed;
      return cmd_verify(theorem, domain_path, weight_arg, opts);
    }
    if (*suite_cmd) return cmd_suite(config_path, out_path, csv_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }
  return 0;
}
