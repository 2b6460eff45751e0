#include "steklov/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <future>
#include <numbers>
#include <thread>

#include "steklov/ball_spectrum.hpp"
#include "steklov/io.hpp"
#include "steklov/quadrature.hpp"

namespace steklov {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

const char* theorem_label(TheoremId id) noexcept {
  switch (id) {
    case TheoremId::power_gamma1: return "T1.1";
    case TheoremId::power_harmonic: return "T1.2";
    case TheoremId::logconvex_gamma1: return "T1.4";
    case TheoremId::logconvex_harmonic: return "T1.5";
    case TheoremId::power_corollary: return "C1.3";
  }
  return "?";
}

std::optional<TheoremId> theorem_from_label(const std::string& label) {
  for (TheoremId id : {TheoremId::power_gamma1, TheoremId::power_harmonic,
                       TheoremId::logconvex_gamma1, TheoremId::logconvex_harmonic,
                       TheoremId::power_corollary}) {
    if (label == theorem_label(id)) return id;
  }
  return std::nullopt;
}

const char* status_name(VerifyStatus s) noexcept {
  switch (s) {
    case VerifyStatus::verified: return "verified";
    case VerifyStatus::violated: return "violated";
    case VerifyStatus::unsupported: return "unsupported";
    case VerifyStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

VerifyStatus decide(bool hypotheses_ok, double margin, double tolerance) {
  if (!hypotheses_ok) return VerifyStatus::unsupported;
  if (margin > tolerance) return VerifyStatus::verified;
  if (margin < -tolerance) return VerifyStatus::violated;
  return VerifyStatus::inconclusive;
}

SymmetryCertificate check_symmetry(const Domain& dom, const VerifyOptions& opts) {
  return {check_s1(dom, opts.n_radii, opts.n_angles), check_s2(dom, opts.n_radii, opts.n_angles)};
}

/// Richardson error estimate and observed order for a per-level scalar.
struct SequenceFit {
  double rate = 0.0;
  double error = 0.0;
};

SequenceFit fit_sequence(const std::vector<double>& values) {
  // Richardson with a 1.5x cushion: the meshes at successive levels are not
  // nested, so consecutive differences carry mesh-family noise.
  SequenceFit fit;
  const std::size_t m = values.size();
  if (m >= 3) {
    const double d1 = values[m - 3] - values[m - 2];
    const double d2 = values[m - 2] - values[m - 1];
    if (d2 != 0.0 && d1 / d2 > 0.0) {
      fit.rate = std::log2(d1 / d2);
      fit.error = 1.5 * std::abs(d2) / (std::pow(2.0, std::clamp(fit.rate, 0.5, 4.0)) - 1.0);
    } else {
      fit.error = 1.5 * std::abs(d2);
    }
  } else if (m == 2) {
    fit.error = 1.5 * std::abs(values[1] - values[0]);
  } else if (m == 1) {
    fit.error = 1e-2 * std::abs(values[0]);
  }
  return fit;
}

/// Cumulative integral of a smooth radial integrand from 0, Simpson per panel
/// with a local tail so evaluations at arbitrary radii stay accurate.
class RadialCumulative {
 public:
  RadialCumulative(std::function<double(double)> f, double r_max, int panels = 8192)
      : f_(std::move(f)), r_max_(r_max), h_(r_max / panels) {
    cum_.resize(panels + 1, 0.0);
    for (int i = 0; i < panels; ++i) {
      cum_[i + 1] = cum_[i] + simpson(i * h_, (i + 1) * h_);
    }
  }

  double operator()(double t) const {
    if (t <= 0.0) return 0.0;
    t = std::min(t, r_max_);
    const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(t / h_), cum_.size() - 2);
    return cum_[i] + simpson(i * h_, t);
  }

 private:
  double simpson(double a, double b) const {
    if (b <= a) return 0.0;
    const double m = 0.5 * (a + b);
    return (b - a) / 6.0 * (f_(a) + 4.0 * f_(m) + f_(b));
  }

  std::function<double(double)> f_;
  double r_max_;
  double h_;
  std::vector<double> cum_;
};

struct PowerPipeline {
  ParamSet ps;
  ConditionTag tag;
  SymmetryCertificate sym;
  double vol_ell = 0.0;
  double perim_k = 0.0;
  double R = 0.0;
  double gamma_ball = 0.0;
  RefinementStudy study;
};

PowerPipeline run_power_pipeline(const Domain& dom, const PowerWeightPair& wp,
                                 const VerifyOptions& opts) {
  require(wp.dim == 2, errc::config_error, "mesh verification is planar; use dim = 2");
  PowerPipeline p;
  p.ps = derive_params(wp);
  p.tag = classify(p.ps, opts.classify);
  p.sym = check_symmetry(dom, opts);
  p.vol_ell = weighted_volume(dom, p.ps.ell);
  p.perim_k = weighted_perimeter(dom, p.ps.k);
  p.R = equivalent_radius(p.vol_ell, p.ps.ell, wp.dim);
  p.gamma_ball = p.ps.m * std::pow(p.R, wp.alpha - wp.beta - 1.0);
  p.study = fem_eigen_study(dom, interior_weight(wp), boundary_weight(wp), opts.h,
                            opts.refinements, std::max(3, wp.dim + 1));
  return p;
}

void fill_common(VerificationReport& r, const PowerPipeline& p) {
  r.params = p.ps;
  r.condition = p.tag;
  r.symmetry = p.sym;
  r.R = p.R;
  r.gamma1_ball = p.gamma_ball;
  r.gamma1_omega = p.study.gamma1();
  r.gamma_list_omega = p.study.gammas.back();
  r.mesh_h = p.study.hs.back();
  r.convergence_rate = p.study.rate;
}

struct LogConvexPipeline {
  SymmetryCertificate sym;
  double mu_omega = 0.0;
  double R = 0.0;
  double gamma_ball = 0.0;
  double ode_error = 0.0;
  RadialProfile profile;
  RefinementStudy study;
};

LogConvexPipeline run_logconvex_pipeline(const Domain& dom, const LogConvexWeight& weight,
                                         const VerifyOptions& opts) {
  const auto cert = validate_log_convex(weight);
  if (!cert.ok) {
    fail(errc::weight_invalid,
         "weight is not admissible (" + cert.reason + " near r = " +
             std::to_string(cert.violation_r) + ")");
  }
  LogConvexPipeline p;
  p.sym = check_symmetry(dom, opts);
  p.mu_omega = mu_measure(MeasurableSet{dom}, weight);
  p.R = mu_equivalent_radius(dom, weight);
  const double r_need = std::max(max_radius(dom), p.R) * (1.0 + 1e-12);
  require(weight.r_max >= r_need, errc::weight_invalid,
          "weight horizon r_max is smaller than the domain radius");
  p.profile = solve_radial_ode(weight, r_need, 2, opts.ode_steps);
  p.gamma_ball = logconvex_ball_gamma1(p.profile, p.R);
  const RadialProfile finer = solve_radial_ode(weight, r_need, 2, 2 * opts.ode_steps);
  p.ode_error = std::abs(logconvex_ball_gamma1(finer, p.R) - p.gamma_ball) +
                opts.tol.ode * p.gamma_ball;
  p.study = fem_eigen_study(dom, interior_weight(weight), boundary_weight(weight), opts.h,
                            opts.refinements, 3);
  return p;
}

std::vector<double> harmonic_margins(const RefinementStudy& study, double gamma_ball, int dim) {
  std::vector<double> margins;
  for (const auto& gammas : study.gammas) {
    double sum = 0.0;
    for (int i = 0; i < dim; ++i) sum += 1.0 / gammas.at(i);
    margins.push_back(sum - dim / gamma_ball);
  }
  return margins;
}

}  // namespace

VerificationReport verify_power_gamma1(const Domain& dom, const PowerWeightPair& wp,
                                       const VerifyOptions& opts, TheoremId label) {
  const PowerPipeline p = run_power_pipeline(dom, wp, opts);
  VerificationReport r;
  r.theorem = label;
  fill_common(r, p);

  r.margin = p.gamma_ball - p.study.gamma1();
  const double quad_eps =
      opts.tol.quad * (p.gamma_ball + r.gamma1_omega) * (1.0 + std::abs(wp.alpha - wp.beta - 1.0));
  r.tolerance_used = p.study.error_estimate + quad_eps;

  bool gates = p.sym.s1.pass && p.tag.theorem_case != TheoremCase::none;
  if (!p.sym.s1.pass) r.note = "balanced-slice condition fails";
  if (p.tag.theorem_case == TheoremCase::none) r.note = "no admissibility case matches";
  if (label == TheoremId::power_corollary && (wp.alpha != 0.0 || wp.beta < -2.0)) {
    gates = false;
    r.note = "corollary requires alpha = 0 and beta >= -2";
  }
  r.status = decide(gates, r.margin, r.tolerance_used);

  const double n_plus = wp.dim + p.ps.m * p.ps.m - 1.0;
  const double row_tol = opts.tol.slack * n_plus * p.vol_ell + p.study.error_estimate * p.perim_k;
  r.consistency.push_back({"trial_energy_bound", n_plus * p.vol_ell,
                           r.gamma1_omega * p.perim_k,
                           n_plus * p.vol_ell >= r.gamma1_omega * p.perim_k - row_tol});

  const double ball_vol = kTwoPi * std::pow(p.R, p.ps.ell + 2.0) / (p.ps.ell + 2.0);
  const double ball_perim = kTwoPi * std::pow(p.R, p.ps.k + 1.0);
  r.consistency.push_back(
      {"ball_energy_identity", n_plus * ball_vol, p.gamma_ball * ball_perim,
       std::abs(n_plus * ball_vol - p.gamma_ball * ball_perim) <=
           1e-9 * n_plus * ball_vol});

  if (p.tag.lemma_case != LemmaCase::none) {
    r.consistency.push_back({"perimeter_bound", p.perim_k, ball_perim,
                             p.perim_k >= ball_perim * (1.0 - opts.tol.slack)});
  }
  return r;
}

VerificationReport verify_power_harmonic(const Domain& dom, const PowerWeightPair& wp,
                                         const VerifyOptions& opts) {
  const PowerPipeline p = run_power_pipeline(dom, wp, opts);
  VerificationReport r;
  r.theorem = TheoremId::power_harmonic;
  fill_common(r, p);

  const std::vector<double> margins = harmonic_margins(p.study, p.gamma_ball, wp.dim);
  r.margin = margins.back();
  const SequenceFit fit = fit_sequence(margins);
  r.convergence_rate = fit.rate;
  const double scale = wp.dim / p.gamma_ball;
  r.tolerance_used = fit.error + opts.tol.quad * scale * (1.0 + std::abs(wp.alpha - wp.beta - 1.0));

  bool gates =
      p.sym.s1.pass && p.sym.s2.pass && p.tag.theorem_case != TheoremCase::none;
  if (!p.sym.s1.pass) r.note = "balanced-slice condition fails";
  if (!p.sym.s2.pass) r.note = "isotropic-slice condition fails";
  if (p.tag.theorem_case == TheoremCase::none) r.note = "no admissibility case matches";
  r.status = decide(gates, r.margin, r.tolerance_used);

  // Proof chain: sum 1/gamma_i >= N/(N+m^2-1) P_k/|.|_ell >= N/gamma_1(ball).
  const double n_plus = wp.dim + p.ps.m * p.ps.m - 1.0;
  const double mid = wp.dim / n_plus * p.perim_k / p.vol_ell;
  double inv_sum = 0.0;
  for (int i = 0; i < wp.dim; ++i) inv_sum += 1.0 / p.study.gammas.back().at(i);
  r.consistency.push_back(
      {"sum_lower_bound", inv_sum, mid, inv_sum >= mid - fit.error - opts.tol.slack * mid});
  r.consistency.push_back(
      {"mid_ge_ball", mid, scale, mid >= scale * (1.0 - opts.tol.slack - 1e-12)});
  return r;
}

namespace {

VerificationReport logconvex_common(const Domain& dom, const LogConvexWeight& weight,
                                    const LogConvexPipeline& p, TheoremId label) {
  VerificationReport r;
  r.theorem = label;
  r.symmetry = p.sym;
  r.R = p.R;
  r.gamma1_ball = p.gamma_ball;
  r.gamma1_omega = p.study.gamma1();
  r.gamma_list_omega = p.study.gammas.back();
  r.mesh_h = p.study.hs.back();
  r.convergence_rate = p.study.rate;

  // Shared consistency rows along the solved profile.
  const int dim = 2;
  const auto area_density = [&](double s) {
    if (s <= 0.0) return 0.0;  // F ~ c s, so s (F')^2 and F^2/s both vanish
    const double f = p.profile.value(s);
    const double fp = p.profile.derivative(s);
    return (s * fp * fp + (dim - 1.0) * f * f / s) * weight.value(s);
  };
  const RadialCumulative cum_energy(area_density, p.profile.radius());
  const double energy_omega = radial_volume_integral(dom, cum_energy);
  const double energy_ball = kTwoPi * cum_energy(p.R);
  const auto boundary_density_fn = [&](double s) {
    const double f = p.profile.value(s);
    return f * f * weight.value(s);
  };
  const double trace_omega = radial_boundary_integral(dom, boundary_density_fn);
  const double trace_ball = kTwoPi * p.R * boundary_density_fn(p.R);

  const double quad_tol = 1e-6;
  r.consistency.push_back({"trial_energy_bound", energy_omega,
                           r.gamma1_omega * trace_omega,
                           energy_omega >= r.gamma1_omega * trace_omega -
                                               (p.study.error_estimate + quad_tol) * trace_omega});
  r.consistency.push_back({"rearrangement_bound", energy_omega, energy_ball,
                           energy_omega <= energy_ball * (1.0 + quad_tol)});
  r.consistency.push_back({"boundary_comparison", trace_ball, trace_omega,
                           trace_ball <= trace_omega * (1.0 + quad_tol)});
  const auto mono = profile_monotonicity(p.profile);
  r.consistency.push_back({"profile_monotone", mono.violation_amount, 0.0, mono.ok});
  r.consistency.push_back(
      {"ball_energy_identity", p.gamma_ball * trace_ball, energy_ball,
       std::abs(p.gamma_ball * trace_ball - energy_ball) <= quad_tol * energy_ball});

  if (label == TheoremId::logconvex_harmonic) {
    // Normalized so the ball energy equals the dimension count.
    const double c2 = dim / energy_ball;
    const double normalized = p.gamma_ball * c2 * trace_ball;
    r.consistency.push_back({"normalization_identity", normalized, static_cast<double>(dim),
                             std::abs(normalized - dim) <= 1e-6 * dim});
  }
  return r;
}

}  // namespace

VerificationReport verify_logconvex_gamma1(const Domain& dom, const LogConvexWeight& weight,
                                           const VerifyOptions& opts) {
  const LogConvexPipeline p = run_logconvex_pipeline(dom, weight, opts);
  VerificationReport r = logconvex_common(dom, weight, p, TheoremId::logconvex_gamma1);

  r.margin = p.gamma_ball - r.gamma1_omega;
  r.tolerance_used =
      p.study.error_estimate + p.ode_error + opts.tol.quad * (p.gamma_ball + r.gamma1_omega);
  const bool gates = p.sym.s1.pass;
  if (!p.sym.s1.pass) r.note = "balanced-slice condition fails";
  r.status = decide(gates, r.margin, r.tolerance_used);
  return r;
}

VerificationReport verify_logconvex_harmonic(const Domain& dom, const LogConvexWeight& weight,
                                             const VerifyOptions& opts) {
  const LogConvexPipeline p = run_logconvex_pipeline(dom, weight, opts);
  VerificationReport r = logconvex_common(dom, weight, p, TheoremId::logconvex_harmonic);

  const int dim = 2;
  const std::vector<double> margins = harmonic_margins(p.study, p.gamma_ball, dim);
  r.margin = margins.back();
  const SequenceFit fit = fit_sequence(margins);
  r.convergence_rate = fit.rate;
  const double scale = dim / p.gamma_ball;
  r.tolerance_used =
      fit.error + p.ode_error * scale / p.gamma_ball + opts.tol.quad * scale;

  bool gates = p.sym.s1.pass && p.sym.s2.pass;
  if (!p.sym.s1.pass) r.note = "balanced-slice condition fails";
  if (!p.sym.s2.pass) r.note = "isotropic-slice condition fails";
  r.status = decide(gates, r.margin, r.tolerance_used);
  return r;
}

VerificationReport verify(TheoremId id, const Domain& dom, const WeightSpec& weight,
                          const VerifyOptions& opts) {
  if (const auto* wp = std::get_if<PowerWeightPair>(&weight)) {
    switch (id) {
      case TheoremId::power_gamma1: return verify_power_gamma1(dom, *wp, opts);
      case TheoremId::power_corollary:
        return verify_power_gamma1(dom, *wp, opts, TheoremId::power_corollary);
      case TheoremId::power_harmonic: return verify_power_harmonic(dom, *wp, opts);
      default:
        fail(errc::config_error, "statement requires a log-convex weight, got a power pair");
    }
  }
  const auto& w = std::get<LogConvexWeight>(weight);
  switch (id) {
    case TheoremId::logconvex_gamma1: return verify_logconvex_gamma1(dom, w, opts);
    case TheoremId::logconvex_harmonic: return verify_logconvex_harmonic(dom, w, opts);
    default:
      fail(errc::config_error, "statement requires a power weight, got a log-convex one");
  }
}

namespace {

bool compatible(TheoremId id, const WeightSpec& spec) {
  const bool power = std::holds_alternative<PowerWeightPair>(spec);
  switch (id) {
    case TheoremId::power_gamma1:
    case TheoremId::power_harmonic:
    case TheoremId::power_corollary: return power;
    case TheoremId::logconvex_gamma1:
    case TheoremId::logconvex_harmonic: return !power;
  }
  return false;
}

}  // namespace

SuiteOutcome run_suite(const SuiteConfig& config, const std::string& jsonl_path,
                       const std::string& csv_path) {
  struct Entry {
    const SuiteDomain* dom;
    const SuiteWeight* weight;
    TheoremId theorem;
  };
  std::vector<Entry> entries;
  for (const auto& d : config.domains) {
    const auto& theorems = d.theorems.empty() ? config.theorems : d.theorems;
    for (const auto& w : config.weights) {
      for (TheoremId t : theorems) {
        if (compatible(t, w.spec)) entries.push_back({&d, &w, t});
      }
    }
  }

  const unsigned workers =
      std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()), 8u);
  std::vector<VerificationReport> reports(entries.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= entries.size()) return;
      const Entry& e = entries[i];
      VerificationReport rep = verify(e.theorem, e.dom->domain, e.weight->spec, config.options);
      rep.domain_id = e.dom->id;
      rep.weight_id = e.weight->id;
      rep.weight_json = e.weight->json;
      reports[i] = std::move(rep);
    }
  };
  std::vector<std::future<void>> pool;
  for (unsigned t = 1; t < workers && t < entries.size(); ++t) {
    pool.push_back(std::async(std::launch::async, worker));
  }
  worker();
  for (auto& f : pool) f.get();

  SuiteOutcome outcome;
  outcome.reports = std::move(reports);
  for (const auto& r : outcome.reports) {
    if (r.status == VerifyStatus::violated) outcome.exit_code = 1;
  }

  if (!jsonl_path.empty()) {
    std::ofstream out(jsonl_path);
    require(out.good(), errc::config_error, "cannot open the JSON-lines report path");
    for (const auto& r : outcome.reports) out << report_to_json_line(r) << '\n';
  }
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    require(out.good(), errc::config_error, "cannot open the CSV summary path");
    out << report_csv_header() << '\n';
    for (const auto& r : outcome.reports) out << report_to_csv_row(r) << '\n';
  }
  return outcome;
}

}  // namespace steklov
