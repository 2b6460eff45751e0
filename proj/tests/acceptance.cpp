// End-to-end acceptance suite. Each criterion prints one pass/fail line;
// the exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "steklov/ball_spectrum.hpp"
#include "steklov/fem.hpp"
#include "steklov/io.hpp"
#include "steklov/isoperimetry.hpp"
#include "steklov/verify.hpp"

using namespace steklov;

namespace {

constexpr double kPi = std::numbers::pi;

int failures = 0;
std::vector<std::string> details;

void note(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  details.emplace_back(buf);
}

void report(int index, const char* name, bool ok) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", index, name);
  for (const auto& d : details) std::printf("       %s\n", d.c_str());
  details.clear();
  if (!ok) ++failures;
}

Domain random_central_polygon(std::mt19937& rng, int half_vertices = 6) {
  std::uniform_real_distribution<double> radius(0.5, 1.5);
  std::uniform_real_distribution<double> jitter(0.05, 0.95);
  std::vector<Vec2> verts;
  for (int i = 0; i < half_vertices; ++i) {
    const double a = kPi * (i + jitter(rng)) / half_vertices;
    const double r = radius(rng);
    verts.push_back({r * std::cos(a), r * std::sin(a)});
  }
  const std::size_t half = verts.size();
  for (std::size_t i = 0; i < half; ++i) verts.push_back({-verts[i].x, -verts[i].y});
  return make_polygon(verts, true, false);
}

// 1. Closed-form sanity on the unit disc, classical weights.
bool criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;

  const auto spectrum = power_ball_spectrum(make_power_pair(0, 0, 2), 1.0, 2);
  ok &= spectrum.entries[1].gamma == 1.0 && spectrum.entries[1].multiplicity == 2;
  note("closed form: gamma_1 = gamma_2 = %g (multiplicity %d)", spectrum.entries[1].gamma,
       spectrum.entries[1].multiplicity);

  const auto study = fem_eigen_study(make_disc(1.0), unit_weight(), unit_weight(), 0.02, 3, 3);
  const double err = std::abs(study.gamma1() - 1.0);
  ok &= err < 0.01;
  note("fem gamma_1(h=0.02) = %.8f, relative error %.2e", study.gamma1(), err);

  std::vector<double> errs;
  for (const auto& g : study.gammas) errs.push_back(std::abs(g[0] - 1.0));
  const double rate1 = std::log2(errs[0] / errs[1]);
  const double rate2 = std::log2(errs[1] / errs[2]);
  ok &= rate1 > 1.7 && rate1 < 2.3 && rate2 > 1.7 && rate2 < 2.3;
  note("observed orders vs closed form: %.3f, %.3f", rate1, rate2);

  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ok &= seconds < 60.0;
  note("runtime %.1f s (budget 60 s)", seconds);
  return ok;
}

// 2. Radial solver oracle for the flat weight.
bool criterion2() {
  bool ok = true;
  for (double R : {1.0, 2.0}) {
    const auto profile = solve_radial_ode(make_constant_weight(0.0, 8.0), R, 2, 2048);
    double max_err = 0.0;
    for (std::size_t i = 0; i < profile.grid.size(); ++i) {
      max_err = std::max(max_err, std::abs(profile.F[i] - profile.grid[i]));
    }
    ok &= max_err <= 1e-8;
    const double g = logconvex_ball_gamma1(profile);
    ok &= std::abs(g - 1.0 / R) <= 1e-8;
    note("R = %g: max |F - r| = %.2e, |gamma - 1/R| = %.2e", R, max_err,
         std::abs(g - 1.0 / R));
  }
  const auto p6 = solve_radial_ode(make_quadratic_weight(1.0, 8.0), 1.0, 2, 2048, 1e-6);
  const auto p8 = solve_radial_ode(make_quadratic_weight(1.0, 8.0), 1.0, 2, 2048, 1e-8);
  const double g6 = logconvex_ball_gamma1(p6);
  const double rel = std::abs(g6 - logconvex_ball_gamma1(p8)) / g6;
  ok &= rel <= 1e-7;
  note("starting-radius sensitivity: %.2e relative", rel);
  return ok;
}

// 3 and 4. Power-weight suites on the centered square and quarter-turn cross.
bool criterion34(bool harmonic) {
  bool ok = true;
  VerifyOptions opts;
  opts.h = 0.05;
  opts.refinements = 3;
  for (const auto& [name, dom] : {std::pair<std::string, Domain>{"square", make_square(1.0)},
                                  {"cross", make_cross(1.5, 0.5)}}) {
    for (double beta : {-2.0, -1.0, 0.0, 1.0}) {
      const auto wp = make_power_pair(0.0, beta, 2);
      const auto rep = harmonic ? verify_power_harmonic(dom, wp, opts)
                                : verify_power_gamma1(dom, wp, opts, TheoremId::power_corollary);
      const bool entry_ok =
          rep.status == VerifyStatus::verified && rep.margin >= -rep.tolerance_used;
      ok &= entry_ok;
      note("%s beta=%+.0f: %s, margin %.4f (tol %.1e)", name.c_str(), beta,
           status_name(rep.status), rep.margin, rep.tolerance_used);
      if (!harmonic && beta == 0.0) {
        const double area = weighted_volume(dom, 0.0);
        const double r_expected = std::sqrt(area / kPi);
        const bool classical = std::abs(rep.R - r_expected) <= 1e-9 &&
                               std::abs(rep.gamma1_ball - 1.0 / r_expected) <= 1e-9;
        ok &= classical;
        note("  classical check: R = %.6f = |Omega|^(1/2)/sqrt(pi), gamma_ball = 1/R %s",
             rep.R, classical ? "ok" : "MISMATCH");
      }
    }
  }
  if (harmonic) {
    const auto rep = verify_power_harmonic(make_disc(1.0), make_power_pair(0, 0, 2), opts);
    const bool eq = std::abs(rep.margin) <= rep.tolerance_used;
    ok &= eq;
    note("disc equality: |margin| = %.2e <= eps_total = %.2e", std::abs(rep.margin),
         rep.tolerance_used);
  }
  return ok;
}

// 5. Genuinely weighted interior: alpha = 1, beta = 0 on the square.
bool criterion5() {
  VerifyOptions opts;
  opts.h = 0.05;
  opts.refinements = 3;
  const auto wp = make_power_pair(1.0, 0.0, 2);
  const auto rep = verify_power_gamma1(make_square(1.0), wp, opts);
  const double m = (std::sqrt(5.0) - 1.0) / 2.0;
  const double expected_ball = m * std::pow(rep.R, 0.0);  // alpha - beta - 1 = 0
  bool ok = std::abs(rep.gamma1_ball - expected_ball) <= 1e-12;
  ok &= rep.gamma1_omega <= rep.gamma1_ball + rep.tolerance_used;
  ok &= rep.status == VerifyStatus::verified;
  note("gamma_fem = %.6f <= gamma_ball = %.6f (= (sqrt5-1)/2), status %s",
       rep.gamma1_omega, rep.gamma1_ball, status_name(rep.status));
  return ok;
}

// 6. Log-convex statements with W = exp(r^2) on square and cross.
bool criterion6() {
  bool ok = true;
  VerifyOptions opts;
  opts.h = 0.05;
  opts.refinements = 3;
  const auto weight = make_quadratic_weight(1.0, 8.0);
  for (const auto& [name, dom] : {std::pair<std::string, Domain>{"square", make_square(1.0)},
                                  {"cross", make_cross(1.5, 0.5)}}) {
    const auto r14 = verify_logconvex_gamma1(dom, weight, opts);
    const auto r15 = verify_logconvex_harmonic(dom, weight, opts);
    ok &= r14.status == VerifyStatus::verified && r15.status == VerifyStatus::verified;
    bool rows_ok = true;
    double norm_lhs = 0.0;
    for (const auto& row : r15.consistency) {
      rows_ok &= row.ok;
      if (row.name == "normalization_identity") norm_lhs = row.lhs;
    }
    for (const auto& row : r14.consistency) rows_ok &= row.ok;
    ok &= rows_ok;
    ok &= std::abs(norm_lhs - 2.0) <= 1e-6 * 2.0;
    note("%s: T1.4 %s, T1.5 %s, normalization %.8f, rows %s", name.c_str(),
         status_name(r14.status), status_name(r15.status), norm_lhs,
         rows_ok ? "ok" : "BROKEN");
  }
  return ok;
}

// 7. Isoperimetric margins.
bool criterion7() {
  bool ok = true;
  const double constant = isop_constant(0.0, 0.0, 2);
  ok &= std::abs(constant - 2.0 * std::sqrt(kPi)) <= 1e-12;
  note("sharp constant C_{0,0,2} = %.15f (2 sqrt(pi))", constant);

  std::vector<std::pair<double, double>> grid;
  for (double ell : {-0.8, -0.4, 0.0, 0.5, 1.0, 2.0}) {
    for (double k : {-0.4, -0.2, 0.0, 0.3, 0.8, 1.5, 2.5}) {
      if (static_cast<int>(grid.size()) < 20 && classify_lemma21(k, ell, 2) != LemmaCase::none) {
        grid.emplace_back(k, ell);
      }
    }
  }
  double worst_disc = 0.0;
  for (const auto& [k, ell] : grid) {
    const auto m = check_isop(make_disc(1.3), k, ell);
    worst_disc = std::max(worst_disc, std::abs(m.margin) / m.lhs);
  }
  ok &= grid.size() == 20 && worst_disc <= 1e-10;
  note("disc equality on %zu-point grid: worst |margin|/lhs = %.2e", grid.size(), worst_disc);

  std::mt19937 rng(20250810);
  double worst_poly = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto dom = random_central_polygon(rng);
    for (const auto& [k, ell] : {std::pair<double, double>{0.0, 0.0}, {2.0, 0.0}, {0.5, 0.5}}) {
      const auto m = check_isop(dom, k, ell);
      worst_poly = std::min(worst_poly, m.margin / m.lhs);
    }
  }
  ok &= worst_poly >= -1e-9;
  note("100 random centrally symmetric polygons: min margin/lhs = %.2e", worst_poly);
  return ok;
}

// 8. Classifier properties.
bool criterion8() {
  bool ok = true;
  std::mt19937 rng(424242);
  int checked = 0;
  for (int n : {2, 3, 4}) {
    std::uniform_real_distribution<double> alpha(-n + 1e-9, 5.0);
    std::uniform_real_distribution<double> beta(-6.0, 6.0);
    for (int trial = 0; trial < 3400; ++trial) {
      const auto ps = derive_params(make_power_pair(alpha(rng), beta(rng), n));
      if (!check_lemma23(ps)) {
        ok = false;
        note("implication FAILED at alpha=%.6f beta=%.6f N=%d", ps.alpha, ps.beta, n);
      }
      ++checked;
    }
  }
  note("matched-case implication held on %d sampled parameter triples", checked);

  double worst_f = 0.0;
  int roots = 0;
  std::uniform_real_distribution<double> rho_dist(3.0, 25.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double rho = rho_dist(rng);
    if (f_value(-rho / 3.0, rho, 3) >= 0.0) continue;
    const double z0 = find_z0(rho, 3);
    worst_f = std::max(worst_f, std::abs(f_value(z0, rho, 3)));
    ++roots;
    for (int i = 1; i < 32; ++i) {
      const double z = -rho / 3.0 * (1.0 - i / 32.0);
      if ((z + rho) * (3.0 * z + rho) <= 0.0) ok = false;
    }
  }
  ok &= worst_f <= 1e-12 && roots > 100;
  note("%d roots located, worst |f(z0)| = %.2e, f' > 0 on the bracket", roots, worst_f);
  return ok;
}

// 9. Structural invariants of the discrete problem.
bool criterion9() {
  bool ok = true;
  const auto mesh = triangulate(make_square(1.0), 0.08);
  const auto sys = assemble(mesh, unit_weight(), unit_weight());
  const Eigen::VectorXd r = sys.A * Eigen::VectorXd::Ones(sys.A.rows());
  double row_scale = 0.0;
  for (int i = 0; i < sys.A.outerSize(); ++i) {
    double s = 0.0;
    for (Eigen::SparseMatrix<double>::InnerIterator it(sys.A, i); it; ++it) {
      s += std::abs(it.value());
    }
    row_scale = std::max(row_scale, s);
  }
  const double kernel_residual = r.cwiseAbs().maxCoeff() / row_scale;
  ok &= kernel_residual <= 1e-12;
  note("stiffness kernel: |A 1|/|A| = %.2e", kernel_residual);

  const auto res = solve_steklov(sys, 5);
  ok &= std::abs(res.eigenvalues[0]) <= 1e-8 * res.eigenvalues[1];
  ok &= res.max_offdiag_boundary <= 1e-8 && res.max_offdiag_energy <= 1e-8;
  note("trivial mode %.2e x gamma_1; cross-orthogonality %.2e / %.2e",
       std::abs(res.eigenvalues[0]) / res.eigenvalues[1], res.max_offdiag_boundary,
       res.max_offdiag_energy);

  // Dilation scaling laws.
  std::mt19937 rng(99);
  const auto dom = random_central_polygon(rng);
  const double t = 1.9;
  bool scaling_ok = true;
  for (double k : {-0.5, 0.0, 1.2}) {
    const double ratio = weighted_perimeter(dilate(dom, t), k) / weighted_perimeter(dom, k);
    scaling_ok &= std::abs(ratio - std::pow(t, k + 1.0)) <= 1e-10 * std::pow(t, k + 1.0);
  }
  for (double ell : {-0.5, 0.0, 1.2}) {
    const double ratio = weighted_volume(dilate(dom, t), ell) / weighted_volume(dom, ell);
    scaling_ok &= std::abs(ratio - std::pow(t, ell + 2.0)) <= 1e-10 * std::pow(t, ell + 2.0);
  }
  const auto wp = make_power_pair(0.7, -0.4, 2);
  const auto g1 = fem_eigen_study(make_disc(1.0), interior_weight(wp), boundary_weight(wp),
                                  0.06, 1, 2).gamma1();
  const auto gt = fem_eigen_study(make_disc(t), interior_weight(wp), boundary_weight(wp),
                                  0.06 * t, 1, 2).gamma1();
  const double law = std::pow(t, wp.alpha - wp.beta - 1.0);
  scaling_ok &= std::abs(gt / g1 - law) <= 5e-3 * law;
  ok &= scaling_ok;
  note("dilation laws (perimeter, volume exact; eigenvalue within fem error): %s",
       scaling_ok ? "ok" : "BROKEN");
  return ok;
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  report(1, "closed-form and finite-element sanity on the unit disc", criterion1());
  report(2, "radial solver oracle and starting-radius robustness", criterion2());
  report(3, "first-eigenvalue bound suite (alpha = 0 grid)", criterion34(false));
  report(4, "harmonic-mean bound suite and disc equality", criterion34(true));
  report(5, "weighted interior alpha = 1 on the square", criterion5());
  report(6, "log-convex statements with W = exp(r^2)", criterion6());
  report(7, "isoperimetric margins and sharp constant", criterion7());
  report(8, "classifier sweep, root location, monotone cubic", criterion8());
  report(9, "structural invariants of the discrete problem", criterion9());
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d of 9 criteria passed in %.1f s\n", 9 - failures, seconds);
  return failures;
}
