// Acceptance run: one PASS/FAIL line per criterion, detail lines indented below it.
#include <array>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hardy/analytic.hpp"
#include "hardy/errors.hpp"
#include "hardy/experiments.hpp"
#include "hardy/fd_solver.hpp"
#include "hardy/identity_lab.hpp"
#include "hardy/quadrature.hpp"

using namespace hardy;

namespace {

struct Verdict {
  bool pass = true;
  std::vector<std::string> details;

  void require(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4))) {
    char buf[512];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    details.push_back(std::string(ok ? "ok   " : "MISS ") + buf);
    pass = pass && ok;
  }
};

const ScalarFn kZero = [](const PointH&) { return 0.0; };
const ScalarFn kOne = [](const PointH&) { return 1.0; };
constexpr double kA = 0.45;

std::vector<double> beta_set(int N) {
  const double b0 = -0.25 * N * N;
  return {b0, b0 + 0.25, 0.0, 1.0, 3.0};
}

TestFunction identity_zeta(int N) {
  std::vector<double> b(static_cast<std::size_t>(N), 0.3), q(static_cast<std::size_t>(N), 0.2);
  b.back() = 0.5;
  return bump_times_quadratic(1.0, 1.0, b, q);
}

// Sum of positive Gaussians with random centres and widths.
ScalarFn random_positive(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> c(-kA, kA), w(0.0, 2.0), s(0.05, 0.3);
  std::vector<std::array<double, 4>> bumps(1 + rng() % 3);
  for (auto& b : bumps) b = {c(rng), std::abs(c(rng)), w(rng), s(rng)};
  return [bumps](const PointH& x) {
    double v = 0.0;
    for (const auto& b : bumps) {
      const double d2 = (x[0] - b[0]) * (x[0] - b[0]) + (x[1] - b[1]) * (x[1] - b[1]);
      v += b[2] * std::exp(-d2 / (b[3] * b[3]));
    }
    return v;
  };
}

Verdict c_beta_constant() {
  Verdict v;
  for (int N : {2, 3})
    for (double beta : beta_set(N)) {
      const HardyParams p(N, beta);
      const double rel = std::abs(c_beta_surface(p) - p.c_beta()) / p.c_beta();
      v.require(rel < 1e-5, "N=%d beta=%+.4g surface=%.12g closed=%.12g rel=%.2e", N, beta, c_beta_surface(p),
                p.c_beta(), rel);
    }
  return v;
}

Verdict fundamental_identity() {
  Verdict v;
  for (int N : {2, 3})
    for (double beta : beta_set(N)) {
      const HardyParams p(N, beta);
      const IdentityReport r = verify_fundamental_identity(p, identity_zeta(N), N == 2 ? 14 : 10);
      v.require(r.extrapolated_residual < 0.01, "N=%d beta=%+.4g lhs=%.8g rhs=%.8g rel=%.2e ratio=%.6f", N, beta,
                r.lhs, r.rhs, r.extrapolated_residual, r.lhs / r.rhs);
    }
  return v;
}

Verdict trace_limit() {
  Verdict v;
  const ScalarFn zeta = [](const PointH& x) { return cutoff_eta0(x.norm()); };
  for (int N : {2, 3}) {
    const HardyParams p(N, 0.0);
    const IdentityReport r = verify_trace(p, zeta, 2.0);
    const double rel = std::abs(r.lhs - b_N_closed_form(N)) / b_N_closed_form(N);
    v.require(rel < 0.01, "N=%d pairing limit=%.10g b_N=%.10g rel=%.2e", N, r.lhs, b_N_closed_form(N), rel);
  }
  for (int N = 2; N <= 5; ++N) {
    const double d = std::abs(b_N_constant(N) - b_N_closed_form(N));
    v.require(d < 1e-8, "b_%d quadrature=%.15g beta-form=%.15g diff=%.1e", N, b_N_constant(N), b_N_closed_form(N), d);
  }
  return v;
}

Verdict hardy_inequalities() {
  Verdict v;
  for (int N : {2, 3}) {
    const QuadratureRule rule = build_rule(RuleKind::VolumeHalfBall, N, 1.0, 0.0, 48, 12);
    for (WeightCenter c : {WeightCenter::Interior, WeightCenter::Boundary}) {
      const bool in = c == WeightCenter::Interior;
      double lo = std::numeric_limits<double>::infinity();
      for (const TestFunction& u : random_hardy_family(N, c, 50, 20240611ULL + (in ? 0 : 1)))
        lo = std::min(lo, hardy_rayleigh(N, u, rule, c));
      const double k = hardy_constant(N, c);
      v.require(lo >= k - 1e-8, "N=%d %s: min quotient %.6g >= %.6g", N, in ? "interior" : "boundary", lo, k);
    }
  }
  return v;
}

Verdict solver_convergence() {
  Verdict v;
  for (double beta : {-0.5, 0.0, 3.0}) {
    const ConvergenceStudy s = manufactured_convergence(HardyParams(2, beta), kA, {16, 32, 64, 128});
    v.require(std::abs(s.order - 2.0) <= 0.3, "beta=%+.4g order=%.4f errors %.3e .. %.3e", beta, s.order,
              s.errors.front(), s.errors.back());
  }
  return v;
}

Verdict epsilon_scheme() {
  Verdict v;
  const HalfBoxGrid g(2, kA, 128);
  const std::vector<double> eps = default_epsilon_sequence(g);
  for (double beta : {3.0, -0.5}) {
    const HardyParams p(2, beta);
    try {
      const SweepReport s = epsilon_sweep(p, g, kOne, kZero, eps);
      v.require(true, "beta=%+.4g monotone in eps (direction %+d, worst violation %.1e)", beta,
                s.expected_direction, s.max_violation);
    } catch (const MonotonicityViolated& e) {
      v.require(false, "beta=%+.4g %s", beta, e.what());
    }
    const CorrectionRateStudy c = correction_rate_study(p, g, kOne, kZero, radial_bump(0.5 * kA), eps);
    v.require(std::abs(c.observed_rate - c.bound_rate) <= 0.3,
              "beta=%+.4g correction rate %.4f vs exponent %.4f (|diff| %.3f)", beta, c.observed_rate, c.bound_rate,
              std::abs(c.observed_rate - c.bound_rate));
  }
  return v;
}

Verdict dirac_coefficient() {
  Verdict v;
  const HalfBoxGrid g(2, kA, 256);
  const auto fam = default_xi_family(g);
  for (double beta : {-0.5, 0.0, 3.0}) {
    const HardyParams p(2, beta);
    const DiscreteField kernel = DiscreteField::sample(g, [&](const PointH& x) { return lambda_fund(p, x); });
    const KEstimate k1 = extract_k(p, kernel, kZero, {}, fam);
    v.require(std::abs(k1.mean - 1.0) < 0.02 && k1.spread < 0.01, "beta=%+.4g Lambda: k=%.6f spread=%.2e", beta,
              k1.mean, k1.spread);
    const DiscreteField moderate = solve_regularized(p, g, SolveConfig{}, kOne, kZero);
    const KEstimate k0 = extract_k(p, moderate, kOne, kZero, fam);
    v.require(std::abs(k0.mean) < 0.02 * k0.scale, "beta=%+.4g moderate: k=%.3e scale=%.3e", beta, k0.mean,
              k0.scale);
    const LambdaOmegaResult lo = lambda_omega_construction(p, g, 0.8 * kA);
    const KEstimate kw = extract_k(p, lo.field, {}, {}, fam);
    v.require(std::abs(kw.mean - 1.0) < 0.03, "beta=%+.4g Lambda^Omega: k=%.6f", beta, kw.mean);
  }
  return v;
}

Verdict dual_problems() {
  Verdict v;
  for (double beta : {-1.0, -0.5, 0.0, 3.0}) {
    const HardyParams p(2, beta);
    for (int n : {16, 32, 64}) {
      const HalfBoxGrid g(2, kA, n);
      for (DualRhs kind : {DualRhs::One, DualRhs::OneOverXn}) {
        const DualResult r = dual_solve(p, g, kind);
        v.require(r.min_value >= 0.0 && r.max_bound_excess <= 1e-6,
                  "beta=%+.4g n=%d rhs=%s: min w=%.2e, max(w - t x_N)=%.2e", beta, n,
                  kind == DualRhs::One ? "1" : "1/x_N", r.min_value, r.max_bound_excess);
      }
    }
    if (beta == -1.0) continue;
    const ConvergenceStudy s = dual_conjugation_convergence(p, kA, {16, 32, 64});
    v.require(s.order >= 1.7, "beta=%+.4g conjugation residual order %.4f", beta, s.order);
  }
  return v;
}

Verdict poisson_identity() {
  Verdict v;
  const HardyParams p(2, 3.0);
  const ScalarFn bump = [](const PointH& x) { return cutoff_eta0(4.0 * x.norm() / kA); };
  const TestFunction zeta = radial_bump(0.5 * kA);
  std::vector<double> defects;
  double ref = 0.0;
  for (int n : {64, 128, 256}) {
    const IdentityGReport r = verify_identity_g(p, poisson_extension(HalfBoxGrid(2, kA, n), bump), bump, zeta);
    defects.push_back(r.defect);
    ref = std::max({std::abs(r.volume_term), std::abs(r.potential_term), std::abs(r.boundary_term)});
  }
  const double rel = std::abs(defects.back()) / ref;
  v.require(rel < 0.02, "Poisson identity defects %.2e %.2e %.2e, final relative %.2e", defects[0], defects[1],
            defects[2], rel);
  const HalfBoxGrid fine(2, kA, 1024);
  std::vector<double> radii;
  for (double r = kA / 8; r >= 4 * fine.h(); r *= 0.5) radii.push_back(r);
  const TruncationSweep s = poisson_truncation_sweep(p, fine, bump, radii);
  v.require(s.cauchy, "bump: M(r) %.6g -> %.6g, last increment %.2e, tail %.2e", s.values.front(), s.values.back(),
            s.increments.back(), s.tail_estimate);
  const double e = -1.0 - 0.5 * p.tau_plus();
  const ScalarFn div = [e](const PointH& x) {
    const double r = x.norm();
    return x.last() == 0.0 && r > 0.0 ? std::pow(r, e) * cutoff_eta0(4.0 * r / kA) : 0.0;
  };
  const TruncationSweep d = poisson_truncation_sweep(p, fine, div, radii);
  bool growing = d.increments.size() >= 2;
  for (std::size_t i = 1; i < d.increments.size(); ++i) growing = growing && d.increments[i] > d.increments[i - 1];
  v.require(d.monotone && !d.cauchy && growing, "divergent: M(r) %.6g -> %.6g over %zu radii, increments grow",
            d.values.front(), d.values.back(), d.values.size());
  return v;
}

Verdict blowup() {
  Verdict v;
  const HalfBoxGrid g(2, kA, 1024);
  std::vector<double> radii;
  for (double r = kA / 2; r >= 4 * g.h(); r *= 0.5) radii.push_back(r);
  for (double beta : {-0.5, 0.0, 3.0}) {
    const HardyParams p(2, beta);
    const ScalarFn f = [&](const PointH& x) { return std::pow(x.norm(), -3.0 - p.tau_plus()); };
    const BlowupReport b = blowup_experiment(p, g, f, radii, PointH{0.0, kA / 2});
    v.require(radii.size() >= 6 && b.strictly_increasing && b.min_increment >= 0.3 * b.max_increment,
              "beta=%+.4g levels=%zu probe %.5g -> %.5g, increments in [%.4g, %.4g]", beta, radii.size(),
              b.probe_values.front(), b.probe_values.back(), b.min_increment, b.max_increment);
    const BlowupReport c = blowup_experiment(p, g, kOne, radii, PointH{0.0, kA / 2});
    v.require(std::abs(c.increments.back()) < 1e-4, "beta=%+.4g contrast f=1: last increment %.2e", beta,
              c.increments.back());
  }
  return v;
}

Verdict comparison_principle() {
  Verdict v;
  std::mt19937_64 rng(20240611ULL);
  const HalfBoxGrid g(2, kA, 64);
  for (double beta : {-0.5, 0.0, 3.0}) {
    const RegularizedOperator op(HardyParams(2, beta), g, SolveConfig{});
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      const ScalarFn f = random_positive(rng), df = random_positive(rng);
      const ScalarFn b = random_positive(rng), db = random_positive(rng);
      const DiscreteField lo = op.solve(f, b);
      const DiscreteField hi =
          op.solve([&](const PointH& x) { return f(x) + df(x); }, [&](const PointH& x) { return b(x) + db(x); });
      for (std::size_t i = 0; i < g.node_count(); ++i) worst = std::max(worst, lo[i] - hi[i]);
    }
    v.require(worst <= 1e-9, "beta=%+.4g 20 pairs, max(u_lo - u_hi)=%.2e, M-matrix=%d", beta, worst,
              op.diagnostics().m_matrix);
  }
  return v;
}

struct Criterion {
  int id;
  const char* title;
  double budget_seconds;
  std::function<Verdict()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "constant c_beta", 5, c_beta_constant},
      {2, "fundamental identity", 120, fundamental_identity},
      {3, "trace limit and b_N", 30, trace_limit},
      {4, "Hardy inequalities", 60, hardy_inequalities},
      {5, "solver convergence", 120, solver_convergence},
      {6, "epsilon scheme", 120, epsilon_scheme},
      {7, "Dirac coefficient", 180, dirac_coefficient},
      {8, "dual problems", 60, dual_problems},
      {9, "Poisson identity and truncation dichotomy", 120, poisson_identity},
      {10, "nonexistence mechanism", 120, blowup},
      {11, "discrete comparison principle", 60, comparison_principle},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.require(false, "error: %s", e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget_seconds;
    const bool pass = v.pass && in_time;
    failed += pass ? 0 : 1;
    std::printf("criterion %2d %s  %s (%.1f s of %.0f s)\n", c.id, pass ? "PASS" : "FAIL", c.title, secs,
                c.budget_seconds);
    for (const std::string& d : v.details) std::printf("    %s\n", d.c_str());
    if (!in_time) std::printf("    MISS runtime budget exceeded\n");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
