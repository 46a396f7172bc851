#include "hardy/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hardy/errors.hpp"

namespace hardy {

namespace {

double checked_norm(const PointH& x, const char* what) {
  const double r = x.norm();
  if (!(r > 0.0)) throw EvalAtSingularity(std::string(what) + " evaluated at the origin");
  return r;
}

void check_log_branch(double r, const char* what) {
  if (r >= 1.0) {
    throw LogBranchOutOfRange(std::string(what) + " on the critical branch needs |x| < 1, got |x| = " +
                              std::to_string(r));
  }
}

Jet xn_jet(const PointH& x) { return Jet::coordinate(x, x.dim() - 1); }

// |x|^a (-ln|x|)^(1/2) and its first two derivatives in r, as m-factors for
// radial_profile_jet.
Jet sqrt_log_power_jet(const PointH& x, double a) {
  const double r = x.norm();
  const double L = -std::log(r);
  const double m = std::sqrt(L);
  const double dm = -0.5 / (r * m);
  const double d2m = 0.5 / (r * r * m) - 0.25 / (r * r * L * m);
  return radial_profile_jet(x, a, m, dm, d2m);
}

}  // namespace

Jet radial_profile_jet(const PointH& x, double a, double m, double dm, double d2m) {
  const double r = x.norm();
  const double ra = std::pow(r, a);
  const double phi = ra * m;
  const double dphi = a * ra / r * m + ra * dm;
  const double d2phi = a * (a - 1.0) * ra / (r * r) * m + 2.0 * a * ra / r * dm + ra * d2m;
  return Jet::radial(x, phi, dphi, d2phi);
}

Jet power_jet(const PointH& x, double tau) {
  checked_norm(x, "power_jet");
  return xn_jet(x) * radial_profile_jet(x, tau, 1.0, 0.0, 0.0);
}

double lambda_small(const HardyParams& p, const PointH& x) {
  const double r = checked_norm(x, "lambda_small");
  return x.last() * std::pow(r, p.tau_plus());
}

Jet lambda_small_jet(const HardyParams& p, const PointH& x) {
  checked_norm(x, "lambda_small");
  return power_jet(x, p.tau_plus());
}

double lambda_fund(const HardyParams& p, const PointH& x) {
  const double r = checked_norm(x, "lambda_fund");
  if (p.is_critical()) {
    check_log_branch(r, "lambda_fund");
    return -x.last() * std::pow(r, p.tau_minus()) * std::log(r);
  }
  return x.last() * std::pow(r, p.tau_minus());
}

Jet lambda_fund_jet(const HardyParams& p, const PointH& x) {
  const double r = checked_norm(x, "lambda_fund");
  if (!p.is_critical()) return power_jet(x, p.tau_minus());
  check_log_branch(r, "lambda_fund");
  const double L = std::log(r);
  return xn_jet(x) * radial_profile_jet(x, p.tau_minus(), -L, -1.0 / r, 1.0 / (r * r));
}

double apply_L_beta(const HardyParams& p, const Jet& u, const PointH& x) {
  const double r2 = x.norm2();
  if (!(r2 > 0.0)) throw EvalAtSingularity("apply_L_beta evaluated at the origin");
  return -u.laplacian + p.beta() * u.value / r2;
}

double apply_L_beta(const HardyParams& p, const Field& u, const PointH& x) {
  return apply_L_beta(p, u(x), x);
}

double apply_L_beta_star(const HardyParams& p, const Jet& zeta, const PointH& x) {
  const double r2 = x.norm2();
  if (!(r2 > 0.0)) throw EvalAtSingularity("apply_L_beta_star evaluated at the origin");
  const double xn = x.last();
  if (!(xn > 0.0)) throw EvalAtSingularity("apply_L_beta_star needs x_N > 0");
  const double drift = radial_derivative_times_r(x, zeta);
  return -zeta.laplacian - 2.0 * p.tau_plus() * drift / r2 -
         2.0 / xn * zeta.grad[static_cast<std::size_t>(x.dim() - 1)];
}

double apply_L_beta_star(const HardyParams& p, const Field& zeta, const PointH& x) {
  return apply_L_beta_star(p, zeta(x), x);
}

double lambda_times_L_beta_star(const HardyParams& p, const Jet& zeta, const PointH& x) {
  const double r2 = x.norm2();
  if (!(r2 > 0.0)) throw EvalAtSingularity("lambda_times_L_beta_star evaluated at the origin");
  const double rt = std::pow(r2, 0.5 * p.tau_plus());
  const double drift = radial_derivative_times_r(x, zeta);
  return rt * (-x.last() * (zeta.laplacian + 2.0 * p.tau_plus() * drift / r2) -
               2.0 * zeta.grad[static_cast<std::size_t>(x.dim() - 1)]);
}

// ---- V family ----

Jet supersolution_V_jet(const HardyParams& p, double s, double t, const PointH& x) {
  const double r = checked_norm(x, "supersolution_V");
  const double half = -0.5 * p.dim();
  const Jet xn = xn_jet(x);
  if (p.is_critical()) {
    check_log_branch(r, "supersolution_V");
    return t * (xn * sqrt_log_power_jet(x, half)) -
           s * (xn * xn * radial_profile_jet(x, half, 1.0, 0.0, 0.0));
  }
  return t * (xn * radial_profile_jet(x, half, 1.0, 0.0, 0.0)) -
         s * (xn * xn * radial_profile_jet(x, p.tau_plus(), 1.0, 0.0, 0.0));
}

double supersolution_V(const HardyParams& p, double s, double t, const PointH& x) {
  const double r = checked_norm(x, "supersolution_V");
  const double xn = x.last();
  const double half = -0.5 * p.dim();
  if (p.is_critical()) {
    check_log_branch(r, "supersolution_V");
    return t * xn * std::pow(r, half) * std::sqrt(-std::log(r)) - s * xn * xn * std::pow(r, half);
  }
  return t * xn * std::pow(r, half) - s * xn * xn * std::pow(r, p.tau_plus());
}

double supersolution_V_residual(const HardyParams& p, double s, double t, const PointH& x) {
  const double r = checked_norm(x, "supersolution_V_residual");
  const double xn = x.last();
  const double half = -0.5 * p.dim();
  const double tau = p.tau_plus();
  if (p.is_critical()) {
    check_log_branch(r, "supersolution_V_residual");
    const double L = -std::log(r);
    return 0.25 * t * xn * std::pow(r, half - 2.0) / (L * std::sqrt(L)) + 2.0 * s * std::pow(r, half) -
           s * p.dim() * xn * xn * std::pow(r, half - 2.0);
  }
  return t * hardy_symbol(p, half) * xn * std::pow(r, half - 2.0) + 2.0 * s * std::pow(r, tau) +
         2.0 * s * tau * xn * xn * std::pow(r, tau - 2.0);
}

SupersolutionParams choose_V_params(const HardyParams& p, const ScalarFn& f_bound,
                                    std::span<const PointH> domain_samples) {
  if (!(p.beta() < 0.0)) throw InvalidArgument("choose_V_params needs beta in [beta0, 0)");
  SupersolutionParams out;
  out.family = BarrierFamily::V;
  double sup = 0.0;
  for (const PointH& x : domain_samples) {
    const double r = checked_norm(x, "choose_V_params");
    if (r >= 1.0) throw InvalidArgument("choose_V_params samples must lie in the open unit half-ball");
    const double q = std::abs(f_bound(x)) / std::pow(r, p.tau_plus());
    if (!std::isfinite(q)) throw RecipeDivergent("sampled sup of |f|/|x|^tau_plus is not finite");
    sup = std::max(sup, q);
  }
  out.s0 = 0.5 * sup;
  if (out.s0 == 0.0) return out;
  double t = out.s0;
  for (int iter = 0; iter < 200; ++iter) {
    bool ok = true;
    for (const PointH& x : domain_samples) {
      if (supersolution_V_residual(p, out.s0, t, x) < std::abs(f_bound(x))) {
        ok = false;
        break;
      }
    }
    if (ok) {
      out.t0 = t;
      return out;
    }
    t *= 2.0;
  }
  throw RecipeDivergent("doubling search for t0 did not terminate");
}

// ---- W family ----

Jet supersolution_W_jet(const HardyParams& p, double s, double t, double l, const PointH& x) {
  checked_norm(x, "supersolution_W");
  const double tau = p.tau_plus();
  const Jet xn = xn_jet(x);
  const Jet r2 = radial_profile_jet(x, tau + 2.0, 1.0, 0.0, 0.0);
  return t * power_jet(x, tau) - s * (xn * r2 + l * (xn * xn * r2));
}

double supersolution_W(const HardyParams& p, double s, double t, double l, const PointH& x) {
  const double r = checked_norm(x, "supersolution_W");
  const double tau = p.tau_plus();
  const double xn = x.last();
  return t * xn * std::pow(r, tau) - s * (xn * std::pow(r, tau + 2.0) + l * xn * xn * std::pow(r, tau + 2.0));
}

double supersolution_W_residual(const HardyParams& p, double s, double /*t*/, double l, const PointH& x) {
  const double r = checked_norm(x, "supersolution_W_residual");
  const double tau = p.tau_plus();
  const double xn = x.last();
  const double rt = std::pow(r, tau);
  return s * (-hardy_symbol(p, tau + 2.0) * xn * rt + 2.0 * l * rt * r * r +
              l * (6.0 * tau + 2.0 * p.dim() + 8.0) * xn * xn * rt);
}

// ---- dual barrier ----

Jet dual_barrier_jet(const HardyParams& p, double s1, double s2, double t, const PointH& x) {
  checked_norm(x, "dual_barrier");
  const double tau = p.tau_plus();
  const Jet xn = xn_jet(x);
  return t * power_jet(x, tau) - s1 * power_jet(x, tau + 1.0) -
         s2 * (xn * xn * radial_profile_jet(x, tau, 1.0, 0.0, 0.0));
}

double dual_barrier(const HardyParams& p, double s1, double s2, double t, const PointH& x) {
  const double r = checked_norm(x, "dual_barrier");
  const double tau = p.tau_plus();
  const double xn = x.last();
  return xn * std::pow(r, tau) * (t - s1 * r - s2 * xn);
}

double dual_barrier_residual(const HardyParams& p, double s1, double s2, double /*t*/, const PointH& x) {
  const double r = checked_norm(x, "dual_barrier_residual");
  const double tau = p.tau_plus();
  const double xn = x.last();
  const double rt = std::pow(r, tau);
  return s1 * (2.0 * p.sqrt_disc() + 1.0) * xn * rt / r + s2 * (2.0 * rt + 2.0 * tau * xn * xn * rt / (r * r));
}

SupersolutionParams choose_dual_params_one(const HardyParams& p, double outer_radius) {
  SupersolutionParams b;
  b.family = BarrierFamily::W;
  b.s0 = -1.0 / hardy_symbol(p, p.tau_plus() + 2.0);
  b.t0 = 2.0 * b.s0 * outer_radius * outer_radius;
  return b;
}

SupersolutionParams choose_dual_params_inverse_xn(const HardyParams& p, double outer_radius, double bound) {
  SupersolutionParams b;
  b.family = BarrierFamily::Dual;
  b.s0 = 0.5 * bound;
  b.s1 = bound * std::max(0.0, -p.tau_plus()) / (2.0 * p.sqrt_disc() + 1.0);
  b.t0 = 2.0 * (b.s1 + b.s0) * outer_radius;
  return b;
}

double barrier_value(const HardyParams& p, const SupersolutionParams& b, const PointH& x) {
  switch (b.family) {
    case BarrierFamily::V: return supersolution_V(p, b.s0, b.t0, x);
    case BarrierFamily::W: return supersolution_W(p, b.s0, b.t0, b.l, x);
    case BarrierFamily::Dual: return dual_barrier(p, b.s1, b.s0, b.t0, x);
  }
  return 0.0;
}

double barrier_residual(const HardyParams& p, const SupersolutionParams& b, const PointH& x) {
  switch (b.family) {
    case BarrierFamily::V: return supersolution_V_residual(p, b.s0, b.t0, x);
    case BarrierFamily::W: return supersolution_W_residual(p, b.s0, b.t0, b.l, x);
    case BarrierFamily::Dual: return dual_barrier_residual(p, b.s1, b.s0, b.t0, x);
  }
  return 0.0;
}

// ---- cutoffs ----

RadialValue cutoff_eta0_derivs(double r) {
  if (r <= 1.0) return {1.0, 0.0, 0.0};
  if (r >= 2.0) return {0.0, 0.0, 0.0};
  const double s = r - 1.0;
  const double u = 1.0 - s;
  const double h = s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
  return {1.0 - h, -30.0 * s * s * u * u, -60.0 * s * u * (1.0 - 2.0 * s)};
}

double cutoff_eta0(double r) { return cutoff_eta0_derivs(r).value; }

double cutoff_eta_r0(double r0, double r) { return cutoff_eta0(2.0 * r / r0); }

double cutoff_eta_n(int n, double r) { return 1.0 - cutoff_eta0(n * r); }

Jet eta0_jet(const PointH& x, double scale) {
  const double r = x.norm();
  if (r <= scale) return Jet::constant(x.dim(), 1.0);
  const RadialValue e = cutoff_eta0_derivs(r / scale);
  return Jet::radial(x, e.value, e.d1 / scale, e.d2 / (scale * scale));
}

}  // namespace hardy
