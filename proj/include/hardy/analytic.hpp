#pragma once

#include <functional>
#include <span>

#include "hardy/params.hpp"
#include "hardy/point.hpp"

namespace hardy {

using ScalarFn = std::function<double(const PointH&)>;
using Field = std::function<Jet(const PointH&)>;

// Kernels. Both vanish on the flat boundary and need |x| > 0.

/// lambda_beta(x) = x_N |x|^tau_plus.
double lambda_small(const HardyParams& p, const PointH& x);
Jet lambda_small_jet(const HardyParams& p, const PointH& x);

/// Lambda_beta(x) = x_N |x|^tau_minus, or -x_N |x|^tau_minus ln|x| on the
/// critical branch where |x| < 1 is required.
double lambda_fund(const HardyParams& p, const PointH& x);
Jet lambda_fund_jet(const HardyParams& p, const PointH& x);

/// x_N |x|^tau for arbitrary real tau.
Jet power_jet(const PointH& x, double tau);

/// Jet of |x|^a m(|x|) from the values m, m', m'' at r = |x| > 0.
Jet radial_profile_jet(const PointH& x, double a, double m, double dm, double d2m);

/// -Delta u + beta u / |x|^2.
double apply_L_beta(const HardyParams& p, const Jet& u, const PointH& x);
double apply_L_beta(const HardyParams& p, const Field& u, const PointH& x);

/// -Delta z - 2 tau_plus x.grad(z) / |x|^2 - (2 / x_N) d_N z; needs x_N > 0.
double apply_L_beta_star(const HardyParams& p, const Jet& zeta, const PointH& x);
double apply_L_beta_star(const HardyParams& p, const Field& zeta, const PointH& x);

/// lambda_beta L*_beta(zeta) written without the 1/x_N factor, so it stays
/// finite on the flat boundary; needs |x| > 0 only.
double lambda_times_L_beta_star(const HardyParams& p, const Jet& zeta, const PointH& x);

// Barriers.

enum class BarrierFamily { V, W, Dual };

/// Coefficients of one barrier. For V: t0 x_N|x|^(-N/2)[(-ln|x|)^(1/2)] - s0 x_N^2 |x|^(...).
/// For W: t0 lambda - s0 (x_N |x|^(tau+2) + l x_N^2 |x|^(tau+2)).
/// For Dual: t0 lambda - s1 x_N |x|^(tau+1) - s0 x_N^2 |x|^tau.
struct SupersolutionParams {
  double s0 = 0.0;
  double t0 = 0.0;
  double l = 0.0;
  double s1 = 0.0;
  BarrierFamily family = BarrierFamily::V;
};

double supersolution_V(const HardyParams& p, double s, double t, const PointH& x);
Jet supersolution_V_jet(const HardyParams& p, double s, double t, const PointH& x);
/// Closed-form L_beta V_{t,s}; valid for beta in [beta0, 0] and |x| < 1.
double supersolution_V_residual(const HardyParams& p, double s, double t, const PointH& x);

/// s0 = sup |f|/|x|^tau_plus / 2 over the samples; t0 doubles from s0 until the
/// closed-form residual dominates |f| at every sample.
SupersolutionParams choose_V_params(const HardyParams& p, const ScalarFn& f_bound,
                                    std::span<const PointH> domain_samples);

double supersolution_W(const HardyParams& p, double s, double t, double l, const PointH& x);
Jet supersolution_W_jet(const HardyParams& p, double s, double t, double l, const PointH& x);
double supersolution_W_residual(const HardyParams& p, double s, double t, double l, const PointH& x);

double dual_barrier(const HardyParams& p, double s1, double s2, double t, const PointH& x);
Jet dual_barrier_jet(const HardyParams& p, double s1, double s2, double t, const PointH& x);
double dual_barrier_residual(const HardyParams& p, double s1, double s2, double t, const PointH& x);

/// Barrier with L_beta S >= lambda_beta on a domain inside B_{outer_radius}^+.
SupersolutionParams choose_dual_params_one(const HardyParams& p, double outer_radius);
/// Barrier with L_beta S >= bound * lambda_beta / x_N on the same domains.
SupersolutionParams choose_dual_params_inverse_xn(const HardyParams& p, double outer_radius,
                                                  double bound = 1.0);

double barrier_value(const HardyParams& p, const SupersolutionParams& b, const PointH& x);
double barrier_residual(const HardyParams& p, const SupersolutionParams& b, const PointH& x);

// Cutoffs. eta0 is 1 on [0,1], 0 on [2,inf), a quintic Hermite blend in between.

struct RadialValue {
  double value;
  double d1;
  double d2;
};

RadialValue cutoff_eta0_derivs(double r);
double cutoff_eta0(double r);
/// eta0(2 r / r0).
double cutoff_eta_r0(double r0, double r);
/// 1 - eta0(n r).
double cutoff_eta_n(int n, double r);

/// Jet of eta0(|x| / scale); exact at the origin where the cutoff is flat.
Jet eta0_jet(const PointH& x, double scale);

}  // namespace hardy
