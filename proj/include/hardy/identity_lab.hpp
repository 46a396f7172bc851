#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hardy/analytic.hpp"
#include "hardy/quadrature.hpp"

namespace hardy {

/// Closed-form test function with value, gradient and Laplacian.
///
/// When it plays the role of zeta in the identities, the matching xi is x_N zeta,
/// so d_N xi(0) = zeta(0).
struct TestFunction {
  Field jet;
  double support_radius = 1.0;
  double value_at_origin = 0.0;
  double normal_derivative_at_origin = 0.0;
  std::string name;

  double operator()(const PointH& x) const { return jet(x).value; }
};

/// eta0(2|x|/rho): equal to 1 on B_{rho/2}, supported in B_rho.
TestFunction radial_bump(double rho);

/// eta0(2|x|/rho) (c0 + b.x + sum_i q_i x_i^2).
TestFunction bump_times_quadratic(double rho, double c0, std::vector<double> b, std::vector<double> q);

/// eta0(|x - center| / s): supported in the ball of radius 2 s around center.
TestFunction shifted_bump(const PointH& center, double s);

/// x_N times another test function.
TestFunction times_xn(const TestFunction& f);

/// Linear combination sum_k a_k f_k.
TestFunction combination(std::vector<std::pair<double, TestFunction>> terms);

struct IdentityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_residual = 0.0;
  /// (parameter, |value - rhs|) at each refinement step, coarsest first.
  std::vector<std::pair<double, double>> refinement_trace;
  /// Raw values behind refinement_trace, same order.
  std::vector<double> sequence;
  /// |extrapolated lhs - rhs| / |rhs|, or absolute when rhs = 0.
  double extrapolated_residual = 0.0;
  double observed_order = 0.0;
  /// Volume integral over the whole half-ball without any cut.
  double direct_value = 0.0;
  /// Flux term of the Green formula on the smallest inner hemisphere.
  double surface_value = 0.0;
};

/// Lambda d_r lambda - lambda d_r Lambda from the kernel jets.
double green_flux(const HardyParams& p, const PointH& x);
/// 2 sqrt(beta-beta0) x_N^2 |x|^(-N-1), or x_N^2 |x|^(-N-1) on the critical branch.
double green_flux_closed_form(const HardyParams& p, const PointH& x);

/// Integral of Lambda L*(zeta) d gamma over the half-ball punctured at r_j = R 2^-j,
/// extrapolated r_j -> 0 and compared with c_beta zeta(0).
IdentityReport verify_fundamental_identity(const HardyParams& p, const TestFunction& zeta, int rule_levels,
                                           int resolution = 64);

/// Hemisphere quadrature of 2 sqrt(beta-beta0) x_N^2 (or 2 x_N^2 when critical).
double c_beta_surface(const HardyParams& p, int resolution = 64);

/// b_N by a radial quadrature in the angle variable.
double b_N_constant(int N);
/// |S^(N-2)| B((N-1)/2, 1/2) / 2.
double b_N_closed_form(int N);
/// Limit weight of the trace pairing for general beta:
/// |S^(N-2)| B((N-1+tau_plus)/2, 1/2) / 2; equals b_N at beta = 0.
double trace_constant(const HardyParams& p);

/// Pairing of Lambda(., t) with zeta on the flat boundary, weight |x'|^tau_plus.
double trace_pairing(const HardyParams& p, const ScalarFn& zeta_boundary, double support_radius, double t,
                     int resolution = 64, int levels = 40);

/// Trace pairings along t_sequence, extrapolated to t -> 0 and compared with
/// trace_constant(p) zeta(0). An empty sequence selects t_j = 2^-j, j = 3..12.
IdentityReport verify_trace(const HardyParams& p, const ScalarFn& zeta_boundary, double support_radius,
                            std::vector<double> t_sequence = {});

enum class WeightCenter { Interior, Boundary };

/// int |grad u|^2 / int u^2/|x|^2 over the half-ball rule (boundary case) or its
/// mirror-completed ball (interior case).
double hardy_rayleigh(int N, const TestFunction& u, const QuadratureRule& rule, WeightCenter center);

/// Seeded random admissible functions for hardy_rayleigh on the half-ball of
/// radius R: sums of shifted bumps, multiplied by x_N in the boundary case.
std::vector<TestFunction> random_hardy_family(int N, WeightCenter center, int count, unsigned long long seed,
                                              double R = 1.0);

/// (N-2)^2/4 for the interior case, N^2/4 for the boundary case.
double hardy_constant(int N, WeightCenter center);

}  // namespace hardy
