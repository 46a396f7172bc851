#pragma once

#include <functional>
#include <vector>

#include "hardy/fd_solver.hpp"
#include "hardy/identity_lab.hpp"

namespace hardy {

/// Trapezoid sum over all grid nodes except the origin; the integrand gets
/// the node index and its coordinates.
double grid_integral(const HalfBoxGrid& grid, const std::function<double(std::size_t, const PointH&)>& f);

/// Flat-boundary term int g d_nu(xi) d omega_beta for xi = x_N zeta supported
/// strictly inside the box: d_nu xi = -zeta on x_N = 0 and vanishes elsewhere.
double flat_boundary_term(const HardyParams& p, const ScalarFn& g, const TestFunction& zeta);

// ---- regularized identity ----

struct EpsilonIdentityReport {
  double volume_term = 0.0;      // int u L*(zeta) d gamma
  double source_term = 0.0;      // int f zeta d gamma
  double correction_term = 0.0;  // beta eps int u zeta / ((|x|^2+eps)|x|^2) d gamma
  double boundary_term = 0.0;    // int g d_nu(xi) d omega_beta
  double defect = 0.0;           // volume - source + boundary - correction
  double relative_defect = 0.0;
};

/// All four terms of the regularized weak identity for xi = x_N zeta. An empty f or g counts as zero.
EpsilonIdentityReport residual_epsilon_identity(const HardyParams& p, const DiscreteField& field, const ScalarFn& f,
                                        const ScalarFn& g, const TestFunction& zeta, double eps);

struct CorrectionRateStudy {
  std::vector<double> epsilons;
  std::vector<EpsilonIdentityReport> reports;
  /// Slope of log|correction| against log(eps) over the tail of the sweep.
  double observed_rate = 0.0;
  /// (N - 2 + tau_plus)/2, the exponent of the upper bound.
  double bound_rate = 0.0;
};

CorrectionRateStudy correction_rate_study(const HardyParams& p, const HalfBoxGrid& grid, const ScalarFn& f,
                                          const ScalarFn& g, const TestFunction& zeta,
                                          const std::vector<double>& eps_sequence, int tail = 4);

// ---- Dirac coefficient ----

/// zeta_m = eta0(2|x|/rho_m), rho_m in {0.2, 0.3, 0.4, 0.5, 0.6} a.
std::vector<TestFunction> default_xi_family(const HalfBoxGrid& grid);

struct KEstimate {
  std::vector<double> values;
  double mean = 0.0;
  /// max - min over the family.
  double spread = 0.0;
  /// Largest individual term divided by c_beta zeta(0); the size a zero k is measured against.
  double scale = 0.0;
};

/// Per test function: [int u L*zeta d gamma - int f zeta d gamma + int g d_nu xi d omega_beta] / (c_beta zeta(0)).
KEstimate extract_k(const HardyParams& p, const DiscreteField& field, const ScalarFn& f, const ScalarFn& g,
                    const std::vector<TestFunction>& family);

// ---- Poisson extension ----

/// Discrete harmonic extension of boundary data.
DiscreteField poisson_extension(const HalfBoxGrid& grid, const ScalarFn& g);

struct IdentityGReport {
  double volume_term = 0.0;     // int P[g] L*(zeta) d gamma
  double potential_term = 0.0;  // beta int P[g]/|x|^2 zeta d gamma
  double boundary_term = 0.0;   // int g d_nu(xi) d omega_beta
  double defect = 0.0;          // volume - potential + boundary
  double relative_defect = 0.0;
};

IdentityGReport verify_identity_g(const HardyParams& p, const DiscreteField& ext, const ScalarFn& g,
                                  const TestFunction& zeta);

struct TruncationSweep {
  std::vector<double> radii;
  std::vector<double> values;
  std::vector<double> increments;
  bool monotone = false;
  /// Increments shrink geometrically and the geometric tail is below 5% of the last value.
  bool cauchy = false;
  double tail_estimate = 0.0;
};

/// M(r) = int P[g eta_n] / |x|^2 d gamma with eta_n = 1 - eta0(|x|/r), for each r.
TruncationSweep poisson_truncation_sweep(const HardyParams& p, const HalfBoxGrid& grid, const ScalarFn& g,
                                         const std::vector<double>& radii);

// ---- blow-up ----

struct BlowupReport {
  std::vector<double> radii;
  std::vector<double> probe_values;
  std::vector<double> increments;
  /// int_{B_a^+} f (1 - eta0(|x|/r)) d gamma for each radius.
  std::vector<double> source_mass;
  PointH probe;
  bool strictly_increasing = false;
  double min_increment = 0.0;
  double max_increment = 0.0;
};

/// Moderate solves with the source f (1 - eta0(|x|/r_n)) and zero boundary data.
BlowupReport blowup_experiment(const HardyParams& p, const HalfBoxGrid& grid, const ScalarFn& f,
                               const std::vector<double>& radii, const PointH& probe);

// ---- Lambda^Omega ----

struct LambdaOmegaResult {
  DiscreteField field;
  DiscreteField w2;
  std::vector<double> shell_radii;
  /// max |Lambda^Omega / Lambda - 1| over interior nodes with |x| in (rho/2, rho].
  std::vector<double> shell_deviation;
  bool normalization_decreasing = false;
  double min_value = 0.0;
};

LambdaOmegaResult lambda_omega_construction(const HardyParams& p, const HalfBoxGrid& grid, double r0);

// ---- manufactured solutions ----

/// prod_{i<N} sin(pi (x_i + a)/(2a)) sin(pi x_N / a): vanishes on the box boundary.
Jet manufactured_jet(const PointH& x, double a);

struct ConvergenceStudy {
  std::vector<int> n;
  std::vector<double> h;
  std::vector<double> errors;
  double order = 0.0;
};

/// Max-norm error of solve_regularized against the manufactured solution (epsilon = 0).
ConvergenceStudy manufactured_convergence(const HardyParams& p, double a, const std::vector<int>& ns);

/// Max-norm error of dual_solve with rhs L*(u*) against w* = x_N u*.
ConvergenceStudy dual_conjugation_convergence(const HardyParams& p, double a, const std::vector<int>& ns);

}  // namespace hardy
