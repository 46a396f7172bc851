#pragma once

#include <cmath>

namespace hardy {

/// Exponents and constants of the operator -Delta + beta/|x|^2 in dimension N.
///
/// beta0 = -N^2/4 is the critical coefficient; tau_minus <= -N/2 <= tau_plus
/// are the two roots of beta - tau (tau + N) = 0. Construction fails with
/// ParameterBelowCritical when beta < beta0.
class HardyParams {
 public:
  HardyParams(int dim, double beta);

  int dim() const { return dim_; }
  double beta() const { return beta_; }
  double beta0() const { return beta0_; }
  double tau_minus() const { return tau_minus_; }
  double tau_plus() const { return tau_plus_; }
  /// sqrt(beta - beta0); zero exactly on the critical branch.
  double sqrt_disc() const { return sqrt_disc_; }
  /// Weight of the Dirac mass produced by the fundamental solution.
  double c_beta() const { return c_beta_; }
  bool is_critical() const { return sqrt_disc_ == 0.0; }

 private:
  int dim_;
  double beta_;
  double beta0_;
  double sqrt_disc_;
  double tau_minus_;
  double tau_plus_;
  double c_beta_;
};

inline HardyParams make_params(int dim, double beta) { return HardyParams(dim, beta); }

/// beta - tau (tau + N): the coefficient in L_beta(x_N |x|^tau) = c(tau) x_N |x|^(tau-2).
double hardy_symbol(const HardyParams& p, double tau);

/// (N-1)-dimensional measure of the unit sphere in R^N, 2 pi^(N/2) / Gamma(N/2).
double sphere_area(int dim);

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace hardy
