#include "hardy/params.hpp"

#include <cmath>
#include <string>

#include "hardy/errors.hpp"

namespace hardy {

HardyParams::HardyParams(int dim, double beta) : dim_(dim), beta_(beta) {
  if (dim < 2) throw InvalidArgument("dimension must be at least 2, got " + std::to_string(dim));
  if (!std::isfinite(beta)) throw InvalidArgument("beta must be finite");
  beta0_ = -0.25 * dim * dim;
  if (beta < beta0_) {
    throw ParameterBelowCritical("beta = " + std::to_string(beta) + " is below the critical value " +
                                 std::to_string(beta0_) + "; tau(tau+N) = beta has no real root");
  }
  sqrt_disc_ = std::sqrt(beta - beta0_);
  tau_minus_ = -0.5 * dim - sqrt_disc_;
  tau_plus_ = -0.5 * dim + sqrt_disc_;
  const double s = sphere_area(dim) / dim;
  c_beta_ = is_critical() ? s : sqrt_disc_ * s;
}

double hardy_symbol(const HardyParams& p, double tau) { return p.beta() - tau * (tau + p.dim()); }

double sphere_area(int dim) {
  if (dim < 1) throw InvalidArgument("sphere_area needs dim >= 1");
  const double half = 0.5 * dim;
  return 2.0 * std::pow(kPi, half) / std::tgamma(half);
}

}  // namespace hardy
