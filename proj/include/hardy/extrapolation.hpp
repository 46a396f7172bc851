#pragma once

#include <span>

namespace hardy {

struct Extrapolated {
  double limit;
  /// Observed convergence order per halving; NaN when the tail is not geometric.
  double order;
};

/// Richardson extrapolation of a sequence sampled at a geometric parameter
/// (ratio 1/2), with the order fitted from the last three terms.
Extrapolated richardson_fitted(std::span<const double> seq);

/// Least-squares slope of log(err) against log(h).
double fit_loglog_slope(std::span<const double> h, std::span<const double> err);

}  // namespace hardy
