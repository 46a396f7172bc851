#include "hardy/extrapolation.hpp"

#include <cmath>
#include <limits>

#include "hardy/errors.hpp"

namespace hardy {

Extrapolated richardson_fitted(std::span<const double> seq) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (seq.empty()) throw InvalidArgument("richardson_fitted needs a non-empty sequence");
  const std::size_t n = seq.size();
  if (n < 3) return {seq[n - 1], nan};
  const double a = seq[n - 3], b = seq[n - 2], c = seq[n - 1];
  const double d1 = b - a, d2 = c - b;
  if (d2 == 0.0) return {c, std::numeric_limits<double>::infinity()};
  if (d1 == 0.0) return {c, nan};
  const double rho = d2 / d1;
  if (!(rho > 0.0 && rho < 1.0)) return {c, nan};
  return {c + d2 * rho / (1.0 - rho), -std::log2(rho)};
}

double fit_loglog_slope(std::span<const double> h, std::span<const double> err) {
  if (h.size() != err.size() || h.size() < 2) throw InvalidArgument("fit_loglog_slope needs >= 2 paired samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double x = std::log(h[i]), y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace hardy
