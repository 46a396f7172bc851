#include "hardy/point.hpp"

#include <string>

#include "hardy/errors.hpp"

namespace hardy {

namespace {
void check_dim(std::size_t n) {
  if (n < 1 || n > static_cast<std::size_t>(kMaxDim)) {
    throw InvalidArgument("point dimension must lie in [1, " + std::to_string(kMaxDim) + "], got " +
                          std::to_string(n));
  }
}
}  // namespace

PointH::PointH(std::initializer_list<double> coords) : dim_(static_cast<int>(coords.size())) {
  check_dim(coords.size());
  std::size_t i = 0;
  for (double v : coords) c_[i++] = v;
}

PointH::PointH(std::span<const double> coords) : dim_(static_cast<int>(coords.size())) {
  check_dim(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) c_[i] = coords[i];
}

Jet Jet::constant(int dim, double c) {
  Jet j;
  j.dim = dim;
  j.value = c;
  return j;
}

Jet Jet::coordinate(const PointH& x, int i) {
  Jet j;
  j.dim = x.dim();
  j.value = x[i];
  j.grad[static_cast<std::size_t>(i)] = 1.0;
  return j;
}

Jet Jet::radial(const PointH& x, double phi, double dphi, double d2phi) {
  const double r = x.norm();
  Jet j;
  j.dim = x.dim();
  j.value = phi;
  for (int i = 0; i < x.dim(); ++i) j.grad[static_cast<std::size_t>(i)] = dphi * x[i] / r;
  j.laplacian = d2phi + (x.dim() - 1) * dphi / r;
  return j;
}

Jet operator+(const Jet& a, const Jet& b) {
  Jet j = a;
  j.value += b.value;
  for (int i = 0; i < a.dim; ++i) j.grad[i] += b.grad[i];
  j.laplacian += b.laplacian;
  return j;
}

Jet operator-(const Jet& a, const Jet& b) { return a + (-1.0) * b; }

Jet operator*(const Jet& a, const Jet& b) {
  Jet j;
  j.dim = a.dim;
  j.value = a.value * b.value;
  for (int i = 0; i < a.dim; ++i) j.grad[i] = a.value * b.grad[i] + b.value * a.grad[i];
  j.laplacian = a.value * b.laplacian + b.value * a.laplacian + 2.0 * dot_grad(a, b);
  return j;
}

Jet operator*(double s, const Jet& a) {
  Jet j = a;
  j.value *= s;
  for (int i = 0; i < a.dim; ++i) j.grad[i] *= s;
  j.laplacian *= s;
  return j;
}

double dot_grad(const Jet& a, const Jet& b) {
  double s = 0.0;
  for (int i = 0; i < a.dim; ++i) s += a.grad[i] * b.grad[i];
  return s;
}

double radial_derivative_times_r(const PointH& x, const Jet& u) {
  double s = 0.0;
  for (int i = 0; i < x.dim(); ++i) s += x[i] * u.grad[i];
  return s;
}

}  // namespace hardy
