#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>

namespace hardy {

inline constexpr int kMaxDim = 8;

/// A point of the closed upper half-space; the last coordinate is x_N.
class PointH {
 public:
  PointH() = default;
  explicit PointH(int dim) : dim_(dim) {}
  PointH(std::initializer_list<double> coords);
  explicit PointH(std::span<const double> coords);

  int dim() const { return dim_; }
  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  double last() const { return c_[static_cast<std::size_t>(dim_ - 1)]; }
  double norm2() const {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += c_[i] * c_[i];
    return s;
  }
  double norm() const { return std::sqrt(norm2()); }

 private:
  int dim_ = 0;
  std::array<double, kMaxDim> c_{};
};

/// Value, gradient and Laplacian of a scalar field at one point.
///
/// Only the trace of the Hessian enters L_beta and L*_beta, so it is the
/// only second-order quantity carried.
struct Jet {
  int dim = 0;
  double value = 0.0;
  std::array<double, kMaxDim> grad{};
  double laplacian = 0.0;

  static Jet constant(int dim, double c);
  static Jet coordinate(const PointH& x, int i);
  /// Jet of phi(|x|) given phi, phi', phi'' at r = |x| > 0.
  static Jet radial(const PointH& x, double phi, double dphi, double d2phi);
};

Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator*(double s, const Jet& a);

/// Euclidean inner product of two gradients.
double dot_grad(const Jet& a, const Jet& b);

/// x . grad(u) for the jet u at x.
double radial_derivative_times_r(const PointH& x, const Jet& u);

}  // namespace hardy
