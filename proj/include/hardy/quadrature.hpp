#pragma once

#include <span>
#include <vector>

#include "hardy/analytic.hpp"
#include "hardy/params.hpp"
#include "hardy/point.hpp"

namespace hardy {

enum class RuleKind { VolumeHalfBall, VolumeHalfBox, SurfaceFlatDisk, SurfaceHemisphere };

const char* to_string(RuleKind kind);

/// Cell-based rule on a region graded geometrically (ratio 1/2) toward the origin.
///
/// Nodes are stored as a flat coordinate array. shell[i] is the grading level
/// that owns node i: level k covers radii in [q^(k+1), q^k] times the outer
/// size, and the innermost level holds the remaining core.
struct QuadratureRule {
  RuleKind kind = RuleKind::VolumeHalfBall;
  int dim = 2;
  double outer = 1.0;
  double inner_cut = 0.0;
  int base_resolution = 0;
  int levels = 0;
  int points_per_axis = 2;
  double grading = 0.5;
  std::vector<double> coords;
  std::vector<double> weights;
  std::vector<int> shell;
  /// Inner radius (or inner half-width) of every shell, outermost first.
  std::vector<double> shell_inner;

  std::size_t size() const { return weights.size(); }
  int shell_count() const { return static_cast<int>(shell_inner.size()); }
  PointH point(std::size_t i) const {
    return PointH(std::span<const double>(coords.data() + i * static_cast<std::size_t>(dim),
                                          static_cast<std::size_t>(dim)));
  }
  bool is_volume() const { return kind == RuleKind::VolumeHalfBall || kind == RuleKind::VolumeHalfBox; }
};

/// Build a graded rule. outer is a radius (half-ball, disk, hemisphere) or a
/// half-width (half-box). For radial kinds with inner_cut > 0 the shells stop
/// at inner_cut and levels is ignored; inner_cut is not available for the half-box.
/// points_per_axis selects 1 (midpoint), 2 or 3 Gauss-Legendre points per cell axis.
QuadratureRule build_rule(RuleKind kind, int dim, double outer, double inner_cut, int base_resolution,
                          int levels, int points_per_axis = 2);

/// Sum of f(x_i) w_i.
double integrate(const QuadratureRule& rule, const ScalarFn& f);

/// Sum of f(x_i) lambda_beta(x_i) w_i over a volume rule.
double integrate_gamma(const HardyParams& p, const QuadratureRule& rule, const ScalarFn& f);

/// Sum of g(x_i) |x_i|^tau_plus w_i over a surface rule.
double integrate_omega_beta(const HardyParams& p, const QuadratureRule& rule, const ScalarFn& g);

/// Per-shell partial sums of f(x_i) w_i, outermost shell first.
std::vector<double> shell_sums(const QuadratureRule& rule, const ScalarFn& f);

/// Pairwise summation in the given order.
double pairwise_sum(std::span<const double> terms);

}  // namespace hardy
