#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "hardy/point.hpp"

namespace hardy {

enum class NodeKind { Interior, Flat, Lateral };

using MultiIndex = std::array<int, kMaxDim>;

/// Tensor grid on (-a,a)^(N-1) x (0,a) with spacing h = 2a/n.
///
/// Tangential indices run over [0, n], the normal index over [0, n/2]. Nodes are
/// numbered lexicographically with the last (normal) index fastest. The origin
/// is the flat node at the centre of the bottom face. Boundary nodes with x_N = 0
/// are Flat; every other boundary node is Lateral (this includes the top face).
class HalfBoxGrid {
 public:
  HalfBoxGrid(int dim, double halfwidth, int n);

  int dim() const { return dim_; }
  double halfwidth() const { return a_; }
  int n() const { return n_; }
  double h() const { return h_; }

  std::size_t node_count() const { return node_count_; }
  std::size_t interior_count() const { return interior_count_; }
  /// Nodes per axis: n+1 on tangential axes, n/2+1 on the normal axis.
  int axis_nodes(int d) const { return d == dim_ - 1 ? n_ / 2 + 1 : n_ + 1; }

  MultiIndex multi_index(std::size_t node) const;
  std::size_t node_index(const MultiIndex& j) const;
  PointH coord(std::size_t node) const;
  PointH coord(const MultiIndex& j) const;
  NodeKind kind(std::size_t node) const;
  NodeKind kind(const MultiIndex& j) const;
  std::size_t origin() const;

  /// Position of an interior node among the unknowns, or -1 for boundary nodes.
  long unknown_index(const MultiIndex& j) const;
  MultiIndex unknown_multi_index(std::size_t unknown) const;

  /// Trapezoid weight of a node for integrals over the closed half-box.
  double trapezoid_weight(const MultiIndex& j) const;

  /// Node nearest to x (ties broken toward lower indices).
  std::size_t nearest_node(const PointH& x) const;

 private:
  int dim_;
  double a_;
  int n_;
  double h_;
  std::size_t node_count_;
  std::size_t interior_count_;
};

/// Node-indexed values on a grid.
class DiscreteField {
 public:
  DiscreteField() = default;
  explicit DiscreteField(const HalfBoxGrid& grid, double fill = 0.0);
  DiscreteField(const HalfBoxGrid& grid, std::vector<double> values);

  const HalfBoxGrid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t node) const { return values_[node]; }
  double& operator[](std::size_t node) { return values_[node]; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  /// Values on the flat face, in node order.
  std::vector<double> flat_trace() const;
  /// Values on the lateral and top faces, in node order.
  std::vector<double> lateral_trace() const;

  bool all_finite() const;

  /// Sample a function at every node. A hardy::Error thrown at the origin sets
  /// that node to 0; anywhere else it propagates.
  static DiscreteField sample(const HalfBoxGrid& grid, const std::function<double(const PointH&)>& f);

 private:
  HalfBoxGrid grid_{2, 0.45, 4};
  std::vector<double> values_;
};

/// Text format: lines "N", "a", "n", "beta", "epsilon" as key value pairs, then
/// one value per node in node order, printed with 17 significant digits.
void write_field(std::ostream& os, const DiscreteField& field, double beta, double epsilon);
DiscreteField read_field(std::istream& is, double* beta = nullptr, double* epsilon = nullptr);

}  // namespace hardy
