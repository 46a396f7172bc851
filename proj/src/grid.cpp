#include "hardy/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "hardy/errors.hpp"

namespace hardy {

HalfBoxGrid::HalfBoxGrid(int dim, double halfwidth, int n) : dim_(dim), a_(halfwidth), n_(n) {
  if (dim < 2 || dim > 3) throw InvalidArgument("HalfBoxGrid supports N = 2 or 3");
  if (!(halfwidth > 0.0 && halfwidth < 1.0 / std::sqrt(static_cast<double>(dim))))
    throw InvalidArgument("halfwidth must lie in (0, 1/sqrt(N)) so the box sits inside the unit half-ball");
  if (n < 4 || n % 2 != 0) throw InvalidArgument("cells per axis must be even and at least 4");
  h_ = 2.0 * a_ / n_;
  node_count_ = 1;
  interior_count_ = 1;
  for (int d = 0; d < dim_; ++d) {
    node_count_ *= static_cast<std::size_t>(axis_nodes(d));
    interior_count_ *= static_cast<std::size_t>(axis_nodes(d) - 2);
  }
}

MultiIndex HalfBoxGrid::multi_index(std::size_t node) const {
  MultiIndex j{};
  for (int d = dim_ - 1; d >= 0; --d) {
    const std::size_t m = static_cast<std::size_t>(axis_nodes(d));
    j[d] = static_cast<int>(node % m);
    node /= m;
  }
  return j;
}

std::size_t HalfBoxGrid::node_index(const MultiIndex& j) const {
  std::size_t idx = 0;
  for (int d = 0; d < dim_; ++d) idx = idx * static_cast<std::size_t>(axis_nodes(d)) + static_cast<std::size_t>(j[d]);
  return idx;
}

PointH HalfBoxGrid::coord(const MultiIndex& j) const {
  PointH x(dim_);
  for (int d = 0; d < dim_ - 1; ++d) x[d] = -a_ + j[d] * h_;
  x[dim_ - 1] = j[dim_ - 1] * h_;
  return x;
}

PointH HalfBoxGrid::coord(std::size_t node) const { return coord(multi_index(node)); }

NodeKind HalfBoxGrid::kind(const MultiIndex& j) const {
  if (j[dim_ - 1] == 0) return NodeKind::Flat;
  if (j[dim_ - 1] == n_ / 2) return NodeKind::Lateral;
  for (int d = 0; d < dim_ - 1; ++d)
    if (j[d] == 0 || j[d] == n_) return NodeKind::Lateral;
  return NodeKind::Interior;
}

NodeKind HalfBoxGrid::kind(std::size_t node) const { return kind(multi_index(node)); }

std::size_t HalfBoxGrid::origin() const {
  MultiIndex j{};
  for (int d = 0; d < dim_ - 1; ++d) j[d] = n_ / 2;
  return node_index(j);
}

long HalfBoxGrid::unknown_index(const MultiIndex& j) const {
  if (kind(j) != NodeKind::Interior) return -1;
  long idx = 0;
  for (int d = 0; d < dim_; ++d) idx = idx * (axis_nodes(d) - 2) + (j[d] - 1);
  return idx;
}

MultiIndex HalfBoxGrid::unknown_multi_index(std::size_t unknown) const {
  MultiIndex j{};
  for (int d = dim_ - 1; d >= 0; --d) {
    const std::size_t m = static_cast<std::size_t>(axis_nodes(d) - 2);
    j[d] = static_cast<int>(unknown % m) + 1;
    unknown /= m;
  }
  return j;
}

double HalfBoxGrid::trapezoid_weight(const MultiIndex& j) const {
  double w = std::pow(h_, dim_);
  for (int d = 0; d < dim_; ++d)
    if (j[d] == 0 || j[d] == axis_nodes(d) - 1) w *= 0.5;
  return w;
}

std::size_t HalfBoxGrid::nearest_node(const PointH& x) const {
  MultiIndex j{};
  for (int d = 0; d < dim_; ++d) {
    const double off = d == dim_ - 1 ? 0.0 : a_;
    int k = static_cast<int>(std::lround((x[d] + off) / h_));
    j[d] = std::clamp(k, 0, axis_nodes(d) - 1);
  }
  return node_index(j);
}

DiscreteField::DiscreteField(const HalfBoxGrid& grid, double fill) : grid_(grid), values_(grid.node_count(), fill) {}

DiscreteField::DiscreteField(const HalfBoxGrid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.node_count()) throw InvalidArgument("field size does not match the grid");
}

std::vector<double> DiscreteField::flat_trace() const {
  std::vector<double> out;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (grid_.kind(i) == NodeKind::Flat) out.push_back(values_[i]);
  return out;
}

std::vector<double> DiscreteField::lateral_trace() const {
  std::vector<double> out;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (grid_.kind(i) == NodeKind::Lateral) out.push_back(values_[i]);
  return out;
}

bool DiscreteField::all_finite() const {
  for (double v : values_)
    if (!std::isfinite(v)) return false;
  return true;
}

DiscreteField DiscreteField::sample(const HalfBoxGrid& grid, const std::function<double(const PointH&)>& f) {
  DiscreteField out(grid);
  const std::size_t o = grid.origin();
  for (std::size_t i = 0; i < grid.node_count(); ++i) {
    if (i == o) {
      try {
        out[i] = f(grid.coord(i));
      } catch (const Error&) {
        out[i] = 0.0;
      }
      continue;
    }
    out[i] = f(grid.coord(i));
  }
  return out;
}

void write_field(std::ostream& os, const DiscreteField& field, double beta, double epsilon) {
  const HalfBoxGrid& g = field.grid();
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  os << "N " << g.dim() << "\n";
  os << "a " << num(g.halfwidth()) << "\n";
  os << "n " << g.n() << "\n";
  os << "beta " << num(beta) << "\n";
  os << "epsilon " << num(epsilon) << "\n";
  for (double v : field.values()) os << num(v) << "\n";
}

DiscreteField read_field(std::istream& is, double* beta, double* epsilon) {
  auto expect = [&](const char* key) {
    std::string k;
    double v = 0.0;
    if (!(is >> k >> v) || k != key) throw FormatError(std::string("field header: expected key '") + key + "'");
    return v;
  };
  const int N = static_cast<int>(expect("N"));
  const double a = expect("a");
  const int n = static_cast<int>(expect("n"));
  const double b = expect("beta");
  const double e = expect("epsilon");
  HalfBoxGrid grid(N, a, n);
  std::vector<double> vals(grid.node_count());
  for (double& v : vals)
    if (!(is >> v)) throw FormatError("field body ended before every node had a value");
  if (beta) *beta = b;
  if (epsilon) *epsilon = e;
  return DiscreteField(grid, std::move(vals));
}

}  // namespace hardy
