#include "hardy/fd_solver.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hardy/errors.hpp"

namespace hardy {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

struct RegularizedOperator::Impl {
  HardyParams params;
  HalfBoxGrid grid;
  SolveConfig cfg;
  SpMat A;
  Eigen::SimplicialLDLT<SpMat> ldlt;
  AssemblyDiagnostics diag;

  Impl(const HardyParams& p, const HalfBoxGrid& g, const SolveConfig& c) : params(p), grid(g), cfg(c) {}

  double potential(const PointH& x) const { return params.beta() / (x.norm2() + cfg.epsilon); }

  Vec solve_checked(const Vec& b) const {
    const double bn = b.norm();
    if (bn == 0.0) return Vec::Zero(b.size());
    Vec x = ldlt.solve(b);
    Vec r = b - A * x;
    double rel = r.norm() / bn;
    for (int it = 0; it < cfg.max_iterations && rel > cfg.linear_tolerance; ++it) {
      x += ldlt.solve(r);
      const Vec rn = b - A * x;
      const double reln = rn.norm() / bn;
      if (!(reln < rel)) {
        rel = reln;
        break;
      }
      r = rn;
      rel = reln;
    }
    if (!(rel <= cfg.linear_tolerance) || !x.allFinite()) {
      std::ostringstream os;
      os << "linear solve stalled at relative residual " << rel << " (tolerance " << cfg.linear_tolerance << ")";
      throw SolverDiverged(os.str());
    }
    return x;
  }
};

RegularizedOperator::RegularizedOperator(const HardyParams& p, const HalfBoxGrid& grid, const SolveConfig& cfg)
    : impl_(std::make_unique<Impl>(p, grid, cfg)) {
  if (p.dim() != grid.dim()) throw InvalidArgument("parameter and grid dimensions differ");
  if (cfg.epsilon < 0.0) throw InvalidArgument("epsilon must be nonnegative");
  Impl& m = *impl_;
  const int N = grid.dim();
  const std::size_t nu = grid.interior_count();
  const double ih2 = 1.0 / (grid.h() * grid.h());
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(nu * static_cast<std::size_t>(2 * N + 1));
  bool m_matrix = true;
  for (std::size_t u = 0; u < nu; ++u) {
    const MultiIndex j = grid.unknown_multi_index(u);
    const double diag = 2.0 * N * ih2 + m.potential(grid.coord(j));
    double off = 0.0;
    trip.emplace_back(static_cast<int>(u), static_cast<int>(u), diag);
    for (int d = 0; d < N; ++d) {
      for (int s = -1; s <= 1; s += 2) {
        MultiIndex k = j;
        k[d] += s;
        const long v = grid.unknown_index(k);
        if (v >= 0) {
          trip.emplace_back(static_cast<int>(u), static_cast<int>(v), -ih2);
          off += ih2;
        }
      }
    }
    if (diag < off) m_matrix = false;
  }
  m.A.resize(static_cast<Eigen::Index>(nu), static_cast<Eigen::Index>(nu));
  m.A.setFromTriplets(trip.begin(), trip.end());
  m.A.makeCompressed();
  m.diag.unknowns = nu;
  m.diag.nonzeros = static_cast<std::size_t>(m.A.nonZeros());
  m.diag.m_matrix = m_matrix;

  m.ldlt.compute(m.A);
  if (m.ldlt.info() != Eigen::Success) throw NotPositiveDefinite("LDL^T factorization failed");
  m.diag.min_pivot = m.ldlt.vectorD().minCoeff();
  m.diag.spd_certified = m.diag.min_pivot > 0.0;
  if (!m.diag.spd_certified) {
    std::ostringstream os;
    os << "assembled operator is not positive definite (smallest pivot " << m.diag.min_pivot << ", beta "
       << p.beta() << ", epsilon " << cfg.epsilon << ", n " << grid.n() << ")";
    throw NotPositiveDefinite(os.str());
  }
  m.diag.min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
  if (cfg.estimate_min_eigenvalue && grid.n() <= 32) {
    Vec x = Vec::Ones(static_cast<Eigen::Index>(nu)).normalized();
    double lam = 0.0;
    for (int it = 0; it < cfg.max_iterations; ++it) {
      Vec y = m.ldlt.solve(x);
      y.normalize();
      const double ln = y.dot(m.A * y);
      x = y;
      if (it > 0 && std::abs(ln - lam) <= 1e-12 * std::abs(ln)) {
        lam = ln;
        break;
      }
      lam = ln;
    }
    m.diag.min_eigenvalue = lam;
  }
}

RegularizedOperator::~RegularizedOperator() = default;
RegularizedOperator::RegularizedOperator(RegularizedOperator&&) noexcept = default;
RegularizedOperator& RegularizedOperator::operator=(RegularizedOperator&&) noexcept = default;

const HardyParams& RegularizedOperator::params() const { return impl_->params; }
const HalfBoxGrid& RegularizedOperator::grid() const { return impl_->grid; }
const SolveConfig& RegularizedOperator::config() const { return impl_->cfg; }
const AssemblyDiagnostics& RegularizedOperator::diagnostics() const { return impl_->diag; }
const SpMat& RegularizedOperator::matrix() const { return impl_->A; }

std::vector<double> RegularizedOperator::sample_interior(const ScalarFn& f) const {
  const HalfBoxGrid& g = impl_->grid;
  std::vector<double> out(g.interior_count());
  for (std::size_t u = 0; u < out.size(); ++u) out[u] = f(g.coord(g.unknown_multi_index(u)));
  return out;
}

DiscreteField RegularizedOperator::solve(const ScalarFn& f, const ScalarFn& g) const {
  return solve(sample_interior(f), DiscreteField::sample(impl_->grid, g));
}

DiscreteField RegularizedOperator::solve(const std::vector<double>& f, const DiscreteField& boundary) const {
  const Impl& m = *impl_;
  const HalfBoxGrid& grid = m.grid;
  if (f.size() != grid.interior_count()) throw InvalidArgument("source size does not match the unknowns");
  const int N = grid.dim();
  const double ih2 = 1.0 / (grid.h() * grid.h());
  Vec b(static_cast<Eigen::Index>(f.size()));
  for (std::size_t u = 0; u < f.size(); ++u) {
    const MultiIndex j = grid.unknown_multi_index(u);
    double v = f[u];
    for (int d = 0; d < N; ++d)
      for (int s = -1; s <= 1; s += 2) {
        MultiIndex k = j;
        k[d] += s;
        if (grid.kind(k) != NodeKind::Interior) v += boundary[grid.node_index(k)] * ih2;
      }
    b[static_cast<Eigen::Index>(u)] = v;
  }
  if (!b.allFinite()) throw NonFiniteIntegrand("source or boundary data is not finite on the grid");
  const Vec x = m.solve_checked(b);
  DiscreteField out = boundary;
  for (std::size_t u = 0; u < f.size(); ++u) {
    const MultiIndex j = grid.unknown_multi_index(u);
    out[grid.node_index(j)] = x[static_cast<Eigen::Index>(u)];
  }
  return out;
}

std::vector<double> RegularizedOperator::apply(const DiscreteField& u) const {
  const Impl& m = *impl_;
  const HalfBoxGrid& grid = m.grid;
  const int N = grid.dim();
  const double ih2 = 1.0 / (grid.h() * grid.h());
  std::vector<double> out(grid.interior_count());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const MultiIndex j = grid.unknown_multi_index(k);
    const std::size_t c = grid.node_index(j);
    double v = (2.0 * N * ih2 + m.potential(grid.coord(j))) * u[c];
    for (int d = 0; d < N; ++d)
      for (int s = -1; s <= 1; s += 2) {
        MultiIndex q = j;
        q[d] += s;
        v -= ih2 * u[grid.node_index(q)];
      }
    out[k] = v;
  }
  return out;
}

RegularizedOperator assemble(const HardyParams& p, const HalfBoxGrid& grid, const SolveConfig& cfg) {
  return RegularizedOperator(p, grid, cfg);
}

DiscreteField solve_regularized(const HardyParams& p, const HalfBoxGrid& grid, const SolveConfig& cfg,
                                const ScalarFn& f, const ScalarFn& g) {
  return RegularizedOperator(p, grid, cfg).solve(f, g);
}

std::vector<double> default_epsilon_sequence(const HalfBoxGrid& grid) {
  std::vector<double> out;
  const double floor = 0.25 * grid.h() * grid.h();
  for (int j = 1; j <= 8; ++j) {
    const double e = std::ldexp(1.0, -2 * j);
    if (e < floor && !out.empty()) break;
    out.push_back(e);
  }
  return out;
}

SweepReport epsilon_sweep(const HardyParams& p, const HalfBoxGrid& grid, const ScalarFn& f, const ScalarFn& g,
                          const std::vector<double>& eps, double tolerance) {
  if (eps.empty()) throw InvalidArgument("epsilon sequence is empty");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0)) throw InvalidArgument("epsilon values must be positive");
    if (i > 0 && !(eps[i] < eps[i - 1])) throw InvalidArgument("epsilon sequence must decrease strictly");
  }
  SweepReport rep;
  rep.epsilons = eps;
  rep.expected_direction = p.beta() > 0.0 ? -1 : (p.beta() < 0.0 ? 1 : 0);
  const DiscreteField gb = DiscreteField::sample(grid, g);
  for (double e : eps) {
    SolveConfig cfg;
    cfg.epsilon = e;
    cfg.estimate_min_eigenvalue = false;
    const RegularizedOperator op(p, grid, cfg);
    const std::vector<double> fs = op.sample_interior(f);
    for (double v : fs)
      if (v < 0.0) throw InvalidArgument("epsilon_sweep needs a nonnegative source");
    for (std::size_t i = 0; i < gb.size(); ++i)
      if (grid.kind(i) != NodeKind::Interior && gb[i] < 0.0)
        throw InvalidArgument("epsilon_sweep needs nonnegative boundary data");
    rep.fields.push_back(op.solve(fs, gb));
  }
  for (std::size_t k = 1; k < rep.fields.size(); ++k) {
    const DiscreteField& prev = rep.fields[k - 1];
    const DiscreteField& cur = rep.fields[k];
    for (std::size_t i = 0; i < cur.size(); ++i) {
      const double d = cur[i] - prev[i];
      double viol = 0.0;
      if (rep.expected_direction > 0) viol = -d;
      else if (rep.expected_direction < 0) viol = d;
      else viol = std::abs(d);
      if (viol > rep.max_violation) {
        rep.max_violation = viol;
        rep.worst_node = i;
      }
    }
  }
  if (rep.max_violation > tolerance) {
    std::ostringstream os;
    os << "epsilon monotonicity violated by " << rep.max_violation << " at node " << rep.worst_node;
    throw MonotonicityViolated(os.str());
  }
  return rep;
}

DualResult dual_solve(const HardyParams& p, const HalfBoxGrid& grid, DualRhs kind, const ScalarFn& custom,
                      double bound) {
  const double R0 = grid.halfwidth() * std::sqrt(static_cast<double>(grid.dim()));
  DualResult res;
  ScalarFn rhs;
  switch (kind) {
    case DualRhs::One:
      res.barrier = choose_dual_params_one(p, R0);
      rhs = [](const PointH&) { return 1.0; };
      break;
    case DualRhs::OneOverXn:
      res.barrier = choose_dual_params_inverse_xn(p, R0, 1.0);
      rhs = [](const PointH& x) { return 1.0 / x.last(); };
      break;
    case DualRhs::Custom:
      if (!custom) throw InvalidArgument("custom dual right-hand side is empty");
      res.barrier = choose_dual_params_inverse_xn(p, R0, bound);
      rhs = custom;
      break;
  }
  SolveConfig cfg;
  cfg.estimate_min_eigenvalue = false;
  const RegularizedOperator op(p, grid, cfg);
  const std::vector<double> src = op.sample_interior([&](const PointH& x) { return lambda_small(p, x) * rhs(x); });
  res.primal = op.solve(src, DiscreteField(grid, 0.0));
  res.w = DiscreteField(grid, 0.0);
  res.max_bound_excess = -std::numeric_limits<double>::infinity();
  res.min_value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.node_count(); ++i) {
    const PointH x = grid.coord(i);
    if (grid.kind(i) == NodeKind::Interior) res.w[i] = res.primal[i] * std::pow(x.norm(), -p.tau_plus());
    res.max_bound_excess = std::max(res.max_bound_excess, res.w[i] - res.barrier.t0 * x.last());
    res.min_value = std::min(res.min_value, res.w[i]);
  }
  res.bound_ok = res.max_bound_excess <= 1e-6;
  return res;
}

}  // namespace hardy
