#pragma once

#include <Eigen/SparseCore>
#include <memory>
#include <vector>

#include "hardy/analytic.hpp"
#include "hardy/grid.hpp"
#include "hardy/params.hpp"

namespace hardy {

struct SolveConfig {
  /// Regularization of the potential beta/(|x|^2 + epsilon); 0 keeps the raw
  /// potential at the nodes, which never include the origin.
  double epsilon = 0.0;
  /// Relative residual required of every linear solve.
  double linear_tolerance = 1e-10;
  /// Cap on iterative refinement steps and on inverse-iteration sweeps.
  int max_iterations = 200;
  /// Run inverse iteration for the smallest eigenvalue when n <= 32.
  bool estimate_min_eigenvalue = true;
};

struct AssemblyDiagnostics {
  std::size_t unknowns = 0;
  std::size_t nonzeros = 0;
  /// Off-diagonals nonpositive and every row weakly diagonally dominant.
  bool m_matrix = false;
  /// Every pivot of the LDL^T factorization is positive.
  bool spd_certified = false;
  double min_pivot = 0.0;
  /// NaN unless estimated.
  double min_eigenvalue = 0.0;
};

/// -Delta_h + beta/(|x|^2+epsilon) on the interior nodes with Dirichlet data
/// eliminated. Construction assembles and factors once; solves reuse the factor.
class RegularizedOperator {
 public:
  RegularizedOperator(const HardyParams& p, const HalfBoxGrid& grid, const SolveConfig& cfg);
  ~RegularizedOperator();
  RegularizedOperator(RegularizedOperator&&) noexcept;
  RegularizedOperator& operator=(RegularizedOperator&&) noexcept;

  const HardyParams& params() const;
  const HalfBoxGrid& grid() const;
  const SolveConfig& config() const;
  const AssemblyDiagnostics& diagnostics() const;
  const Eigen::SparseMatrix<double>& matrix() const;

  /// Solve with source f at interior nodes and boundary data g at boundary nodes.
  /// g is sampled with DiscreteField::sample, so a throw at the origin reads as 0.
  DiscreteField solve(const ScalarFn& f, const ScalarFn& g) const;
  /// Same with a source given per unknown and boundary values taken from a field.
  DiscreteField solve(const std::vector<double>& f_unknowns, const DiscreteField& boundary) const;

  /// (L_h u) at every interior node, in unknown order.
  std::vector<double> apply(const DiscreteField& u) const;

  /// Source sampled at interior nodes, in unknown order.
  std::vector<double> sample_interior(const ScalarFn& f) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Assemble and certify; throws NotPositiveDefinite when a pivot is not positive.
RegularizedOperator assemble(const HardyParams& p, const HalfBoxGrid& grid, const SolveConfig& cfg);

DiscreteField solve_regularized(const HardyParams& p, const HalfBoxGrid& grid, const SolveConfig& cfg,
                                const ScalarFn& f, const ScalarFn& g);

struct SweepReport {
  std::vector<double> epsilons;
  std::vector<DiscreteField> fields;
  /// +1 when u grows as epsilon decreases, -1 when it shrinks, 0 for beta = 0.
  int expected_direction = 0;
  double max_violation = 0.0;
  std::size_t worst_node = 0;
  /// Last field of the sweep: the candidate for the epsilon -> 0 limit.
  const DiscreteField& limit() const { return fields.back(); }
};

/// Solves along a strictly decreasing epsilon sequence for f, g >= 0 and checks
/// nodewise monotonicity: u shrinks as epsilon decreases when beta > 0, grows
/// when beta < 0, and is unchanged when beta = 0. Throws MonotonicityViolated.
SweepReport epsilon_sweep(const HardyParams& p, const HalfBoxGrid& grid, const ScalarFn& f, const ScalarFn& g,
                          const std::vector<double>& eps_sequence, double tolerance = 1e-9);

/// Default sequence 4^-j, j = 1..8, truncated so that the last entry stays >= h^2/4.
std::vector<double> default_epsilon_sequence(const HalfBoxGrid& grid);

enum class DualRhs { One, OneOverXn, Custom };

struct DualResult {
  DiscreteField w;
  /// W = lambda w / x_N, the primal field actually solved for.
  DiscreteField primal;
  SupersolutionParams barrier;
  /// max over nodes of w - t x_N (should stay <= 1e-6).
  double max_bound_excess = 0.0;
  double min_value = 0.0;
  bool bound_ok = false;
};

/// Solve L*(w/x_N) = rhs with w = 0 on the boundary, through L_beta(W) = lambda rhs.
/// For DualRhs::Custom, f must satisfy |f| <= bound / x_N.
DualResult dual_solve(const HardyParams& p, const HalfBoxGrid& grid, DualRhs kind, const ScalarFn& custom = {},
                      double bound = 1.0);

}  // namespace hardy
