#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <vector>

#include "hardy/analytic.hpp"
#include "hardy/errors.hpp"
#include "hardy/experiments.hpp"
#include "hardy/fd_solver.hpp"

using namespace hardy;

namespace {

// Random nonnegative data: a sum of a few positive Gaussians with random centres.
ScalarFn random_positive(std::mt19937_64& rng, double a) {
  std::uniform_real_distribution<double> u(-a, a), w(0.0, 2.0), s(0.05, 0.3);
  std::vector<std::array<double, 5>> bumps(1 + rng() % 3);
  for (auto& b : bumps) b = {u(rng), std::abs(u(rng)), u(rng), w(rng), s(rng)};
  return [bumps](const PointH& x) {
    double v = 0.0;
    for (const auto& b : bumps) {
      double d2 = 0.0;
      for (int i = 0; i < x.dim(); ++i) {
        const double c = i == x.dim() - 1 ? b[1] : (i == 0 ? b[0] : b[2]);
        d2 += (x[i] - c) * (x[i] - c);
      }
      v += b[3] * std::exp(-d2 / (b[4] * b[4]));
    }
    return v;
  };
}

const ScalarFn kZero = [](const PointH&) { return 0.0; };
const ScalarFn kOne = [](const PointH&) { return 1.0; };

}  // namespace

TEST(Assembly, LaplacianIsMMatrix) {
  const RegularizedOperator op(HardyParams(2, 0.0), HalfBoxGrid(2, 0.45, 16), SolveConfig{});
  const AssemblyDiagnostics& d = op.diagnostics();
  EXPECT_TRUE(d.m_matrix);
  EXPECT_TRUE(d.spd_certified);
  EXPECT_EQ(d.unknowns, 15u * 7u);
  EXPECT_GT(d.min_eigenvalue, 0.0);
  const auto& A = op.matrix();
  EXPECT_EQ(A.rows(), static_cast<Eigen::Index>(d.unknowns));
  EXPECT_NEAR((Eigen::MatrixXd(A) - Eigen::MatrixXd(A).transpose()).norm(), 0.0, 1e-12);
}

TEST(Assembly, PositivePotentialKeepsMMatrix) {
  SolveConfig c;
  c.epsilon = 0.01;
  const RegularizedOperator op(HardyParams(2, 3.0), HalfBoxGrid(2, 0.45, 16), c);
  EXPECT_TRUE(op.diagnostics().m_matrix);
  EXPECT_TRUE(op.diagnostics().spd_certified);
}

TEST(Assembly, CriticalPotentialIsPositiveDefinite) {
  SolveConfig c;
  c.epsilon = 1e-4;
  const RegularizedOperator op(HardyParams(2, -1.0), HalfBoxGrid(2, 0.45, 16), c);
  const AssemblyDiagnostics& d = op.diagnostics();
  EXPECT_TRUE(d.spd_certified);
  EXPECT_GT(d.min_pivot, 0.0);
  EXPECT_GT(d.min_eigenvalue, 0.0);
  // Inverse-iteration oracle: the Rayleigh quotient of the estimate's eigenvector is bounded by lambda_min.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(op.matrix()));
  EXPECT_NEAR(d.min_eigenvalue, es.eigenvalues()(0), 1e-4 * es.eigenvalues()(0));
}

TEST(Assembly, NegativeEpsilonRejected) {
  SolveConfig c;
  c.epsilon = -1.0;
  EXPECT_THROW(RegularizedOperator(HardyParams(2, 0.0), HalfBoxGrid(2, 0.45, 8), c), InvalidArgument);
  EXPECT_THROW(RegularizedOperator(HardyParams(3, 0.0), HalfBoxGrid(2, 0.45, 8), SolveConfig{}), InvalidArgument);
}

TEST(Solve, ZeroDataGivesZero) {
  const DiscreteField u = solve_regularized(HardyParams(2, 3.0), HalfBoxGrid(2, 0.45, 16), SolveConfig{}, kZero, kZero);
  for (double v : u.values()) EXPECT_EQ(v, 0.0);
}

TEST(Solve, DiscreteResidualIsSmall) {
  const HalfBoxGrid g(3, 0.45, 12);
  const RegularizedOperator op(HardyParams(3, -1.0), g, SolveConfig{});
  std::mt19937_64 rng(2);
  const ScalarFn f = random_positive(rng, 0.45), b = random_positive(rng, 0.45);
  const DiscreteField u = op.solve(f, b);
  const std::vector<double> Lu = op.apply(u), fs = op.sample_interior(f);
  for (std::size_t i = 0; i < fs.size(); ++i) EXPECT_NEAR(Lu[i], fs[i], 1e-8 * (1.0 + std::abs(fs[i])));
  for (std::size_t i = 0; i < g.node_count(); ++i)
    if (g.kind(i) != NodeKind::Interior) EXPECT_EQ(u[i], b(g.coord(i)));
}

TEST(Solve, ManufacturedSolutionConvergesAtSecondOrder) {
  for (double beta : {-0.5, 0.0, 3.0}) {
    const ConvergenceStudy s = manufactured_convergence(HardyParams(2, beta), 0.45, {16, 32, 64});
    EXPECT_NEAR(s.order, 2.0, 0.3) << beta;
    for (std::size_t i = 1; i < s.errors.size(); ++i) EXPECT_LT(s.errors[i], s.errors[i - 1]);
  }
  EXPECT_NEAR(manufactured_convergence(HardyParams(3, 1.0), 0.45, {8, 16, 32}).order, 2.0, 0.3);
}

TEST(ComparisonPrinciple, OrderedDataGiveOrderedSolutions) {
  std::mt19937_64 rng(31);
  for (double beta : {-0.5, 0.0, 3.0}) {
    const HalfBoxGrid g(2, 0.45, 24);
    const RegularizedOperator op(HardyParams(2, beta), g, SolveConfig{});
    for (int k = 0; k < 20; ++k) {
      const ScalarFn f1 = random_positive(rng, 0.45), df = random_positive(rng, 0.45);
      const ScalarFn g1 = random_positive(rng, 0.45), dg = random_positive(rng, 0.45);
      const DiscreteField lo = op.solve(f1, g1);
      const DiscreteField hi = op.solve([&](const PointH& x) { return f1(x) + df(x); },
                                        [&](const PointH& x) { return g1(x) + dg(x); });
      for (std::size_t i = 0; i < g.node_count(); ++i) {
        ASSERT_GE(hi[i], lo[i] - 1e-9);
        ASSERT_GE(lo[i], -1e-10);
      }
    }
  }
}

TEST(EpsilonSweep, DirectionFollowsSignOfBeta) {
  const HalfBoxGrid g(2, 0.45, 32);
  const std::vector<double> eps{1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
  const SweepReport pos = epsilon_sweep(HardyParams(2, 3.0), g, kOne, kZero, eps);
  EXPECT_EQ(pos.expected_direction, -1);
  const SweepReport neg = epsilon_sweep(HardyParams(2, -0.5), g, kOne, kZero, eps);
  EXPECT_EQ(neg.expected_direction, 1);
  const SweepReport zero = epsilon_sweep(HardyParams(2, 0.0), g, kOne, kZero, eps);
  EXPECT_EQ(zero.max_violation, 0.0);
  const std::size_t probe = g.nearest_node(PointH{0.0, 0.05});
  EXPECT_LT(pos.limit()[probe], pos.fields.front()[probe]);
  EXPECT_GT(neg.limit()[probe], neg.fields.front()[probe]);
}

TEST(EpsilonSweep, RejectsBadInput) {
  const HalfBoxGrid g(2, 0.45, 8);
  const HardyParams p(2, 1.0);
  EXPECT_THROW(epsilon_sweep(p, g, kOne, kZero, {}), InvalidArgument);
  EXPECT_THROW(epsilon_sweep(p, g, kOne, kZero, {1e-2, 1e-1}), InvalidArgument);
  EXPECT_THROW(epsilon_sweep(p, g, [](const PointH&) { return -1.0; }, kZero, {1e-1, 1e-2}), InvalidArgument);
}

TEST(EpsilonSweep, DefaultSequenceRespectsFloor) {
  const HalfBoxGrid g(2, 0.45, 64);
  const std::vector<double> e = default_epsilon_sequence(g);
  EXPECT_DOUBLE_EQ(e.front(), 0.25);
  for (std::size_t i = 1; i < e.size(); ++i) EXPECT_DOUBLE_EQ(e[i], e[i - 1] / 4);
  EXPECT_GE(e.back(), 0.25 * g.h() * g.h());
}

TEST(Dual, BoundsPositivityAndDominance) {
  for (double beta : {-1.0, -0.5, 0.0, 3.0}) {
    const HardyParams p(2, beta);
    const HalfBoxGrid g(2, 0.45, 32);
    const DualResult one = dual_solve(p, g, DualRhs::One);
    const DualResult inv = dual_solve(p, g, DualRhs::OneOverXn);
    EXPECT_TRUE(one.bound_ok) << beta;
    EXPECT_TRUE(inv.bound_ok) << beta;
    EXPECT_GE(one.min_value, -1e-9);
    EXPECT_GE(inv.min_value, -1e-9);
    for (std::size_t i = 0; i < g.node_count(); ++i) EXPECT_GE(inv.w[i], one.w[i] - 1e-9);
  }
  EXPECT_THROW(dual_solve(HardyParams(2, 0.0), HalfBoxGrid(2, 0.45, 8), DualRhs::Custom), InvalidArgument);
}

TEST(Dual, ConjugationConvergesAtSecondOrder) {
  for (double beta : {-0.5, 0.0, 3.0})
    EXPECT_GE(dual_conjugation_convergence(HardyParams(2, beta), 0.45, {16, 32, 64}).order, 1.7) << beta;
}
