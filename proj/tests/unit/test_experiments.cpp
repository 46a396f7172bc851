#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "hardy/analytic.hpp"
#include "hardy/errors.hpp"
#include "hardy/experiments.hpp"
#include "hardy/fd_solver.hpp"

using namespace hardy;

namespace {

const ScalarFn kZero = [](const PointH&) { return 0.0; };
const ScalarFn kOne = [](const PointH&) { return 1.0; };

DiscreteField kernel_field(const HardyParams& p, const HalfBoxGrid& g, double scale = 1.0) {
  return DiscreteField::sample(g, [&](const PointH& x) { return scale * lambda_fund(p, x); });
}

}  // namespace

TEST(GridIntegral, TrapezoidOnLinearFunction) {
  const HalfBoxGrid g(2, 0.4, 16);
  EXPECT_NEAR(grid_integral(g, [](std::size_t, const PointH& x) { return x.last(); }), 0.8 * 0.4 * 0.2, 1e-14);
}

TEST(ManufacturedJet, VanishesOnBoundaryAndMatchesFiniteDifferences) {
  const double a = 0.45;
  const HalfBoxGrid g(3, a, 8);
  for (std::size_t i = 0; i < g.node_count(); ++i)
    if (g.kind(i) != NodeKind::Interior) EXPECT_NEAR(manufactured_jet(g.coord(i), a).value, 0.0, 1e-15);
  const PointH x{0.1, -0.2, 0.15};
  double lap = 0.0;
  const double h = 1e-4;
  for (int d = 0; d < 3; ++d) {
    PointH xp = x, xm = x;
    xp[d] += h;
    xm[d] -= h;
    lap += (manufactured_jet(xp, a).value - 2 * manufactured_jet(x, a).value + manufactured_jet(xm, a).value) / (h * h);
  }
  EXPECT_NEAR(manufactured_jet(x, a).laplacian, lap, 1e-5);
}

TEST(EpsilonIdentity, CorrectionVanishesAtBetaZeroAndDefectIsSmall) {
  const HalfBoxGrid g(2, 0.45, 128);
  SolveConfig c;
  c.epsilon = 1e-2;
  const HardyParams p0(2, 0.0);
  const DiscreteField u0 = solve_regularized(p0, g, c, kOne, kZero);
  const EpsilonIdentityReport r0 = residual_epsilon_identity(p0, u0, kOne, kZero, radial_bump(0.2), 1e-2);
  EXPECT_EQ(r0.correction_term, 0.0);
  const HardyParams p(2, 3.0);
  const DiscreteField u = solve_regularized(p, g, c, kOne, kZero);
  const EpsilonIdentityReport r = residual_epsilon_identity(p, u, kOne, kZero, radial_bump(0.2), 1e-2);
  EXPECT_GT(r.correction_term, 0.0);
  EXPECT_LT(r.relative_defect, 0.02);
  EXPECT_THROW(residual_epsilon_identity(p, u, kOne, kZero, radial_bump(0.5), 1e-2), InadmissibleTestFunction);
}

TEST(EpsilonIdentity, CorrectionDecaysNoSlowerThanBound) {
  const HardyParams p(2, 3.0);
  const HalfBoxGrid g(2, 0.45, 64);
  const CorrectionRateStudy s = correction_rate_study(p, g, kOne, kZero, radial_bump(0.2), default_epsilon_sequence(g));
  EXPECT_NEAR(s.bound_rate, 0.5, 1e-12);
  EXPECT_GE(s.observed_rate, s.bound_rate - 0.3);
  for (std::size_t i = 1; i < s.reports.size(); ++i)
    EXPECT_LT(s.reports[i].correction_term, s.reports[i - 1].correction_term);
}

TEST(ExtractK, KernelHasUnitCoefficientAndIsLinear) {
  const HardyParams p(2, 0.0);
  const HalfBoxGrid g(2, 0.45, 128);
  const auto fam = default_xi_family(g);
  const KEstimate k1 = extract_k(p, kernel_field(p, g), kZero, {}, fam);
  EXPECT_NEAR(k1.mean, 1.0, 0.02);
  EXPECT_LT(k1.spread, 0.02);
  const KEstimate k2 = extract_k(p, kernel_field(p, g, 2.0), kZero, {}, fam);
  EXPECT_NEAR(k2.mean, 2.0 * k1.mean, 1e-12);
}

TEST(ExtractK, ModerateSolutionHasZeroCoefficient) {
  const HardyParams p(2, 3.0);
  const HalfBoxGrid g(2, 0.45, 128);
  const ScalarFn f = [](const PointH& x) { return 1.0 + x[0]; };
  const DiscreteField u = solve_regularized(p, g, SolveConfig{}, f, kZero);
  const KEstimate k = extract_k(p, u, f, kZero, default_xi_family(g));
  EXPECT_LT(std::abs(k.mean), 0.02 * k.scale);
}

TEST(ExtractK, DegenerateFamilyRejected) {
  const HardyParams p(2, 0.0);
  const HalfBoxGrid g(2, 0.45, 16);
  TestFunction z = radial_bump(0.2);
  z.value_at_origin = 0.0;
  EXPECT_THROW(extract_k(p, kernel_field(p, g), kZero, {}, {z}), DegenerateTestFunction);
  EXPECT_THROW(extract_k(p, kernel_field(p, g), kZero, {}, {}), InvalidArgument);
}

TEST(PoissonExtension, ConstantDataReproducedAndIdentityHolds) {
  const HalfBoxGrid g(2, 0.45, 32);
  const DiscreteField one = poisson_extension(g, kOne);
  for (double v : one.values()) EXPECT_NEAR(v, 1.0, 1e-10);
  const HardyParams p(2, 3.0);
  const HalfBoxGrid fine(2, 0.45, 128);
  const ScalarFn bump = [](const PointH& x) { return cutoff_eta0(4.0 * x.norm() / 0.45); };
  const IdentityGReport r = verify_identity_g(p, poisson_extension(fine, bump), bump, radial_bump(0.225));
  EXPECT_LT(r.relative_defect, 0.02);
}

TEST(PoissonTruncation, BumpConvergesDivergentSelectorGrows) {
  const HardyParams p(2, 3.0);
  const double a = 0.45;
  const HalfBoxGrid g(2, a, 512);
  std::vector<double> radii;
  for (double r = a / 8; r >= 4 * g.h(); r *= 0.5) radii.push_back(r);
  const ScalarFn bump = [a](const PointH& x) { return cutoff_eta0(4.0 * x.norm() / a); };
  const TruncationSweep s = poisson_truncation_sweep(p, g, bump, radii);
  EXPECT_TRUE(s.monotone);
  for (std::size_t i = 1; i < s.increments.size(); ++i) EXPECT_LT(s.increments[i], s.increments[i - 1]);
  const double e = -1.0 - 0.5 * p.tau_plus();
  const ScalarFn div = [a, e](const PointH& x) {
    return x.last() == 0.0 && x.norm() > 0.0 ? std::pow(x.norm(), e) * cutoff_eta0(4.0 * x.norm() / a) : 0.0;
  };
  const TruncationSweep d = poisson_truncation_sweep(p, g, div, radii);
  EXPECT_TRUE(d.monotone);
  EXPECT_FALSE(d.cauchy);
  for (std::size_t i = 1; i < d.increments.size(); ++i) EXPECT_GT(d.increments[i], d.increments[i - 1]);
}

TEST(Blowup, DivergentSourceGrowsIntegrableSourceSettles) {
  const HardyParams p(2, 0.0);
  const double a = 0.45;
  const HalfBoxGrid g(2, a, 256);
  std::vector<double> radii;
  for (double r = a / 2; r >= 4 * g.h(); r *= 0.5) radii.push_back(r);
  const ScalarFn f = [&](const PointH& x) { return std::pow(x.norm(), -3.0 - p.tau_plus()); };
  const BlowupReport b = blowup_experiment(p, g, f, radii, PointH{0.0, a / 2});
  EXPECT_TRUE(b.strictly_increasing);
  EXPECT_GE(b.min_increment, 0.3 * b.max_increment);
  // Source mass grows by about the same amount per halving.
  for (std::size_t i = 2; i < b.source_mass.size(); ++i)
    EXPECT_NEAR(b.source_mass[i] - b.source_mass[i - 1], b.source_mass[i - 1] - b.source_mass[i - 2],
                0.05 * (b.source_mass[i] - b.source_mass[i - 1]));
  const BlowupReport c = blowup_experiment(p, g, kOne, radii, PointH{0.0, a / 2});
  EXPECT_LT(std::abs(c.increments.back()), 1e-4);
  EXPECT_THROW(blowup_experiment(p, g, kOne, radii, PointH{0.0, 0.0}), InvalidArgument);
}

TEST(LambdaOmega, NormalizedNearOriginAndPositive) {
  const HardyParams p(2, 0.0);
  const HalfBoxGrid g(2, 0.45, 128);
  const LambdaOmegaResult r = lambda_omega_construction(p, g, 0.36);
  EXPECT_TRUE(r.normalization_decreasing);
  EXPECT_GE(r.min_value, -1e-9);
  for (std::size_t i = 0; i < g.node_count(); ++i)
    if (g.kind(i) != NodeKind::Interior) EXPECT_EQ(r.field[i], 0.0);
  EXPECT_NEAR(extract_k(p, r.field, {}, {}, default_xi_family(g)).mean, 1.0, 0.03);
  EXPECT_THROW(lambda_omega_construction(p, g, 0.5), CollarUnresolved);
  EXPECT_THROW(lambda_omega_construction(p, HalfBoxGrid(2, 0.45, 16), 0.36), CollarUnresolved);
}
