#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "hardy/analytic.hpp"
#include "hardy/errors.hpp"
#include "hardy/grid.hpp"

using namespace hardy;

TEST(HalfBoxGrid, NodeClassesPartitionTheGrid) {
  for (int N : {2, 3})
    for (int n : {4, 8, 14}) {
      const HalfBoxGrid g(N, 0.45, n);
      std::size_t interior = 0, flat = 0, lateral = 0;
      for (std::size_t i = 0; i < g.node_count(); ++i) {
        switch (g.kind(i)) {
          case NodeKind::Interior: ++interior; break;
          case NodeKind::Flat: ++flat; break;
          case NodeKind::Lateral: ++lateral; break;
        }
      }
      const std::size_t tang = static_cast<std::size_t>(std::pow(n + 1, N - 1));
      EXPECT_EQ(g.node_count(), tang * static_cast<std::size_t>(n / 2 + 1));
      EXPECT_EQ(interior, g.interior_count());
      EXPECT_EQ(interior, static_cast<std::size_t>(std::pow(n - 1, N - 1)) * static_cast<std::size_t>(n / 2 - 1));
      EXPECT_EQ(flat, tang);
      EXPECT_EQ(interior + flat + lateral, g.node_count());
    }
}

TEST(HalfBoxGrid, IndexRoundTripsAndUnknownNumbering) {
  const HalfBoxGrid g(3, 0.4, 8);
  std::size_t next = 0;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    const MultiIndex j = g.multi_index(i);
    ASSERT_EQ(g.node_index(j), i);
    const long u = g.unknown_index(j);
    if (g.kind(i) == NodeKind::Interior) {
      ASSERT_EQ(u, static_cast<long>(next));
      ASSERT_EQ(g.unknown_multi_index(next), j);
      ++next;
    } else {
      ASSERT_EQ(u, -1);
    }
  }
  EXPECT_EQ(next, g.interior_count());
}

TEST(HalfBoxGrid, OriginAndCoordinates) {
  const HalfBoxGrid g(2, 0.45, 16);
  EXPECT_DOUBLE_EQ(g.h(), 0.9 / 16);
  const PointH o = g.coord(g.origin());
  EXPECT_EQ(o.norm(), 0.0);
  EXPECT_EQ(g.kind(g.origin()), NodeKind::Flat);
  const PointH x{0.1, 0.2};
  const PointH y = g.coord(g.nearest_node(x));
  EXPECT_LE(std::abs(y[0] - x[0]), 0.5 * g.h() + 1e-15);
  EXPECT_LE(std::abs(y[1] - x[1]), 0.5 * g.h() + 1e-15);
  const PointH corner = g.coord(g.node_count() - 1);
  EXPECT_NEAR(corner[0], 0.45, 1e-15);
  EXPECT_NEAR(corner[1], 0.45, 1e-15);
}

TEST(HalfBoxGrid, TrapezoidWeightsIntegrateLinearFunctionsExactly) {
  for (int N : {2, 3}) {
    const double a = 0.4;
    const HalfBoxGrid g(N, a, 10);
    double vol = 0.0, mom = 0.0;
    for (std::size_t i = 0; i < g.node_count(); ++i) {
      const double w = g.trapezoid_weight(g.multi_index(i));
      vol += w;
      mom += w * (g.coord(i).last() + 2.0 * g.coord(i)[0]);
    }
    const double v = std::pow(2 * a, N - 1) * a;
    EXPECT_NEAR(vol, v, 1e-14);
    EXPECT_NEAR(mom, v * a / 2, 1e-14);
  }
}

TEST(HalfBoxGrid, RejectsBadArguments) {
  EXPECT_THROW(HalfBoxGrid(4, 0.3, 8), InvalidArgument);
  EXPECT_THROW(HalfBoxGrid(2, 0.8, 8), InvalidArgument);
  EXPECT_THROW(HalfBoxGrid(2, 0.4, 7), InvalidArgument);
  EXPECT_THROW(HalfBoxGrid(2, 0.4, 2), InvalidArgument);
}

TEST(DiscreteField, SampleTracesAndOriginFallback) {
  const HalfBoxGrid g(2, 0.45, 8);
  const HardyParams p(2, 0.0);
  const DiscreteField f = DiscreteField::sample(g, [&](const PointH& x) { return lambda_fund(p, x); });
  EXPECT_EQ(f[g.origin()], 0.0);
  EXPECT_TRUE(f.all_finite());
  EXPECT_EQ(f.flat_trace().size(), 9u);
  for (double v : f.flat_trace()) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(f.flat_trace().size() + f.lateral_trace().size() + g.interior_count(), g.node_count());
  EXPECT_THROW(DiscreteField::sample(g, [](const PointH& x) -> double {
                 if (x[0] > 0.3) throw EvalAtSingularity("boom");
                 return 0.0;
               }),
               EvalAtSingularity);
  EXPECT_THROW(DiscreteField(g, std::vector<double>(3, 0.0)), InvalidArgument);
}

TEST(FieldIO, RoundTripIsBitExact) {
  const HalfBoxGrid g(3, 0.3, 6);
  DiscreteField f(g);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::sin(1.0 + i) / 3.0;
  std::stringstream ss;
  write_field(ss, f, 2.5, 1e-3);
  double beta = 0, eps = 0;
  const DiscreteField back = read_field(ss, &beta, &eps);
  EXPECT_EQ(beta, 2.5);
  EXPECT_EQ(eps, 1e-3);
  EXPECT_EQ(back.grid().dim(), 3);
  EXPECT_EQ(back.grid().n(), 6);
  EXPECT_EQ(back.values(), f.values());
}

TEST(FieldIO, MalformedInput) {
  std::stringstream bad_key("M 2\n");
  EXPECT_THROW(read_field(bad_key), FormatError);
  const HalfBoxGrid g(2, 0.3, 4);
  std::stringstream ss;
  write_field(ss, DiscreteField(g, 1.0), 0.0, 0.0);
  std::string text = ss.str();
  text.resize(text.size() - 6);
  std::stringstream truncated(text);
  EXPECT_THROW(read_field(truncated), FormatError);
}
