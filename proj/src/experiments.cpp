#include "hardy/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hardy/errors.hpp"
#include "hardy/extrapolation.hpp"

namespace hardy {

namespace {

double max_abs(std::initializer_list<double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

void require_inside(const HalfBoxGrid& grid, const TestFunction& zeta) {
  if (!(zeta.support_radius < grid.halfwidth()))
    throw InadmissibleTestFunction("test function support must stay inside the box (radius < a)");
}

}  // namespace

double grid_integral(const HalfBoxGrid& grid, const std::function<double(std::size_t, const PointH&)>& f) {
  const std::size_t o = grid.origin();
  std::vector<double> terms;
  terms.reserve(grid.node_count());
  for (std::size_t i = 0; i < grid.node_count(); ++i) {
    if (i == o) continue;
    const MultiIndex j = grid.multi_index(i);
    const double v = f(i, grid.coord(j));
    if (v == 0.0) continue;
    if (!std::isfinite(v)) throw NonFiniteIntegrand("grid integrand is not finite at node " + std::to_string(i));
    terms.push_back(v * grid.trapezoid_weight(j));
  }
  return pairwise_sum(terms);
}

double flat_boundary_term(const HardyParams& p, const ScalarFn& g, const TestFunction& zeta) {
  if (!g) return 0.0;
  const QuadratureRule disk = build_rule(RuleKind::SurfaceFlatDisk, p.dim(), zeta.support_radius, 0.0, 64, 24);
  return -integrate_omega_beta(p, disk, [&](const PointH& x) {
    const double z = zeta(x);
    return z == 0.0 ? 0.0 : g(x) * z;
  });
}

EpsilonIdentityReport residual_epsilon_identity(const HardyParams& p, const DiscreteField& field, const ScalarFn& f,
                                        const ScalarFn& g, const TestFunction& zeta, double eps) {
  const HalfBoxGrid& grid = field.grid();
  require_inside(grid, zeta);
  EpsilonIdentityReport r;
  r.volume_term = grid_integral(grid, [&](std::size_t i, const PointH& x) {
    const Jet z = zeta.jet(x);
    if (z.value == 0.0 && dot_grad(z, z) == 0.0 && z.laplacian == 0.0) return 0.0;
    return field[i] * lambda_times_L_beta_star(p, z, x);
  });
  if (f) r.source_term = grid_integral(grid, [&](std::size_t, const PointH& x) {
    if (x.last() == 0.0) return 0.0;
    const double z = zeta(x);
    return z == 0.0 ? 0.0 : f(x) * z * lambda_small(p, x);
  });
  if (p.beta() != 0.0 && eps != 0.0) {
    r.correction_term = p.beta() * eps * grid_integral(grid, [&](std::size_t i, const PointH& x) {
      if (x.last() == 0.0) return 0.0;
      const double z = zeta(x);
      const double r2 = x.norm2();
      return z == 0.0 ? 0.0 : field[i] * z * lambda_small(p, x) / ((r2 + eps) * r2);
    });
  }
  r.boundary_term = flat_boundary_term(p, g, zeta);
  r.defect = r.volume_term - r.source_term + r.boundary_term - r.correction_term;
  const double ref = max_abs({r.volume_term, r.source_term, r.correction_term, r.boundary_term});
  r.relative_defect = ref > 0.0 ? std::abs(r.defect) / ref : 0.0;
  return r;
}

CorrectionRateStudy correction_rate_study(const HardyParams& p, const HalfBoxGrid& grid, const ScalarFn& f,
                                          const ScalarFn& g, const TestFunction& zeta,
                                          const std::vector<double>& eps, int tail) {
  CorrectionRateStudy s;
  s.epsilons = eps;
  s.bound_rate = 0.5 * (p.dim() - 2 + p.tau_plus());
  for (double e : eps) {
    SolveConfig cfg;
    cfg.epsilon = e;
    cfg.estimate_min_eigenvalue = false;
    const DiscreteField u = RegularizedOperator(p, grid, cfg).solve(f, g);
    s.reports.push_back(residual_epsilon_identity(p, u, f, g, zeta, e));
  }
  const std::size_t k = std::min(eps.size(), static_cast<std::size_t>(std::max(2, tail)));
  std::vector<double> ee, cc;
  for (std::size_t i = eps.size() - k; i < eps.size(); ++i) {
    ee.push_back(eps[i]);
    cc.push_back(std::abs(s.reports[i].correction_term));
  }
  bool positive = true;
  for (double c : cc) positive = positive && c > 0.0;
  s.observed_rate = positive ? fit_loglog_slope(ee, cc) : std::numeric_limits<double>::quiet_NaN();
  return s;
}

std::vector<TestFunction> default_xi_family(const HalfBoxGrid& grid) {
  std::vector<TestFunction> out;
  for (double c : {0.2, 0.3, 0.4, 0.5, 0.6}) out.push_back(radial_bump(c * grid.halfwidth()));
  return out;
}

KEstimate extract_k(const HardyParams& p, const DiscreteField& field, const ScalarFn& f, const ScalarFn& g,
                    const std::vector<TestFunction>& family) {
  if (family.empty()) throw InvalidArgument("extract_k needs at least one test function");
  KEstimate k;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const TestFunction& zeta : family) {
    if (zeta.value_at_origin == 0.0)
      throw DegenerateTestFunction("d xi / d x_N vanishes at the origin for " + zeta.name);
    const EpsilonIdentityReport r = residual_epsilon_identity(p, field, f, g, zeta, 0.0);
    const double denom = p.c_beta() * zeta.value_at_origin;
    const double v = (r.volume_term - r.source_term + r.boundary_term) / denom;
    k.values.push_back(v);
    k.scale = std::max(k.scale, max_abs({r.volume_term, r.source_term, r.boundary_term}) / std::abs(denom));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  double s = 0.0;
  for (double v : k.values) s += v;
  k.mean = s / static_cast<double>(k.values.size());
  k.spread = hi - lo;
  return k;
}

DiscreteField poisson_extension(const HalfBoxGrid& grid, const ScalarFn& g) {
  SolveConfig cfg;
  cfg.estimate_min_eigenvalue = false;
  return RegularizedOperator(make_params(grid.dim(), 0.0), grid, cfg).solve([](const PointH&) { return 0.0; }, g);
}

IdentityGReport verify_identity_g(const HardyParams& p, const DiscreteField& ext, const ScalarFn& g,
                                  const TestFunction& zeta) {
  const HalfBoxGrid& grid = ext.grid();
  require_inside(grid, zeta);
  IdentityGReport r;
  r.volume_term = grid_integral(grid, [&](std::size_t i, const PointH& x) {
    const Jet z = zeta.jet(x);
    if (z.value == 0.0 && dot_grad(z, z) == 0.0 && z.laplacian == 0.0) return 0.0;
    return ext[i] * lambda_times_L_beta_star(p, z, x);
  });
  r.potential_term = p.beta() * grid_integral(grid, [&](std::size_t i, const PointH& x) {
    if (x.last() == 0.0) return 0.0;
    const double z = zeta(x);
    return z == 0.0 ? 0.0 : ext[i] * z * lambda_small(p, x) / x.norm2();
  });
  r.boundary_term = flat_boundary_term(p, g, zeta);
  r.defect = r.volume_term - r.potential_term + r.boundary_term;
  const double ref = max_abs({r.volume_term, r.potential_term, r.boundary_term});
  r.relative_defect = ref > 0.0 ? std::abs(r.defect) / ref : 0.0;
  return r;
}

TruncationSweep poisson_truncation_sweep(const HardyParams& p, const HalfBoxGrid& grid, const ScalarFn& g,
                                         const std::vector<double>& radii) {
  TruncationSweep s;
  s.radii = radii;
  SolveConfig cfg;
  cfg.estimate_min_eigenvalue = false;
  const RegularizedOperator lap(make_params(grid.dim(), 0.0), grid, cfg);
  const std::vector<double> zero(grid.interior_count(), 0.0);
  for (double r : radii) {
    const DiscreteField gb = DiscreteField::sample(grid, [&](const PointH& x) {
      const double c = 1.0 - cutoff_eta0(x.norm() / r);
      return c == 0.0 ? 0.0 : g(x) * c;
    });
    const DiscreteField P = lap.solve(zero, gb);
    s.values.push_back(grid_integral(grid, [&](std::size_t i, const PointH& x) {
      return x.last() == 0.0 ? 0.0 : P[i] * lambda_small(p, x) / x.norm2();
    }));
  }
  s.monotone = true;
  for (std::size_t i = 1; i < s.values.size(); ++i) {
    s.increments.push_back(s.values[i] - s.values[i - 1]);
    s.monotone = s.monotone && s.increments.back() > 0.0;
  }
  s.tail_estimate = std::numeric_limits<double>::infinity();
  s.cauchy = false;
  if (s.increments.size() >= 2) {
    const double a = s.increments[s.increments.size() - 2], b = s.increments.back();
    const double rho = a != 0.0 ? b / a : 0.0;
    if (rho >= 0.0 && rho < 0.75) {
      s.tail_estimate = std::abs(b) * rho / (1.0 - rho);
      s.cauchy = s.tail_estimate < 0.05 * std::abs(s.values.back());
    }
  }
  return s;
}

BlowupReport blowup_experiment(const HardyParams& p, const HalfBoxGrid& grid, const ScalarFn& f,
                               const std::vector<double>& radii, const PointH& probe) {
  BlowupReport b;
  b.radii = radii;
  const std::size_t node = grid.nearest_node(probe);
  if (grid.kind(node) != NodeKind::Interior) throw InvalidArgument("probe must sit at an interior node");
  b.probe = grid.coord(node);
  SolveConfig cfg;
  cfg.estimate_min_eigenvalue = false;
  const RegularizedOperator op(p, grid, cfg);
  const DiscreteField zero_bc(grid, 0.0);
  const QuadratureRule ball = build_rule(RuleKind::VolumeHalfBall, p.dim(), grid.halfwidth(), 0.0, 32, 30);
  for (double r : radii) {
    const ScalarFn fr = [&](const PointH& x) {
      const double c = 1.0 - cutoff_eta0(x.norm() / r);
      return c == 0.0 ? 0.0 : f(x) * c;
    };
    const DiscreteField u = op.solve(op.sample_interior(fr), zero_bc);
    b.probe_values.push_back(u[node]);
    b.source_mass.push_back(integrate_gamma(p, ball, fr));
  }
  b.strictly_increasing = true;
  b.min_increment = std::numeric_limits<double>::infinity();
  b.max_increment = -b.min_increment;
  for (std::size_t i = 1; i < b.probe_values.size(); ++i) {
    const double d = b.probe_values[i] - b.probe_values[i - 1];
    b.increments.push_back(d);
    b.strictly_increasing = b.strictly_increasing && d > 0.0;
    b.min_increment = std::min(b.min_increment, d);
    b.max_increment = std::max(b.max_increment, d);
  }
  return b;
}

LambdaOmegaResult lambda_omega_construction(const HardyParams& p, const HalfBoxGrid& grid, double r0) {
  const double h = grid.h();
  if (!(r0 < grid.halfwidth())) throw CollarUnresolved("r0 must be smaller than the half-width");
  if (0.5 * r0 < 8.0 * h) throw CollarUnresolved("the cutoff collar spans fewer than 8 cells; refine the grid");
  const double scale = 0.5 * r0;  // eta_{r0}(t) = eta0(t / scale)
  const auto cut_kernel = [&](const PointH& x) { return lambda_fund_jet(p, x) * eta0_jet(x, scale); };
  SolveConfig cfg;
  cfg.estimate_min_eigenvalue = false;
  const RegularizedOperator op(p, grid, cfg);
  const std::vector<double> src = op.sample_interior([&](const PointH& x) {
    const double r = x.norm();
    if (r <= scale || r >= r0) return 0.0;
    return apply_L_beta(p, cut_kernel(x), x);
  });
  LambdaOmegaResult res;
  res.w2 = op.solve(src, DiscreteField(grid, 0.0));
  res.field = DiscreteField(grid, 0.0);
  res.min_value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.node_count(); ++i) {
    if (grid.kind(i) == NodeKind::Interior) {
      const PointH x = grid.coord(i);
      res.field[i] = lambda_fund(p, x) * cutoff_eta0(x.norm() / scale) - res.w2[i];
    }
    res.min_value = std::min(res.min_value, res.field[i]);
  }
  for (double rho = scale; rho >= 4.0 * h; rho *= 0.5) {
    double dev = 0.0;
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
      if (grid.kind(i) != NodeKind::Interior) continue;
      const PointH x = grid.coord(i);
      const double r = x.norm();
      if (r <= 0.5 * rho || r > rho) continue;
      dev = std::max(dev, std::abs(res.field[i] / lambda_fund(p, x) - 1.0));
    }
    res.shell_radii.push_back(rho);
    res.shell_deviation.push_back(dev);
  }
  res.normalization_decreasing = res.shell_deviation.size() >= 2;
  for (std::size_t i = 1; i < res.shell_deviation.size(); ++i)
    res.normalization_decreasing = res.normalization_decreasing && res.shell_deviation[i] < res.shell_deviation[i - 1];
  return res;
}

Jet manufactured_jet(const PointH& x, double a) {
  const int N = x.dim();
  const double kt = kPi / (2.0 * a), kn = kPi / a;
  std::array<double, kMaxDim> s{}, c{}, k{};
  for (int i = 0; i < N; ++i) {
    k[i] = i == N - 1 ? kn : kt;
    const double arg = i == N - 1 ? kn * x[i] : kt * (x[i] + a);
    s[i] = std::sin(arg);
    c[i] = std::cos(arg);
  }
  Jet j = Jet::constant(N, 1.0);
  double ksum = 0.0;
  for (int i = 0; i < N; ++i) {
    j.value *= s[i];
    ksum += k[i] * k[i];
  }
  for (int i = 0; i < N; ++i) {
    double g = k[i] * c[i];
    for (int m = 0; m < N; ++m)
      if (m != i) g *= s[m];
    j.grad[i] = g;
  }
  j.laplacian = -ksum * j.value;
  return j;
}

ConvergenceStudy manufactured_convergence(const HardyParams& p, double a, const std::vector<int>& ns) {
  ConvergenceStudy s;
  for (int n : ns) {
    const HalfBoxGrid grid(p.dim(), a, n);
    SolveConfig cfg;
    cfg.estimate_min_eigenvalue = false;
    const DiscreteField u = RegularizedOperator(p, grid, cfg)
                                .solve([&](const PointH& x) { return apply_L_beta(p, manufactured_jet(x, a), x); },
                                       [](const PointH&) { return 0.0; });
    double err = 0.0;
    for (std::size_t i = 0; i < grid.node_count(); ++i)
      err = std::max(err, std::abs(u[i] - manufactured_jet(grid.coord(i), a).value));
    s.n.push_back(n);
    s.h.push_back(grid.h());
    s.errors.push_back(err);
  }
  s.order = fit_loglog_slope(s.h, s.errors);
  return s;
}

ConvergenceStudy dual_conjugation_convergence(const HardyParams& p, double a, const std::vector<int>& ns) {
  ConvergenceStudy s;
  const ScalarFn rhs = [&](const PointH& x) { return apply_L_beta_star(p, manufactured_jet(x, a), x); };
  for (int n : ns) {
    const HalfBoxGrid grid(p.dim(), a, n);
    // |L*(u*)| <= C / x_N with C sampled on the grid, doubled for safety.
    double C = 0.0;
    for (std::size_t i = 0; i < grid.node_count(); ++i)
      if (grid.kind(i) == NodeKind::Interior) {
        const PointH x = grid.coord(i);
        C = std::max(C, std::abs(rhs(x)) * x.last());
      }
    const DualResult d = dual_solve(p, grid, DualRhs::Custom, rhs, 2.0 * C);
    double err = 0.0;
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
      const PointH x = grid.coord(i);
      err = std::max(err, std::abs(d.w[i] - x.last() * manufactured_jet(x, a).value));
    }
    s.n.push_back(n);
    s.h.push_back(grid.h());
    s.errors.push_back(err);
  }
  s.order = fit_loglog_slope(s.h, s.errors);
  return s;
}

}  // namespace hardy
