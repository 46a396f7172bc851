#include "hardy/identity_lab.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <random>
#include <sstream>

#include "hardy/errors.hpp"
#include "hardy/extrapolation.hpp"

namespace hardy {

namespace {

Jet quadratic_jet(const PointH& x, double c0, const std::vector<double>& b, const std::vector<double>& q) {
  Jet j = Jet::constant(x.dim(), c0);
  for (int i = 0; i < x.dim(); ++i) {
    const std::size_t k = static_cast<std::size_t>(i);
    const double bi = k < b.size() ? b[k] : 0.0;
    const double qi = k < q.size() ? q[k] : 0.0;
    j.value += bi * x[i] + qi * x[i] * x[i];
    j.grad[k] = bi + 2.0 * qi * x[i];
    j.laplacian += 2.0 * qi;
  }
  return j;
}

double relative_or_absolute(double diff, double ref) { return ref != 0.0 ? std::abs(diff / ref) : std::abs(diff); }

}  // namespace

TestFunction radial_bump(double rho) {
  TestFunction f;
  f.jet = [rho](const PointH& x) { return eta0_jet(x, 0.5 * rho); };
  f.support_radius = rho;
  f.value_at_origin = 1.0;
  f.normal_derivative_at_origin = 0.0;
  f.name = "radial_bump";
  return f;
}

TestFunction bump_times_quadratic(double rho, double c0, std::vector<double> b, std::vector<double> q) {
  TestFunction f;
  const double bn = b.empty() ? 0.0 : b.back();
  f.jet = [rho, c0, b = std::move(b), q = std::move(q)](const PointH& x) {
    return eta0_jet(x, 0.5 * rho) * quadratic_jet(x, c0, b, q);
  };
  f.support_radius = rho;
  f.value_at_origin = c0;
  f.normal_derivative_at_origin = bn;
  f.name = "bump_times_quadratic";
  return f;
}

TestFunction shifted_bump(const PointH& center, double s) {
  TestFunction f;
  f.jet = [center, s](const PointH& x) {
    PointH y(x.dim());
    for (int i = 0; i < x.dim(); ++i) y[i] = x[i] - center[i];
    return eta0_jet(y, s);
  };
  f.support_radius = center.norm() + 2.0 * s;
  const Jet at0 = f.jet(PointH(center.dim()));
  f.value_at_origin = at0.value;
  f.normal_derivative_at_origin = at0.grad[static_cast<std::size_t>(center.dim() - 1)];
  f.name = "shifted_bump";
  return f;
}

TestFunction times_xn(const TestFunction& g) {
  TestFunction f;
  f.jet = [inner = g.jet](const PointH& x) { return Jet::coordinate(x, x.dim() - 1) * inner(x); };
  f.support_radius = g.support_radius;
  f.value_at_origin = 0.0;
  f.normal_derivative_at_origin = g.value_at_origin;
  f.name = "xn*" + g.name;
  return f;
}

TestFunction combination(std::vector<std::pair<double, TestFunction>> terms) {
  TestFunction f;
  f.support_radius = 0.0;
  for (const auto& [a, t] : terms) {
    f.support_radius = std::max(f.support_radius, t.support_radius);
    f.value_at_origin += a * t.value_at_origin;
    f.normal_derivative_at_origin += a * t.normal_derivative_at_origin;
  }
  f.jet = [terms = std::move(terms)](const PointH& x) {
    Jet j = Jet::constant(x.dim(), 0.0);
    for (const auto& [a, t] : terms) j = j + a * t.jet(x);
    return j;
  };
  f.name = "combination";
  return f;
}

double green_flux(const HardyParams& p, const PointH& x) {
  const Jet big = lambda_fund_jet(p, x);
  const Jet small = lambda_small_jet(p, x);
  const double r = x.norm();
  return (big.value * radial_derivative_times_r(x, small) - small.value * radial_derivative_times_r(x, big)) / r;
}

double green_flux_closed_form(const HardyParams& p, const PointH& x) {
  const double r = x.norm();
  const double base = x.last() * x.last() * std::pow(r, -p.dim() - 1.0);
  return p.is_critical() ? base : 2.0 * p.sqrt_disc() * base;
}

IdentityReport verify_fundamental_identity(const HardyParams& p, const TestFunction& zeta, int rule_levels,
                                           int resolution) {
  const double R = zeta.support_radius;
  if (!(R > 0.0 && R <= 1.0)) throw InvalidArgument("zeta must be supported in the closed unit ball");
  const QuadratureRule rule = build_rule(RuleKind::VolumeHalfBall, p.dim(), R, 0.0, resolution, rule_levels);
  const auto integrand = [&](const PointH& x) {
    const Jet z = zeta.jet(x);
    if (z.value == 0.0 && z.laplacian == 0.0 && dot_grad(z, z) == 0.0) return 0.0;
    return lambda_fund(p, x) * apply_L_beta_star(p, z, x) * lambda_small(p, x);
  };
  const std::vector<double> shells = shell_sums(rule, integrand);

  IdentityReport rep;
  rep.rhs = p.c_beta() * zeta.value_at_origin;
  std::vector<double> partial;
  double acc = 0.0;
  for (int j = 0; j < rule_levels; ++j) {
    acc += shells[static_cast<std::size_t>(j)];
    partial.push_back(acc);
    rep.refinement_trace.emplace_back(rule.shell_inner[static_cast<std::size_t>(j)], std::abs(acc - rep.rhs));
  }
  rep.sequence = partial;
  rep.direct_value = acc + shells.back();
  const Extrapolated ex = richardson_fitted(partial);
  rep.lhs = ex.limit;
  rep.observed_order = ex.order;
  rep.abs_residual = std::abs(rep.lhs - rep.rhs);
  rep.extrapolated_residual = relative_or_absolute(rep.lhs - rep.rhs, rep.rhs);

  const double r_in = rule.shell_inner[static_cast<std::size_t>(rule_levels - 1)];
  const QuadratureRule hemi = build_rule(RuleKind::SurfaceHemisphere, p.dim(), r_in, 0.0, resolution, 1);
  rep.surface_value = integrate(hemi, [&](const PointH& x) {
    const Jet z = zeta.jet(x);
    return z.value * green_flux(p, x) +
           lambda_fund(p, x) * lambda_small(p, x) * radial_derivative_times_r(x, z) / x.norm();
  });
  return rep;
}

double c_beta_surface(const HardyParams& p, int resolution) {
  const QuadratureRule hemi = build_rule(RuleKind::SurfaceHemisphere, p.dim(), 1.0, 0.0, resolution, 1);
  const double factor = p.is_critical() ? 2.0 : 2.0 * p.sqrt_disc();
  return factor * integrate(hemi, [](const PointH& x) { return x.last() * x.last(); });
}

double b_N_constant(int N) {
  if (N < 2) throw InvalidArgument("b_N needs N >= 2");
  // rho = tan(theta) maps int_0^inf rho^(N-2) (1+rho^2)^(-N/2) to int_0^(pi/2) sin^(N-2).
  const auto f = [N](double th) { return std::pow(std::sin(th), N - 2); };
  const double I = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 0.5 * kPi, 0, 1e-15);
  return sphere_area(N - 1) * I;
}

double b_N_closed_form(int N) {
  if (N < 2) throw InvalidArgument("b_N needs N >= 2");
  return 0.5 * sphere_area(N - 1) * std::beta(0.5 * (N - 1), 0.5);
}

double trace_constant(const HardyParams& p) {
  const double a = 0.5 * (p.dim() - 1 + p.tau_plus());
  if (!(a > 0.0)) throw RecipeDivergent("trace pairing weight is not integrable at this beta");
  return 0.5 * sphere_area(p.dim() - 1) * std::beta(a, 0.5);
}

double trace_pairing(const HardyParams& p, const ScalarFn& zeta_boundary, double support_radius, double t,
                     int resolution, int levels) {
  const QuadratureRule disk =
      build_rule(RuleKind::SurfaceFlatDisk, p.dim(), support_radius, 0.0, resolution, levels);
  return integrate_omega_beta(p, disk, [&](const PointH& x) {
    const double z = zeta_boundary(x);
    if (z == 0.0) return 0.0;
    PointH y = x;
    y[p.dim() - 1] = t;
    return lambda_fund(p, y) * z;
  });
}

IdentityReport verify_trace(const HardyParams& p, const ScalarFn& zeta_boundary, double support_radius,
                            std::vector<double> t_sequence) {
  if (p.is_critical()) throw InvalidArgument("the trace pairing diverges logarithmically on the critical branch");
  if (t_sequence.empty())
    for (int j = 3; j <= 12; ++j) t_sequence.push_back(std::ldexp(1.0, -j));
  for (std::size_t i = 1; i < t_sequence.size(); ++i)
    if (!(t_sequence[i] < t_sequence[i - 1])) throw InvalidArgument("t_sequence must decrease strictly");
  IdentityReport rep;
  rep.rhs = trace_constant(p) * zeta_boundary(PointH(p.dim()));
  std::vector<double> vals;
  for (double t : t_sequence) {
    vals.push_back(trace_pairing(p, zeta_boundary, support_radius, t));
    rep.refinement_trace.emplace_back(t, std::abs(vals.back() - rep.rhs));
  }
  rep.sequence = vals;
  const Extrapolated ex = richardson_fitted(vals);
  rep.lhs = ex.limit;
  rep.observed_order = ex.order;
  rep.direct_value = vals.back();
  rep.abs_residual = std::abs(rep.lhs - rep.rhs);
  rep.extrapolated_residual = relative_or_absolute(rep.lhs - rep.rhs, rep.rhs);
  return rep;
}

std::vector<TestFunction> random_hardy_family(int N, WeightCenter center, int count, unsigned long long seed,
                                              double R) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  std::vector<TestFunction> out;
  for (int f = 0; f < count; ++f) {
    const int terms = 1 + static_cast<int>(unit(rng) * 4.0);
    std::vector<std::pair<double, TestFunction>> parts;
    for (int k = 0; k < terms; ++k) {
      PointH c(N);
      double n2 = 0.0;
      do {
        n2 = 0.0;
        for (int d = 0; d < N; ++d) {
          c[d] = 0.7 * R * sym(rng);
          n2 += c[d] * c[d];
        }
      } while (n2 >= 0.49 * R * R);
      if (center == WeightCenter::Boundary) c[N - 1] = std::abs(c[N - 1]);
      // The bump around c has radius 2 s and must stay inside B_R.
      const double room = R - std::sqrt(n2);
      const double s = 0.5 * room * (0.4 + 0.55 * unit(rng));
      parts.emplace_back(sym(rng), shifted_bump(c, s));
    }
    TestFunction u = combination(std::move(parts));
    out.push_back(center == WeightCenter::Boundary ? times_xn(u) : u);
  }
  return out;
}

double hardy_constant(int N, WeightCenter center) {
  return center == WeightCenter::Interior ? 0.25 * (N - 2) * (N - 2) : 0.25 * N * N;
}

double hardy_rayleigh(int N, const TestFunction& u, const QuadratureRule& rule, WeightCenter center) {
  if (rule.kind != RuleKind::VolumeHalfBall || rule.dim != N)
    throw InvalidArgument("hardy_rayleigh needs a half-ball rule of matching dimension");
  const double R = rule.outer;
  // Admissibility: u vanishes on the sphere |x| = R and, in the boundary case, on x_N = 0.
  const double tol = 1e-10;
  const int m = 64;
  const QuadratureRule probe_sphere = build_rule(RuleKind::SurfaceHemisphere, N, R, 0.0, m, 1, 1);
  for (std::size_t i = 0; i < probe_sphere.size(); ++i) {
    PointH x = probe_sphere.point(i);
    for (int s = 0; s < 2; ++s) {
      if (std::abs(u(x)) > tol) {
        std::ostringstream os;
        os << "test function does not vanish on |x| = " << R << " (value " << u(x) << ")";
        throw InadmissibleTestFunction(os.str());
      }
      x[N - 1] = -x[N - 1];
    }
  }
  if (center == WeightCenter::Boundary) {
    const QuadratureRule probe_flat = build_rule(RuleKind::SurfaceFlatDisk, N, R, 0.0, m, 4, 1);
    for (std::size_t i = 0; i < probe_flat.size(); ++i)
      if (std::abs(u(probe_flat.point(i))) > tol)
        throw InadmissibleTestFunction("test function does not vanish on the flat boundary");
  }
  std::vector<double> num, den;
  num.reserve(2 * rule.size());
  den.reserve(2 * rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    PointH x = rule.point(i);
    const int copies = center == WeightCenter::Interior ? 2 : 1;
    for (int c = 0; c < copies; ++c) {
      const Jet j = u.jet(x);
      num.push_back(dot_grad(j, j) * rule.weights[i]);
      den.push_back(j.value * j.value / x.norm2() * rule.weights[i]);
      x[N - 1] = -x[N - 1];
    }
  }
  const double d = pairwise_sum(den);
  if (!(d > 0.0)) throw ZeroDenominator("int u^2/|x|^2 vanishes; u is identically zero on the rule");
  return pairwise_sum(num) / d;
}

}  // namespace hardy
