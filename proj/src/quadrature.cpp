#include "hardy/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <string>

#include "hardy/errors.hpp"

namespace hardy {

namespace {

struct Gauss1D {
  std::vector<double> nodes;    // on [0, 1]
  std::vector<double> weights;  // sum to 1
};

Gauss1D gauss_unit(int n) {
  switch (n) {
    case 1: return {{0.5}, {1.0}};
    case 2: {
      const double d = 0.5 / std::sqrt(3.0);
      return {{0.5 - d, 0.5 + d}, {0.5, 0.5}};
    }
    case 3: {
      const double d = 0.5 * std::sqrt(0.6);
      return {{0.5 - d, 0.5, 0.5 + d}, {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0}};
    }
    default: throw InvalidArgument("points_per_axis must be 1, 2 or 3");
  }
}

// Nodes and weights of the chosen rule on m equal cells of [lo, hi].
void composite(double lo, double hi, int m, const Gauss1D& g, std::vector<double>& x, std::vector<double>& w) {
  x.clear();
  w.clear();
  const double h = (hi - lo) / m;
  for (int c = 0; c < m; ++c) {
    for (std::size_t k = 0; k < g.nodes.size(); ++k) {
      x.push_back(lo + (c + g.nodes[k]) * h);
      w.push_back(g.weights[k] * h);
    }
  }
}

struct Interval {
  double lo;
  double hi;
  int shell;
};

// Radial intervals graded by 1/2 from outer to the core (or to inner_cut).
std::vector<Interval> radial_shells(double outer, double inner_cut, int levels, double q,
                                    std::vector<double>& shell_inner) {
  std::vector<Interval> out;
  shell_inner.clear();
  if (inner_cut > 0.0) {
    double hi = outer;
    int k = 0;
    while (hi * q > inner_cut) {
      out.push_back({hi * q, hi, k++});
      shell_inner.push_back(hi * q);
      hi *= q;
    }
    out.push_back({inner_cut, hi, k});
    shell_inner.push_back(inner_cut);
    return out;
  }
  double hi = outer;
  for (int k = 0; k < levels; ++k) {
    out.push_back({hi * q, hi, k});
    shell_inner.push_back(hi * q);
    hi *= q;
  }
  out.push_back({0.0, hi, levels});
  shell_inner.push_back(0.0);
  return out;
}

void push_node(QuadratureRule& rule, std::initializer_list<double> x, double w, int shell) {
  for (double c : x) rule.coords.push_back(c);
  rule.weights.push_back(w);
  rule.shell.push_back(shell);
}

void build_halfball(QuadratureRule& rule, const Gauss1D& g, int radial_cells) {
  const int res = rule.base_resolution;
  std::vector<double> rx, rw, ax, aw, bx, bw;
  const auto shells = radial_shells(rule.outer, rule.inner_cut, rule.levels, rule.grading, rule.shell_inner);
  if (rule.dim == 2) {
    composite(0.0, kPi, res, g, ax, aw);
    for (const Interval& iv : shells) {
      composite(iv.lo, iv.hi, radial_cells, g, rx, rw);
      for (std::size_t i = 0; i < rx.size(); ++i)
        for (std::size_t j = 0; j < ax.size(); ++j)
          push_node(rule, {rx[i] * std::cos(ax[j]), rx[i] * std::sin(ax[j])}, rw[i] * aw[j] * rx[i], iv.shell);
    }
    return;
  }
  composite(0.0, 1.0, std::max(2, res / 2), g, ax, aw);  // z = cos(polar angle)
  composite(0.0, 2.0 * kPi, res, g, bx, bw);
  for (const Interval& iv : shells) {
    composite(iv.lo, iv.hi, radial_cells, g, rx, rw);
    for (std::size_t i = 0; i < rx.size(); ++i)
      for (std::size_t j = 0; j < ax.size(); ++j) {
        const double z = ax[j];
        const double s = std::sqrt(1.0 - z * z);
        for (std::size_t k = 0; k < bx.size(); ++k)
          push_node(rule, {rx[i] * s * std::cos(bx[k]), rx[i] * s * std::sin(bx[k]), rx[i] * z},
                    rw[i] * aw[j] * bw[k] * rx[i] * rx[i], iv.shell);
      }
  }
}

void build_flat_disk(QuadratureRule& rule, const Gauss1D& g, int radial_cells) {
  std::vector<double> rx, rw, ax, aw;
  const auto shells = radial_shells(rule.outer, rule.inner_cut, rule.levels, rule.grading, rule.shell_inner);
  if (rule.dim == 2) {
    for (const Interval& iv : shells) {
      composite(iv.lo, iv.hi, radial_cells, g, rx, rw);
      for (std::size_t i = 0; i < rx.size(); ++i) {
        push_node(rule, {-rx[i], 0.0}, rw[i], iv.shell);
        push_node(rule, {rx[i], 0.0}, rw[i], iv.shell);
      }
    }
    return;
  }
  composite(0.0, 2.0 * kPi, rule.base_resolution, g, ax, aw);
  for (const Interval& iv : shells) {
    composite(iv.lo, iv.hi, radial_cells, g, rx, rw);
    for (std::size_t i = 0; i < rx.size(); ++i)
      for (std::size_t j = 0; j < ax.size(); ++j)
        push_node(rule, {rx[i] * std::cos(ax[j]), rx[i] * std::sin(ax[j]), 0.0}, rw[i] * aw[j] * rx[i], iv.shell);
  }
}

void build_hemisphere(QuadratureRule& rule, const Gauss1D& g) {
  const double R = rule.outer;
  const int res = rule.base_resolution;
  std::vector<double> ax, aw, bx, bw;
  rule.shell_inner = {R};
  if (rule.dim == 2) {
    composite(0.0, kPi, res, g, ax, aw);
    for (std::size_t j = 0; j < ax.size(); ++j)
      push_node(rule, {R * std::cos(ax[j]), R * std::sin(ax[j])}, R * aw[j], 0);
    return;
  }
  composite(0.0, 1.0, std::max(2, res / 2), g, ax, aw);
  composite(0.0, 2.0 * kPi, res, g, bx, bw);
  for (std::size_t j = 0; j < ax.size(); ++j) {
    const double z = ax[j];
    const double s = std::sqrt(1.0 - z * z);
    for (std::size_t k = 0; k < bx.size(); ++k)
      push_node(rule, {R * s * std::cos(bx[k]), R * s * std::sin(bx[k]), R * z}, R * R * aw[j] * bw[k], 0);
  }
}

// Half-box (-a,a)^(N-1) x (0,a) split into L-infinity annuli of ratio 1/2.
void build_halfbox(QuadratureRule& rule, const Gauss1D& g) {
  const int N = rule.dim;
  const int m = std::max(2, rule.base_resolution / 4);
  rule.shell_inner.clear();
  std::vector<std::vector<double>> px(static_cast<std::size_t>(N)), pw(static_cast<std::size_t>(N));
  std::array<double, kMaxDim> lo{}, hi{};
  auto emit_block = [&](int shell) {
    for (int d = 0; d < N; ++d) composite(lo[d], hi[d], m, g, px[d], pw[d]);
    std::array<std::size_t, kMaxDim> idx{};
    const std::size_t per = px[0].size();
    while (true) {
      double w = 1.0;
      for (int d = 0; d < N; ++d) {
        rule.coords.push_back(px[d][idx[d]]);
        w *= pw[d][idx[d]];
      }
      rule.weights.push_back(w);
      rule.shell.push_back(shell);
      int d = N - 1;
      while (d >= 0 && ++idx[d] == per) idx[d--] = 0;
      if (d < 0) break;
    }
  };
  double s = rule.outer;
  for (int k = 0; k <= rule.levels; ++k) {
    if (k == rule.levels) {
      for (int d = 0; d < N - 1; ++d) {
        lo[d] = -s;
        hi[d] = s;
      }
      lo[N - 1] = 0.0;
      hi[N - 1] = s;
      emit_block(k);
      rule.shell_inner.push_back(0.0);
      break;
    }
    // Tangential axes split at -s/2, 0, s/2; normal axis at s/2.
    const std::array<double, 5> tb{-s, -0.5 * s, 0.0, 0.5 * s, s};
    const std::array<double, 3> nb{0.0, 0.5 * s, s};
    std::array<int, kMaxDim> c{};
    while (true) {
      bool inner = c[N - 1] == 0;
      for (int d = 0; d < N - 1; ++d) inner = inner && (c[d] == 1 || c[d] == 2);
      if (!inner) {
        for (int d = 0; d < N - 1; ++d) {
          lo[d] = tb[c[d]];
          hi[d] = tb[c[d] + 1];
        }
        lo[N - 1] = nb[c[N - 1]];
        hi[N - 1] = nb[c[N - 1] + 1];
        emit_block(k);
      }
      int d = N - 1;
      while (d >= 0) {
        const int lim = d == N - 1 ? 2 : 4;
        if (++c[d] < lim) break;
        c[d--] = 0;
      }
      if (d < 0) break;
    }
    rule.shell_inner.push_back(0.5 * s);
    s *= 0.5;
  }
}

[[noreturn]] void report_nonfinite(const QuadratureRule& rule, std::size_t i, double v) {
  std::ostringstream os;
  os << "non-finite integrand value " << v << " at cell " << i << " (";
  for (int d = 0; d < rule.dim; ++d) os << (d ? ", " : "") << rule.coords[i * rule.dim + d];
  os << ")";
  throw NonFiniteIntegrand(os.str());
}

}  // namespace

const char* to_string(RuleKind kind) {
  switch (kind) {
    case RuleKind::VolumeHalfBall: return "volume_halfball";
    case RuleKind::VolumeHalfBox: return "volume_halfbox";
    case RuleKind::SurfaceFlatDisk: return "surface_flat_disk";
    case RuleKind::SurfaceHemisphere: return "surface_hemisphere";
  }
  return "?";
}

QuadratureRule build_rule(RuleKind kind, int dim, double outer, double inner_cut, int base_resolution,
                          int levels, int points_per_axis) {
  if (dim != 2 && dim != 3) throw InvalidArgument("quadrature rules are built for N = 2 or 3 only");
  if (!(outer > inner_cut) || inner_cut < 0.0) {
    throw DegenerateRegion("outer size " + std::to_string(outer) + " must exceed inner cut " +
                           std::to_string(inner_cut) + " >= 0");
  }
  if (base_resolution < 4) throw InvalidArgument("base_resolution must be at least 4");
  if (levels < 1) throw InvalidArgument("levels must be at least 1");
  if (kind == RuleKind::VolumeHalfBox && inner_cut > 0.0)
    throw InvalidArgument("inner_cut is not supported for the half-box rule");
  const Gauss1D g = gauss_unit(points_per_axis);
  QuadratureRule rule;
  rule.kind = kind;
  rule.dim = dim;
  rule.outer = outer;
  rule.inner_cut = inner_cut;
  rule.base_resolution = base_resolution;
  rule.levels = levels;
  rule.points_per_axis = points_per_axis;
  const int radial_cells = std::max(2, base_resolution / 8);
  switch (kind) {
    case RuleKind::VolumeHalfBall: build_halfball(rule, g, radial_cells); break;
    case RuleKind::VolumeHalfBox: build_halfbox(rule, g); break;
    case RuleKind::SurfaceFlatDisk: build_flat_disk(rule, g, std::max(2, base_resolution / 4)); break;
    case RuleKind::SurfaceHemisphere: build_hemisphere(rule, g); break;
  }
  return rule;
}

double pairwise_sum(std::span<const double> t) {
  if (t.size() <= 16) {
    double s = 0.0;
    for (double v : t) s += v;
    return s;
  }
  const std::size_t h = t.size() / 2;
  return pairwise_sum(t.subspan(0, h)) + pairwise_sum(t.subspan(h));
}

double integrate(const QuadratureRule& rule, const ScalarFn& f) {
  std::vector<double> terms(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double v = f(rule.point(i));
    if (!std::isfinite(v)) report_nonfinite(rule, i, v);
    terms[i] = v * rule.weights[i];
  }
  return pairwise_sum(terms);
}

double integrate_gamma(const HardyParams& p, const QuadratureRule& rule, const ScalarFn& f) {
  if (!rule.is_volume()) throw InvalidArgument("integrate_gamma needs a volume rule");
  if (rule.dim != p.dim()) throw InvalidArgument("rule and parameter dimensions differ");
  return integrate(rule, [&](const PointH& x) { return f(x) * lambda_small(p, x); });
}

double integrate_omega_beta(const HardyParams& p, const QuadratureRule& rule, const ScalarFn& g) {
  if (rule.is_volume()) throw InvalidArgument("integrate_omega_beta needs a surface rule");
  if (rule.dim != p.dim()) throw InvalidArgument("rule and parameter dimensions differ");
  return integrate(rule, [&](const PointH& x) { return g(x) * std::pow(x.norm(), p.tau_plus()); });
}

std::vector<double> shell_sums(const QuadratureRule& rule, const ScalarFn& f) {
  std::vector<std::vector<double>> per(static_cast<std::size_t>(rule.shell_count()));
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double v = f(rule.point(i));
    if (!std::isfinite(v)) report_nonfinite(rule, i, v);
    per[static_cast<std::size_t>(rule.shell[i])].push_back(v * rule.weights[i]);
  }
  std::vector<double> out;
  out.reserve(per.size());
  for (const auto& t : per) out.push_back(pairwise_sum(t));
  return out;
}

}  // namespace hardy
