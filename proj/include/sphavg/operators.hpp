#ifndef SPHAVG_OPERATORS_HPP_
#define SPHAVG_OPERATORS_HPP_

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "sphavg/funcspace.hpp"
#include "sphavg/quad.hpp"
#include "sphavg/rational.hpp"

namespace sphavg {

using RExponent = Exponent;

// Finite set of radii standing in for sup over t.
struct TimeGrid {
  enum class Mode { local, global } mode = Mode::local;
  int per_octave = 16;
  int k_lo = 0;
  int k_hi = 0;

  static TimeGrid local(int per_octave) { return {Mode::local, per_octave, 0, 0}; }
  static TimeGrid global(int per_octave, int k_lo, int k_hi) { return {Mode::global, per_octave, k_lo, k_hi}; }

  std::vector<double> times() const {
    if (per_octave < 8) throw std::invalid_argument("TimeGrid: at least 8 samples per octave required");
    std::vector<double> out;
    if (mode == Mode::local) {
      for (int i = 0; i <= per_octave; ++i) out.push_back(std::exp2(static_cast<double>(i) / per_octave));
      return out;
    }
    if (k_hi < k_lo) throw std::invalid_argument("TimeGrid: empty k-range");
    for (int k = k_lo; k <= k_hi; ++k) {
      for (int i = 0; i < per_octave; ++i) out.push_back(std::exp2(k + static_cast<double>(i) / per_octave));
    }
    out.push_back(std::exp2(k_hi + 1));
    return out;
  }
  double largest() const { return mode == Mode::local ? 2.0 : std::exp2(k_hi + 1); }
};

namespace detail {

template <std::size_t D, class F>
void check_support(const F& f, const Pt<D>& x, double t) {
  if constexpr (requires { f.template check_sphere<D>(x, t); }) f.template check_sphere<D>(x, t);
}

inline double measure_factor(const SphereRule& rule, MeasureMode want) {
  if (rule.mode == want) return 1.0;
  const double area = sphere_area(rule.dim);
  return want == MeasureMode::raw ? area : 1.0 / area;
}

}  // namespace detail

// A_t f(x) = int f(x - t y) dsigma(y) with the rule's measure.
template <std::size_t D, class F>
double spherical_average(const F& f, const Pt<D>& x, double t, const SphereRule& rule) {
  if (!(t > 0.0)) throw std::invalid_argument("spherical_average: t must be positive");
  if (rule.dim != static_cast<int>(D)) throw std::invalid_argument("spherical_average: rule dimension mismatch");
  detail::check_support<D>(f, x, t);
  double acc = 0.0;
  Pt<D> p;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double* y = rule.node(i);
    for (std::size_t a = 0; a < D; ++a) p[a] = x[a] - t * y[a];
    acc += rule.weights[i] * f(p);
  }
  return acc;
}

// max |A_t f(x)| over the grid; a lower bound for the true supremum.
template <std::size_t D, class F>
double maximal_average(const F& f, const Pt<D>& x, const TimeGrid& grid, const SphereRule& rule) {
  detail::check_support<D>(f, x, grid.largest());
  double best = 0.0;
  for (double t : grid.times()) best = std::max(best, std::abs(spherical_average<D>(f, x, t, rule)));
  return best;
}

// Samples of A_{scale*t} f(x) at Gauss nodes t in [1,2]; several r can be evaluated from one set.
struct RadialSamples {
  int dim = 2;
  std::vector<double> t;
  std::vector<double> weight;  // quadrature weight times t^{d-1}
  std::vector<double> value;

  // (int_1^2 |A_t f|^r t^{d-1} dt)^{1/r}; r = inf gives the largest sampled |A_t f|.
  double lr_norm(const RExponent& r) const {
    if (r.is_infinite()) {
      double m = 0.0;
      for (double v : value) m = std::max(m, std::abs(v));
      return m;
    }
    const double rd = r.value_double();
    double s = 0.0;
    for (std::size_t i = 0; i < value.size(); ++i) s += weight[i] * std::pow(std::abs(value[i]), rd);
    return std::pow(s, 1.0 / rd);
  }
};

template <std::size_t D, class F>
RadialSamples sample_radii(const F& f, const Pt<D>& x, const SphereRule& rule, std::size_t panels,
                           double scale = 1.0, std::size_t order = 4) {
  detail::check_support<D>(f, x, 2.0 * scale);
  const GaussRule g = composite_gauss(1.0, 2.0, panels, order);
  RadialSamples out;
  out.dim = static_cast<int>(D);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const double t = g.nodes[i];
    out.t.push_back(t);
    out.weight.push_back(g.weights[i] * std::pow(t, static_cast<int>(D) - 1));
    out.value.push_back(spherical_average<D>(f, x, scale * t, rule));
  }
  return out;
}

// 𝔄^r f(x) with `panels` composite Gauss panels on [1,2].
template <std::size_t D, class F>
double ar_value(const F& f, const Pt<D>& x, const RExponent& r, const SphereRule& rule, std::size_t panels) {
  if (r.is_infinite()) return maximal_average<D>(f, x, TimeGrid::local(static_cast<int>(std::max<std::size_t>(8, panels))), rule);
  return sample_radii<D>(f, x, rule, panels).lr_norm(r);
}

// Per-block samples for 𝔄^r_*, one RadialSamples per k in [k_lo, k_hi].
template <std::size_t D, class F>
std::vector<RadialSamples> sample_dyadic(const F& f, const Pt<D>& x, const SphereRule& rule, int k_lo, int k_hi,
                                         std::size_t panels) {
  std::vector<RadialSamples> out;
  for (int k = k_lo; k <= k_hi; ++k) out.push_back(sample_radii<D>(f, x, rule, panels, std::exp2(k)));
  return out;
}

inline double dyadic_sup(const std::vector<RadialSamples>& blocks, const RExponent& r) {
  double best = 0.0;
  for (const auto& b : blocks) best = std::max(best, b.lr_norm(r));
  return best;
}

// 𝔄^r_* f(x) over k in [k_lo, k_hi].
template <std::size_t D, class F>
double ar_star(const F& f, const Pt<D>& x, const RExponent& r, int k_lo, int k_hi, const SphereRule& rule,
               std::size_t panels) {
  return dyadic_sup(sample_dyadic<D>(f, x, rule, k_lo, k_hi, panels), r);
}

// 𝔅^r_δ f(x): sup over t in the local grid of ((1/δ) int_{1-δ}^{1+δ} |A_{ts} f|^r s^{d-1} ds)^{1/r}.
template <std::size_t D, class F>
double br_delta(const F& f, const Pt<D>& x, const RExponent& r, double delta, const SphereRule& rule,
                std::size_t panels, int per_octave = 16) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("br_delta: delta must lie in (0,1)");
  detail::check_support<D>(f, x, 2.0 * (1.0 + delta));
  const GaussRule g = composite_gauss(1.0 - delta, 1.0 + delta, panels, 4);
  double best = 0.0;
  for (double t : TimeGrid::local(per_octave).times()) {
    double acc = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const double s = g.nodes[i];
      const double a = std::abs(spherical_average<D>(f, x, t * s, rule));
      if (r.is_infinite()) {
        acc = std::max(acc, a);
      } else {
        acc += g.weights[i] * std::pow(a, r.value_double()) * std::pow(s, static_cast<int>(D) - 1);
      }
    }
    const double val = r.is_infinite() ? acc : std::pow(acc / delta, 1.0 / r.value_double());
    best = std::max(best, val);
  }
  return best;
}

// Bilinear average over S^{2d-1} by a rule on the product space R^{2d}.
template <std::size_t D, class F, class G>
double bilinear_average_direct(const F& f, const G& g, const Pt<D>& x, double t, const SphereRule& rule2d) {
  if (rule2d.dim != static_cast<int>(2 * D)) throw std::invalid_argument("bilinear_average_direct: rule must live on S^{2d-1}");
  detail::check_support<D>(f, x, t);
  detail::check_support<D>(g, x, t);
  double acc = 0.0;
  Pt<D> p, q;
  for (std::size_t i = 0; i < rule2d.size(); ++i) {
    const double* y = rule2d.node(i);
    for (std::size_t a = 0; a < D; ++a) {
      p[a] = x[a] - t * y[a];
      q[a] = x[a] - t * y[D + a];
    }
    acc += rule2d.weights[i] * f(p) * g(q);
  }
  return acc;
}

// d = 1: eight arcs of angle pi/4 on S^1, Gauss-Legendre in the angle on each arc.
template <class F, class G>
double bilinear_average_line(const F& f, const G& g, double x, double t, std::size_t nodes_per_arc,
                             MeasureMode mode) {
  const GaussRule arc = gauss_legendre(nodes_per_arc, 0.0, 0.25 * std::numbers::pi);
  double acc = 0.0;
  for (int k = 0; k < 8; ++k) {
    const double base = 0.25 * std::numbers::pi * k;
    for (std::size_t i = 0; i < arc.nodes.size(); ++i) {
      const double phi = base + arc.nodes[i];
      acc += arc.weights[i] * f(Pt<1>{x - t * std::cos(phi)}) * g(Pt<1>{x - t * std::sin(phi)});
    }
  }
  return mode == MeasureMode::raw ? acc : acc / (2.0 * std::numbers::pi);
}

// Slicing form: int_0^1 A_{ts} f(x) A_{t sqrt(1-s^2)} g(x) s^{d-1}(1-s^2)^{(d-2)/2} ds with raw averages,
// so that the result equals the raw S^{2d-1} average. `mode` selects the output normalisation.
template <std::size_t D, class F, class G>
double bilinear_average_sliced(const F& f, const G& g, const Pt<D>& x, double t, const SphereRule& rule,
                               std::size_t s_nodes, MeasureMode mode = MeasureMode::raw) {
  if constexpr (D < 2) {
    throw std::invalid_argument("bilinear_average_sliced: slicing needs d >= 2");
  } else {
    const double to_raw = detail::measure_factor(rule, MeasureMode::raw);
    double acc = 0.0;
    for (const auto& node : slicing_nodes(static_cast<int>(D), s_nodes)) {
      const double a = spherical_average<D>(f, x, t * node.s, rule) * to_raw;
      const double b = spherical_average<D>(g, x, t * node.c, rule) * to_raw;
      acc += node.weight * a * b;
    }
    return mode == MeasureMode::raw ? acc : acc / sphere_area(2 * static_cast<int>(D));
  }
}

// 𝔐 / 𝔐_loc over a time grid (slicing form for d >= 2, arc form for d = 1).
template <std::size_t D, class F, class G>
double bilinear_maximal(const F& f, const G& g, const Pt<D>& x, const TimeGrid& grid, const SphereRule& rule,
                        std::size_t s_nodes, MeasureMode mode = MeasureMode::normalized) {
  double best = 0.0;
  for (double t : grid.times()) {
    double v;
    if constexpr (D == 1) {
      v = bilinear_average_line(f, g, x[0], t, s_nodes, mode);
    } else {
      v = bilinear_average_sliced<D>(f, g, x, t, rule, s_nodes, mode);
    }
    best = std::max(best, std::abs(v));
  }
  return best;
}

// 𝒜_t^θ(f,g)(x) = int_{S^1} f(x - t y) g(x - t Θy) dσ(y).
template <class F, class G>
double rotated_bilinear(const F& f, const G& g, const Pt<2>& x, double t, double theta, const SphereRule& rule) {
  if (rule.dim != 2) throw std::invalid_argument("rotated_bilinear: only d = 2 is supported");
  detail::check_support<2>(f, x, t);
  detail::check_support<2>(g, x, t);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double* y = rule.node(i);
    const Pt<2> p{x[0] - t * y[0], x[1] - t * y[1]};
    const double fv = f(p);
    if (fv == 0.0) continue;
    const Pt<2> q{x[0] - t * (c * y[0] - s * y[1]), x[1] - t * (s * y[0] + c * y[1])};
    acc += rule.weights[i] * fv * g(q);
  }
  return acc;
}

template <class F, class G>
double rotated_maximal(const F& f, const G& g, const Pt<2>& x, double theta, const std::vector<double>& times,
                       const SphereRule& rule) {
  double best = 0.0;
  for (double t : times) best = std::max(best, std::abs(rotated_bilinear(f, g, x, t, theta, rule)));
  return best;
}

// Ã^θ(f,g)(x): rotated average at t = |x|; f(0)g(0) times the rule mass at the origin.
template <class F, class G>
double linearized_bilinear(const F& f, const G& g, const Pt<2>& x, double theta, const SphereRule& rule) {
  const double radius = std::hypot(x[0], x[1]);
  if (radius == 0.0) return f(x) * g(x) * rule.total_weight();
  return rotated_bilinear(f, g, x, radius, theta, rule);
}

// Polar grid on the disc of radius `radius`: Gauss panels in r (weight includes r), trapezoid in angle.
struct DiscGrid {
  std::vector<Pt<2>> points;
  std::vector<double> weights;

  DiscGrid(double radius, std::size_t radial_panels, std::size_t angles) {
    const GaussRule g = composite_gauss(0.0, radius, radial_panels, 8);
    const double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      for (std::size_t k = 0; k < angles; ++k) {
        const double a = two_pi * static_cast<double>(k) / static_cast<double>(angles);
        points.push_back({g.nodes[i] * std::cos(a), g.nodes[i] * std::sin(a)});
        weights.push_back(g.weights[i] * g.nodes[i] * two_pi / static_cast<double>(angles));
      }
    }
  }
};

// <Ã^π(f,g), h> by direct quadrature in x, raw arc-length measure on the circle.
template <class F, class G, class H>
double linearized_pairing_direct(const F& f, const G& g, const H& h, const DiscGrid& grid, int circle_nodes) {
  const SphereRule rule = sphere_rule(2, circle_nodes, MeasureMode::raw);
  double acc = 0.0;
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    acc += grid.weights[i] * h(grid.points[i]) * linearized_bilinear(f, g, grid.points[i], std::numbers::pi, rule);
  }
  return acc;
}

// Same pairing after the polar substitution u = cos φ:
// ∫_{-1}^{1} ∫ f(2ux) g(2√(1-u²) R_{-π/2} x) h(R_{-arccos u} x) dx 2du/√(1-u²), integrated in φ.
template <class F, class G, class H>
double linearized_pairing_polar(const F& f, const G& g, const H& h, const DiscGrid& grid, std::size_t phi_nodes) {
  const GaussRule phi = gauss_legendre(phi_nodes, 0.0, std::numbers::pi);
  double acc = 0.0;
  for (std::size_t k = 0; k < phi.nodes.size(); ++k) {
    const double u = std::cos(phi.nodes[k]);
    const double v = std::sin(phi.nodes[k]);
    double inner = 0.0;
    for (std::size_t i = 0; i < grid.points.size(); ++i) {
      const Pt<2>& x = grid.points[i];
      const Pt<2> fx{2.0 * u * x[0], 2.0 * u * x[1]};
      const Pt<2> gx{2.0 * v * x[1], -2.0 * v * x[0]};
      inner += grid.weights[i] * f(fx) * g(gx) * h(rotate(x, -phi.nodes[k]));
    }
    acc += 2.0 * phi.weights[k] * inner;
  }
  return acc;
}

// S^m single-scale average of functions on R with normalized measure on S^{m-1}.
// m = 2: circle; m = 3, 4: outer integral over the ball B^{m-2} (dσ = dỹ dω), inner circle of radius sqrt(1-|ỹ|^2).
template <class F>
double multilinear_average(const std::vector<F>& fs, double x, double t, std::size_t n) {
  const std::size_t m = fs.size();
  if (m < 2) throw std::invalid_argument("multilinear_average: m must be at least 2");
  if (m > 4) throw std::invalid_argument("multilinear_average: m above 4 is not supported");
  const double two_pi = 2.0 * std::numbers::pi;
  const std::size_t n_circle = std::max<std::size_t>(8, n);
  auto circle = [&](double radius) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n_circle; ++k) {
      const double a = two_pi * static_cast<double>(k) / static_cast<double>(n_circle);
      acc += fs[m - 2](Pt<1>{x - t * radius * std::cos(a)}) * fs[m - 1](Pt<1>{x - t * radius * std::sin(a)});
    }
    return acc * two_pi / static_cast<double>(n_circle);
  };
  double total = 0.0;
  if (m == 2) {
    total = circle(1.0);
  } else if (m == 3) {
    const GaussRule g = gauss_legendre(n, -1.0, 1.0);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const double y = g.nodes[i];
      total += g.weights[i] * fs[0](Pt<1>{x - t * y}) * circle(std::sqrt(1.0 - y * y));
    }
  } else {
    // ỹ in the unit disc by polar coordinates; the integrand depends smoothly on |ỹ|^2.
    const GaussRule rho = gauss_legendre(n, 0.0, 1.0);
    for (std::size_t i = 0; i < rho.nodes.size(); ++i) {
      const double r = rho.nodes[i];
      const double inner = circle(std::sqrt(1.0 - r * r));
      double ring = 0.0;
      for (std::size_t k = 0; k < n_circle; ++k) {
        const double a = two_pi * static_cast<double>(k) / static_cast<double>(n_circle);
        ring += fs[0](Pt<1>{x - t * r * std::cos(a)}) * fs[1](Pt<1>{x - t * r * std::sin(a)});
      }
      total += rho.weights[i] * r * ring * two_pi / static_cast<double>(n_circle) * inner;
    }
  }
  return total / sphere_area(static_cast<int>(m));
}

// int_{2^{-k-1}}^{2^{-k}} |f(x - t y)| |g(x - t sqrt(1-y^2))| dy for piecewise-constant f, g
// (nearest-cell samples). Breakpoints where either argument crosses a cell edge make the sum exact.
inline double tk_single(const GridFunction& f, const GridFunction& g, double x, int k, double t) {
  if (f.dim() != 1 || g.dim() != 1) throw std::invalid_argument("tk_operator: d = 1 only");
  const double lo = std::exp2(-k - 1);
  const double hi = std::exp2(-k);
  std::vector<double> cuts{lo, hi};
  for (std::size_t i = 0; i <= f.shape()[0]; ++i) {
    const double e = f.lo()[0] + f.spacing()[0] * static_cast<double>(i);
    const double y = (x - e) / t;
    if (y > lo && y < hi) cuts.push_back(y);
  }
  for (std::size_t i = 0; i <= g.shape()[0]; ++i) {
    const double e = g.lo()[0] + g.spacing()[0] * static_cast<double>(i);
    const double z = (x - e) / t;
    if (z >= 0.0 && z <= 1.0) {
      const double y = std::sqrt(1.0 - z * z);
      if (y > lo && y < hi) cuts.push_back(y);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double len = cuts[i + 1] - cuts[i];
    if (len <= 0.0) continue;
    const double y = 0.5 * (cuts[i] + cuts[i + 1]);
    acc += len * std::abs(f.nearest<1>(Pt<1>{x - t * y})) * std::abs(g.nearest<1>(Pt<1>{x - t * std::sqrt(1.0 - y * y)}));
  }
  return acc;
}

inline double tk_operator(const GridFunction& f, const GridFunction& g, double x, int k, const std::vector<double>& times) {
  double best = 0.0;
  for (double t : times) best = std::max(best, tk_single(f, g, x, k, t));
  return best;
}

// Hölder-chain constants for T_k, from the substitutions u = x - t y and z = sqrt(1-y^2).
inline double tk_growth_constant() { return std::cbrt(4.0); }  // T_k <= 2^{2/3} 2^{k/3} M_3 f M_{3/2} g
inline double tk_decay_constant() { return std::cbrt(2.0); }   // T_k <= 2^{1/3} 2^{-k/3} M_{3/2} f M_3 g

// Explicit constant in 𝔐 <= C 𝔄^r_* f 𝔄^{r'}_* g: geometric series from the split at s = 1/2, times
// (1 + 2^{-d}) because the window [t/2, t] straddles two dyadic blocks.
inline double domination_constant(int d, const RExponent& r, bool with_straddle = true) {
  const double inv_r = to_double(r.reciprocal());
  const double inv_rc = 1.0 - inv_r;
  auto series = [d](double inv) { return inv == 0.0 ? 1.0 : 1.0 / (1.0 - std::exp2(-d * inv)); };
  double c = series(inv_r) * series(inv_rc);
  if (with_straddle) c *= 1.0 + std::exp2(-d);
  return c;
}

// Both sides of the Hölder bridge at one t, sharing the s-quadrature. Returns {|bilinear|, bound}.
template <std::size_t D, class F, class G>
std::pair<double, double> holder_bridge(const F& f, const G& g, const Pt<D>& x, double t, const RExponent& r,
                                        const SphereRule& rule, std::size_t s_nodes) {
  const double to_raw = detail::measure_factor(rule, MeasureMode::raw);
  const GaussRule phi = gauss_legendre(s_nodes, 0.0, 0.5 * std::numbers::pi);
  const int d = static_cast<int>(D);
  double lhs = 0.0, left = 0.0, right = 0.0;
  double left_max = 0.0, right_max = 0.0;
  const bool r_inf = r.is_infinite();
  const bool rc_inf = r.reciprocal() == 1;
  const double rd = r_inf ? 0.0 : r.value_double();
  const double rcd = rc_inf ? 0.0 : r.conjugate().value_double();
  for (std::size_t i = 0; i < phi.nodes.size(); ++i) {
    const double s = std::sin(phi.nodes[i]);
    const double c = std::cos(phi.nodes[i]);
    const double base = phi.weights[i] * c;  // ds = cos(phi) dphi
    const double a = std::abs(spherical_average<D>(f, x, t * s, rule) * to_raw);
    const double b = std::abs(spherical_average<D>(g, x, t * c, rule) * to_raw);
    lhs += base * std::pow(s, d - 1) * std::pow(c, d - 2) * a * b;
    const double w1 = base * std::pow(s, d - 1);
    const double w2 = base * s * std::pow(c, d - 2);
    if (r_inf) left_max = std::max(left_max, a); else left += w1 * std::pow(a, rd);
    if (rc_inf) right_max = std::max(right_max, b); else right += w2 * std::pow(b, rcd);
  }
  const double lnorm = r_inf ? left_max : std::pow(left, 1.0 / rd);
  const double rnorm = rc_inf ? right_max : std::pow(right, 1.0 / rcd);
  return {lhs, lnorm * rnorm};
}

// int_0^1 t^a (1-t)^b dt with a = -1/p1 - 1/2, b = -1/p2 - 1/2.
struct BetaProbe {
  double a = 0.0;
  double b = 0.0;
  static BetaProbe from_exponents(double p1, double p2) { return {-1.0 / p1 - 0.5, -1.0 / p2 - 0.5}; }
  bool predicted_finite() const { return a > -1.0 && b > -1.0; }
};

struct BetaConvergence {
  bool converges = false;
  double left_ratio = 0.0;   // ratio of successive dyadic pieces near 0
  double right_ratio = 0.0;  // same near 1
  double partial = 0.0;      // partial sum over the pieces examined
};

// Sums the integral over dyadic pieces [2^{-j-1}, 2^{-j}] at each end; converges iff the pieces decay
// geometrically at both ends.
inline BetaConvergence beta_convergence(const BetaProbe& probe, int pieces = 40) {
  const GaussRule base = gauss_legendre(16, 0.0, 1.0);
  auto piece = [&](double lo, double hi, bool near_zero) {
    double acc = 0.0;
    for (std::size_t i = 0; i < base.nodes.size(); ++i) {
      const double u = lo + (hi - lo) * base.nodes[i];  // distance to the endpoint
      const double t = near_zero ? u : 1.0 - u;
      acc += base.weights[i] * (hi - lo) * std::pow(t, probe.a) * std::pow(1.0 - t, probe.b);
    }
    return acc;
  };
  BetaConvergence out;
  double prev_left = 0.0, prev_right = 0.0;
  for (int j = 1; j <= pieces; ++j) {
    const double lo = std::exp2(-j - 1);
    const double hi = std::exp2(-j);
    const double l = piece(lo, hi, true);
    const double r = piece(lo, hi, false);
    if (j == pieces) {
      out.left_ratio = l / prev_left;
      out.right_ratio = r / prev_right;
    }
    prev_left = l;
    prev_right = r;
    out.partial += l + r;
  }
  out.converges = out.left_ratio < 0.99 && out.right_ratio < 0.99;
  return out;
}

}  // namespace sphavg

#endif  // SPHAVG_OPERATORS_HPP_
