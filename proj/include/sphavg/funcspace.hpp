#ifndef SPHAVG_FUNCSPACE_HPP_
#define SPHAVG_FUNCSPACE_HPP_

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sphavg/quad.hpp"
#include "sphavg/rational.hpp"

namespace sphavg {

struct SupportError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fixed-tree pairwise summation, so results do not depend on evaluation order.
inline double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}
inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

enum class Interp { multilinear, nearest };

// Cell-centred samples on an axis-aligned box in R^d (d <= 3), zero outside the box.
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(int dim, std::array<double, 3> lo, std::array<double, 3> spacing,
               std::array<std::size_t, 3> shape)
      : dim_(dim), lo_(lo), h_(spacing), shape_(shape) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("GridFunction: dimension must be 1, 2 or 3");
    std::size_t total = 1;
    for (int a = 0; a < dim; ++a) {
      if (!(h_[a] > 0.0)) throw std::invalid_argument("GridFunction: spacing must be positive");
      if (shape_[a] == 0) throw std::invalid_argument("GridFunction: empty axis");
      total *= shape_[a];
    }
    for (int a = dim; a < 3; ++a) {
      shape_[a] = 1;
      h_[a] = 1.0;
      lo_[a] = 0.0;
    }
    values_.assign(total, 0.0);
  }

  // Samples `fn` at cell centres of [lo, hi] with n cells per axis.
  template <std::size_t D, class F>
  static GridFunction sample(const Pt<D>& lo, const Pt<D>& hi, std::array<std::size_t, D> n, F&& fn) {
    std::array<double, 3> l{}, h{};
    std::array<std::size_t, 3> s{1, 1, 1};
    for (std::size_t a = 0; a < D; ++a) {
      l[a] = lo[a];
      h[a] = (hi[a] - lo[a]) / static_cast<double>(n[a]);
      s[a] = n[a];
    }
    GridFunction g(static_cast<int>(D), l, h, s);
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
      g.values_[idx] = fn(g.template center<D>(idx));
    }
    return g;
  }

  int dim() const { return dim_; }
  std::size_t size() const { return values_.size(); }
  const std::array<std::size_t, 3>& shape() const { return shape_; }
  const std::array<double, 3>& lo() const { return lo_; }
  const std::array<double, 3>& spacing() const { return h_; }
  double hi(int axis) const { return lo_[axis] + h_[axis] * static_cast<double>(shape_[axis]); }
  double cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < dim_; ++a) v *= h_[a];
    return v;
  }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  Interp interp = Interp::multilinear;
  // Wrap lookups around the box (torus) instead of extending by zero.
  bool periodic = false;
  // Relative size of boundary values below which the zero extension is treated as exact.
  double edge_tolerance = 1e-9;

  std::size_t flat(std::size_t i, std::size_t j = 0, std::size_t k = 0) const {
    return (i * shape_[1] + j) * shape_[2] + k;
  }

  template <std::size_t D>
  Pt<D> center(std::size_t idx) const {
    std::array<std::size_t, 3> ijk{idx / (shape_[1] * shape_[2]), (idx / shape_[2]) % shape_[1],
                                   idx % shape_[2]};
    Pt<D> x{};
    for (std::size_t a = 0; a < D; ++a) x[a] = lo_[a] + (static_cast<double>(ijk[a]) + 0.5) * h_[a];
    return x;
  }

  template <std::size_t D>
  double operator()(const Pt<D>& x) const {
    return interp == Interp::nearest ? nearest<D>(x) : multilinear<D>(x);
  }

  template <std::size_t D>
  double nearest(const Pt<D>& x) const {
    std::array<std::size_t, 3> ijk{0, 0, 0};
    for (std::size_t a = 0; a < D; ++a) {
      double u = (x[a] - lo_[a]) / h_[a];
      if (periodic) u = wrap(std::floor(u), shape_[a]) + (u - std::floor(u));
      if (!(u >= 0.0) || u >= static_cast<double>(shape_[a])) return 0.0;
      ijk[a] = static_cast<std::size_t>(u);
    }
    return values_[flat(ijk[0], ijk[1], ijk[2])];
  }

  template <std::size_t D>
  double multilinear(const Pt<D>& x) const {
    std::array<long, 3> base{0, 0, 0};
    std::array<double, 3> frac{0.0, 0.0, 0.0};
    for (std::size_t a = 0; a < D; ++a) {
      const double u = (x[a] - lo_[a]) / h_[a] - 0.5;
      if (!periodic && (u < -1.0 || u >= static_cast<double>(shape_[a]))) return 0.0;
      const double fl = std::floor(u);
      base[a] = static_cast<long>(fl);
      frac[a] = u - fl;
    }
    double acc = 0.0;
    constexpr std::size_t corners = std::size_t{1} << D;
    for (std::size_t c = 0; c < corners; ++c) {
      double w = 1.0;
      std::array<long, 3> idx{0, 0, 0};
      bool inside = true;
      for (std::size_t a = 0; a < D; ++a) {
        const long off = static_cast<long>((c >> a) & 1U);
        idx[a] = base[a] + off;
        if (periodic) idx[a] = static_cast<long>(wrap(static_cast<double>(idx[a]), shape_[a]));
        w *= off ? frac[a] : 1.0 - frac[a];
        if (idx[a] < 0 || idx[a] >= static_cast<long>(shape_[a])) inside = false;
      }
      if (inside && w != 0.0) {
        acc += w * values_[flat(static_cast<std::size_t>(idx[0]), static_cast<std::size_t>(idx[1]),
                                static_cast<std::size_t>(idx[2]))];
      }
    }
    return acc;
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
  }

  // Largest |value| on the outermost layer of cells.
  double boundary_max() const {
    double m = 0.0;
    for (std::size_t idx = 0; idx < values_.size(); ++idx) {
      std::array<std::size_t, 3> ijk{idx / (shape_[1] * shape_[2]), (idx / shape_[2]) % shape_[1],
                                     idx % shape_[2]};
      bool edge = false;
      for (int a = 0; a < dim_; ++a) edge = edge || ijk[a] == 0 || ijk[a] + 1 == shape_[a];
      if (edge) m = std::max(m, std::abs(values_[idx]));
    }
    return m;
  }

  bool support_interior() const { return boundary_max() <= edge_tolerance * std::max(max_abs(), 1e-300); }

  // Throws if the sphere x - t S^{d-1} leaves the box while the samples reach the box edge.
  template <std::size_t D>
  void check_sphere(const Pt<D>& x, double t) const {
    if (periodic) return;
    bool inside = true;
    for (std::size_t a = 0; a < D; ++a) {
      inside = inside && x[a] - t >= lo_[a] && x[a] + t <= hi(static_cast<int>(a));
    }
    if (inside) return;
    if (!support_state_known_) {
      support_ok_ = support_interior();
      support_state_known_ = true;
    }
    if (!support_ok_) {
      throw SupportError("sphere of radius " + std::to_string(t) +
                         " leaves the sampling box of a function that does not vanish at the box edge");
    }
  }

  void invalidate_cache() { support_state_known_ = false; }

  // Binary layout: int32 d; per axis double lo, double hi; per axis int64 shape; values as LE doubles.
  void write_binary(std::ostream& out) const {
    put<int32_t>(out, dim_);
    for (int a = 0; a < dim_; ++a) {
      put<double>(out, lo_[a]);
      put<double>(out, hi(a));
    }
    for (int a = 0; a < dim_; ++a) put<int64_t>(out, static_cast<int64_t>(shape_[a]));
    for (double v : values_) put<double>(out, v);
  }

  static GridFunction read_binary(std::istream& in) {
    const int d = get<int32_t>(in);
    if (d < 1 || d > 3) throw std::runtime_error("read_binary: bad dimension");
    std::array<double, 3> lo{}, hi{}, h{};
    std::array<std::size_t, 3> shape{1, 1, 1};
    for (int a = 0; a < d; ++a) {
      lo[a] = get<double>(in);
      hi[a] = get<double>(in);
    }
    for (int a = 0; a < d; ++a) {
      const int64_t s = get<int64_t>(in);
      if (s <= 0) throw std::runtime_error("read_binary: bad shape");
      shape[a] = static_cast<std::size_t>(s);
      h[a] = (hi[a] - lo[a]) / static_cast<double>(s);
    }
    GridFunction g(d, lo, h, shape);
    for (double& v : g.values_) v = get<double>(in);
    if (!in) throw std::runtime_error("read_binary: truncated payload");
    return g;
  }

  void write_csv(std::ostream& out) const {
    static const char* names[] = {"x0", "x1", "x2"};
    for (int a = 0; a < dim_; ++a) out << names[a] << ',';
    out << "value\n";
    out.precision(17);
    for (std::size_t idx = 0; idx < values_.size(); ++idx) {
      const auto c = center<3>(idx);
      for (int a = 0; a < dim_; ++a) out << c[a] << ',';
      out << values_[idx] << '\n';
    }
  }

 private:
  static double wrap(double i, std::size_t n) {
    const double m = std::fmod(i, static_cast<double>(n));
    return m < 0.0 ? m + static_cast<double>(n) : m;
  }
  template <class T>
  static void put(std::ostream& out, T v) {
    unsigned char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
    out.write(reinterpret_cast<const char*>(buf), sizeof(T));
  }
  template <class T>
  static T get(std::istream& in) {
    unsigned char buf[sizeof(T)];
    in.read(reinterpret_cast<char*>(buf), sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
    T v;
    std::memcpy(&v, buf, sizeof(T));
    return v;
  }

  int dim_ = 1;
  std::array<double, 3> lo_{0.0, 0.0, 0.0};
  std::array<double, 3> h_{1.0, 1.0, 1.0};
  std::array<std::size_t, 3> shape_{1, 1, 1};
  std::vector<double> values_;
  mutable bool support_state_known_ = false;
  mutable bool support_ok_ = false;
};

// Radial function rho(|x|) on R^d sampled at midpoints of a uniform radial grid on [0, r_max].
struct RadialProfile {
  int dim = 2;
  double r_max = 1.0;
  std::vector<double> samples;
  bool nonnegative = true;

  double dr() const { return r_max / static_cast<double>(samples.size()); }
  double at_radius(double r) const {
    if (r < 0.0 || r >= r_max) return 0.0;
    return samples[std::min(samples.size() - 1, static_cast<std::size_t>(r / dr()))];
  }
  template <std::size_t D>
  double operator()(const Pt<D>& x) const {
    double r2 = 0.0;
    for (double c : x) r2 += c * c;
    return at_radius(std::sqrt(r2));
  }
};

// Nonincreasing rearrangement given by levels v_1 > v_2 > ... > 0 of measures m_i.
struct SimpleFunction {
  std::vector<double> levels;
  std::vector<double> measures;

  void validate() const {
    if (levels.size() != measures.size()) throw std::invalid_argument("SimpleFunction: size mismatch");
    for (std::size_t i = 0; i < levels.size(); ++i) {
      if (!(measures[i] > 0.0)) throw std::invalid_argument("SimpleFunction: measures must be positive");
      if (!(levels[i] > 0.0)) throw std::invalid_argument("SimpleFunction: levels must be positive");
      if (i > 0 && !(levels[i] < levels[i - 1]))
        throw std::invalid_argument("SimpleFunction: levels must be strictly decreasing");
    }
  }
  SimpleFunction scaled(double c) const {
    SimpleFunction out = *this;
    for (double& v : out.levels) v *= c;
    return out;
  }
  double total_measure() const {
    double s = 0.0;
    for (double m : measures) s += m;
    return s;
  }
};

// Builds a SimpleFunction from (|value|, measure) pairs, merging equal values and dropping zeros.
inline SimpleFunction rearrangement(std::vector<std::pair<double, double>> cells) {
  std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  SimpleFunction out;
  for (const auto& [v, m] : cells) {
    if (!(v > 0.0)) break;
    if (!out.levels.empty() && out.levels.back() == v) {
      out.measures.back() += m;
    } else {
      out.levels.push_back(v);
      out.measures.push_back(m);
    }
  }
  return out;
}

inline SimpleFunction rearrangement(const GridFunction& f) {
  std::vector<std::pair<double, double>> cells;
  cells.reserve(f.size());
  const double vol = f.cell_volume();
  for (double v : f.values()) cells.emplace_back(std::abs(v), vol);
  return rearrangement(std::move(cells));
}

inline SimpleFunction rearrangement(const RadialProfile& f) {
  std::vector<std::pair<double, double>> cells;
  const double dr = f.dr();
  const double omega = sphere_area(f.dim) / f.dim;  // volume of the unit ball
  for (std::size_t i = 0; i < f.samples.size(); ++i) {
    const double r0 = dr * static_cast<double>(i);
    const double shell = omega * (std::pow(r0 + dr, f.dim) - std::pow(r0, f.dim));
    cells.emplace_back(std::abs(f.samples[i]), shell);
  }
  return rearrangement(std::move(cells));
}

struct LorentzParams {
  Exponent p;
  Exponent q;
};

inline void require_p_at_least_one(const Exponent& p) {
  if (p.reciprocal() > 1) throw std::domain_error("lp_norm: p must be at least 1");
}

inline double lp_norm(const GridFunction& f, const Exponent& p) {
  require_p_at_least_one(p);
  if (p.is_infinite()) return f.max_abs();
  const double pd = p.value_double();
  std::vector<double> terms(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) terms[i] = std::pow(std::abs(f[i]), pd);
  return std::pow(pairwise_sum(terms) * f.cell_volume(), 1.0 / pd);
}

// Radial Riemann sum with weight omega_{d-1} r^{d-1} dr at midpoints.
inline double lp_norm(const RadialProfile& f, const Exponent& p) {
  require_p_at_least_one(p);
  if (p.is_infinite()) {
    double m = 0.0;
    for (double v : f.samples) m = std::max(m, std::abs(v));
    return m;
  }
  const double pd = p.value_double();
  const double dr = f.dr();
  const double area = sphere_area(f.dim);
  std::vector<double> terms(f.samples.size());
  for (std::size_t i = 0; i < f.samples.size(); ++i) {
    const double r = (static_cast<double>(i) + 0.5) * dr;
    terms[i] = std::pow(std::abs(f.samples[i]), pd) * area * std::pow(r, f.dim - 1) * dr;
  }
  return std::pow(pairwise_sum(terms), 1.0 / pd);
}

inline double lp_norm(const SimpleFunction& f, const Exponent& p) {
  require_p_at_least_one(p);
  if (f.levels.empty()) return 0.0;
  if (p.is_infinite()) return f.levels.front();
  const double pd = p.value_double();
  double s = 0.0;
  for (std::size_t i = 0; i < f.levels.size(); ++i) s += std::pow(f.levels[i], pd) * f.measures[i];
  return std::pow(s, 1.0 / pd);
}

inline double distribution_function(const SimpleFunction& f, double lambda) {
  double m = 0.0;
  for (std::size_t i = 0; i < f.levels.size(); ++i) {
    if (f.levels[i] > lambda) m += f.measures[i];
  }
  return m;
}

inline double distribution_function(const GridFunction& f, double lambda) {
  std::size_t count = 0;
  for (double v : f.values()) count += std::abs(v) > lambda ? 1 : 0;
  return static_cast<double>(count) * f.cell_volume();
}

inline double distribution_function(const RadialProfile& f, double lambda) {
  return distribution_function(rearrangement(f), lambda);
}

// (int_0^inf (t^{1/p} f*(t))^q dt/t)^{1/q}, exact on the step function f*.
inline double lorentz_norm(const SimpleFunction& f, const LorentzParams& params) {
  if (params.p.is_infinite()) {
    if (!params.q.is_infinite()) throw std::domain_error("lorentz_norm: p = inf requires q = inf");
    return f.levels.empty() ? 0.0 : f.levels.front();
  }
  f.validate();
  const double inv_p = to_double(params.p.reciprocal());
  double cumulative = 0.0;
  if (params.q.is_infinite()) {
    double best = 0.0;
    for (std::size_t i = 0; i < f.levels.size(); ++i) {
      cumulative += f.measures[i];
      best = std::max(best, f.levels[i] * std::pow(cumulative, inv_p));
    }
    return best;
  }
  const double q = params.q.value_double();
  const double a = q * inv_p;  // exponent of t in (t^{1/p})^q
  double sum = 0.0;
  for (std::size_t i = 0; i < f.levels.size(); ++i) {
    const double lo = cumulative;
    cumulative += f.measures[i];
    sum += std::pow(f.levels[i], q) * (std::pow(cumulative, a) - std::pow(lo, a)) / a;
  }
  return std::pow(sum, 1.0 / q);
}

inline double lorentz_norm(const GridFunction& f, const LorentzParams& params) {
  return lorentz_norm(rearrangement(f), params);
}

inline double lorentz_norm(const RadialProfile& f, const LorentzParams& params) {
  return lorentz_norm(rearrangement(f), params);
}

// Uncentred M_p f(x) = sup_{I containing x} (|I|^{-1} int_I |f|^p)^{1/p} for d = 1 samples,
// treated as piecewise constant on cells. Interval ends range over cell edges and x itself,
// which is where the supremum of a ratio of piecewise-linear functions is attained.
inline double hl_maximal(const GridFunction& f, const Exponent& p, double x) {
  if (f.dim() != 1) throw std::invalid_argument("hl_maximal: one-dimensional samples required");
  require_p_at_least_one(p);
  if (p.is_infinite()) throw std::domain_error("hl_maximal: finite p required");
  const double pd = p.value_double();
  const std::size_t n = f.shape()[0];
  const double h = f.spacing()[0];
  const double lo = f.lo()[0];
  std::vector<double> edges(n + 1), prefix(n + 1, 0.0);
  for (std::size_t i = 0; i <= n; ++i) edges[i] = lo + h * static_cast<double>(i);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + std::pow(std::abs(f[i]), pd) * h;
  auto integral_to = [&](double y) {
    if (y <= lo) return 0.0;
    if (y >= edges[n]) return prefix[n];
    const double u = (y - lo) / h;
    const auto i = std::min(n - 1, static_cast<std::size_t>(u));
    return prefix[i] + (y - edges[i]) * std::pow(std::abs(f[i]), pd);
  };
  std::vector<double> left{x}, right{x};
  for (double e : edges) {
    if (e < x) left.push_back(e);
    if (e > x) right.push_back(e);
  }
  double best = 0.0;
  for (double a : left) {
    const double fa = integral_to(a);
    for (double b : right) {
      if (b - a <= 0.0) continue;
      best = std::max(best, (integral_to(b) - fa) / (b - a));
    }
  }
  return std::pow(best, 1.0 / pd);
}

}  // namespace sphavg

#endif  // SPHAVG_FUNCSPACE_HPP_
