#ifndef SPHAVG_EXAMPLES_HPP_
#define SPHAVG_EXAMPLES_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "sphavg/funcspace.hpp"
#include "sphavg/operators.hpp"
#include "sphavg/parallel.hpp"
#include "sphavg/quad.hpp"
#include "sphavg/rational.hpp"

namespace sphavg {

struct ResolutionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Volume of the unit ball in R^d.
inline double unit_ball_volume(int d) { return sphere_area(d) / d; }

namespace detail {

template <std::size_t D>
double norm2(const Pt<D>& x) {
  double s = 0.0;
  for (double c : x) s += c * c;
  return s;
}

template <std::size_t D, class Rng>
Pt<D> random_direction(Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Pt<D> v;
  double n = 0.0;
  do {
    for (auto& c : v) c = g(rng);
    n = std::sqrt(norm2(v));
  } while (n < 1e-12);
  for (auto& c : v) c /= n;
  return v;
}

inline int pow2_at_least(double x) {
  int n = 4;
  while (n < x) n *= 2;
  return n;
}

}  // namespace detail

// ---------------------------------------------------------------------------------------------
// Necessary-condition rows: exact set indicators with closed-form measures.

struct FigAResolution {
  int sphere_n = 64;
  std::size_t panels = 8;
};

template <std::size_t D>
struct FigAExample {
  int row = 1;
  double delta = 0.0625;
  double c = 4.0;

  static constexpr int dim = static_cast<int>(D);

  FigAExample(int row_id, double delta_value, double c_value = 4.0) : row(row_id), delta(delta_value), c(c_value) {
    if (row < 1 || row > 4) throw std::invalid_argument("FigAExample: row must be 1..4");
    if (!(delta > 0.0 && delta <= 0.25)) throw std::invalid_argument("FigAExample: delta must lie in (0, 1/4]");
    if (row == 1 && c * delta >= 1.0) throw std::invalid_argument("FigAExample: annulus width exceeds radius");
  }

  // f
  double operator()(const Pt<D>& y) const {
    switch (row) {
      case 1: {
        const double r = std::sqrt(detail::norm2(y));
        return std::abs(r - 1.0) <= c * delta ? 1.0 : 0.0;
      }
      case 2: return detail::norm2(y) <= c * c * delta * delta ? 1.0 : 0.0;
      case 3: {
        const double wide = c * std::sqrt(delta);
        for (std::size_t a = 0; a + 1 < D; ++a) {
          if (std::abs(y[a]) > wide) return 0.0;
        }
        return std::abs(y[D - 1]) <= c * delta ? 1.0 : 0.0;
      }
      default: return detail::norm2(y) * delta * delta <= 1.0 ? 1.0 : 0.0;
    }
  }

  double f_measure() const {
    const double w = unit_ball_volume(dim);
    switch (row) {
      case 1: return w * (std::pow(1.0 + c * delta, dim) - std::pow(1.0 - c * delta, dim));
      case 2: return w * std::pow(c * delta, dim);
      case 3: return std::pow(2.0 * c * std::sqrt(delta), dim - 1) * 2.0 * c * delta;
      default: return w * std::pow(delta, -dim);
    }
  }

  double e_measure() const {
    const double w = unit_ball_volume(dim);
    switch (row) {
      case 1: return w * std::pow(delta, dim);
      case 2: return w * (std::pow(2.0, dim) - 1.0);
      case 3: return std::pow(2.0 * std::sqrt(delta), dim - 1);
      default: return w * std::pow(delta, -dim);
    }
  }

  // ||f||_p = |F|^{1/p} ~ δ^{alpha_coefficient / p}
  Rational alpha_coefficient() const {
    switch (row) {
      case 1: return 1;
      case 2: return dim;
      case 3: return Rational(dim + 1) / 2;
      default: return -dim;
    }
  }
  Rational beta() const {
    switch (row) {
      case 1: return dim;
      case 2: return 0;
      case 3: return Rational(dim - 1) / 2;
      default: return -dim;
    }
  }
  Rational gamma(const Exponent& r) const {
    switch (row) {
      case 1: return r.reciprocal();
      case 2: return dim - 1 + r.reciprocal();
      case 3: return Rational(dim - 1) / 2 + r.reciprocal();
      default: return 0;
    }
  }
  std::string certifies() const {
    switch (row) {
      case 1: return "1/p <= d/q + 1/r";
      case 2: return "d/p <= d-1 + 1/r";
      case 3: return "(d+1)/(2p) <= (d-1)/(2q) + 1/r + (d-1)/2";
      default: return "1/q <= 1/p";
    }
  }

  bool in_test_set(const Pt<D>& x) const {
    const double r2 = detail::norm2(x);
    switch (row) {
      case 1: return r2 <= delta * delta;
      case 2: return r2 >= 1.0 && r2 <= 4.0;
      case 3: {
        for (std::size_t a = 0; a + 1 < D; ++a) {
          if (std::abs(x[a]) > std::sqrt(delta)) return false;
        }
        return x[D - 1] >= 1.0 && x[D - 1] <= 2.0;
      }
      default: return r2 * delta * delta <= 1.0;
    }
  }

  // Axis boxes [lo, hi] containing supp f and E.
  std::pair<Pt<D>, Pt<D>> f_box() const {
    double half = 1.0 / delta;
    if (row == 1) half = 1.0 + c * delta;
    if (row == 2) half = c * delta;
    Pt<D> lo, hi;
    for (std::size_t a = 0; a < D; ++a) {
      const double h = row == 3 ? (a + 1 < D ? c * std::sqrt(delta) : c * delta) : half;
      lo[a] = -h;
      hi[a] = h;
    }
    return {lo, hi};
  }
  std::pair<Pt<D>, Pt<D>> e_box() const {
    Pt<D> lo, hi;
    for (std::size_t a = 0; a < D; ++a) {
      double l = -1.0 / delta, h = 1.0 / delta;
      if (row == 1) l = -delta, h = delta;
      if (row == 2) l = -2.0, h = 2.0;
      if (row == 3) {
        l = a + 1 < D ? -std::sqrt(delta) : 1.0;
        h = a + 1 < D ? std::sqrt(delta) : 2.0;
      }
      lo[a] = l;
      hi[a] = h;
    }
    return {lo, hi};
  }

  // Points of the test set E used for the lower bound; deterministic in seed.
  std::vector<Pt<D>> test_points(std::size_t count, std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Pt<D>> out;
    for (std::size_t i = 0; i < count; ++i) {
      Pt<D> x{};
      switch (row) {
        case 1: {
          const auto dir = detail::random_direction<D>(rng);
          const double rad = delta * std::pow(u(rng), 1.0 / dim);
          for (std::size_t a = 0; a < D; ++a) x[a] = rad * dir[a];
          break;
        }
        case 2: {
          const auto dir = detail::random_direction<D>(rng);
          const double rad = 1.25 + 0.5 * u(rng);
          for (std::size_t a = 0; a < D; ++a) x[a] = rad * dir[a];
          break;
        }
        case 3: {
          for (std::size_t a = 0; a + 1 < D; ++a) x[a] = std::sqrt(delta) * (2.0 * u(rng) - 1.0);
          x[D - 1] = 1.25 + 0.5 * u(rng);
          break;
        }
        default: {
          const auto dir = detail::random_direction<D>(rng);
          const double rad = 0.25 * static_cast<double>(i % 4) / delta;
          for (std::size_t a = 0; a < D; ++a) x[a] = rad * dir[a];
          break;
        }
      }
      out.push_back(x);
    }
    return out;
  }

  // Sphere and t resolution that resolve the row's features; `k` multiplies both.
  FigAResolution resolution(int k = 1) const {
    const double s = std::sqrt(delta);
    switch (row) {
      case 1: return {detail::pow2_at_least(128.0 * k), static_cast<std::size_t>(std::ceil(2.0 * k / delta))};
      case 2: return {detail::pow2_at_least(16.0 * k / delta), static_cast<std::size_t>(std::ceil(2.0 * k / delta))};
      case 3: return {detail::pow2_at_least(32.0 * k / s), static_cast<std::size_t>(std::ceil(2.0 * k / delta))};
      default: return {detail::pow2_at_least(64.0 * k), static_cast<std::size_t>(8 * k)};
    }
  }

  // Refuses resolutions that put fewer than four sphere nodes across the feature or four t-nodes across its window.
  void check_resolution(const FigAResolution& res) const {
    double arc = 2.0 * std::numbers::pi;
    if (row == 2) arc = c * delta / 2.0;
    if (row == 3) arc = std::sqrt(delta);
    const double nodes_in_arc = res.sphere_n * arc / (2.0 * std::numbers::pi);
    const double t_nodes_in_window = row == 4 ? 8.0 : 4.0 * static_cast<double>(res.panels) * c * delta;
    if (nodes_in_arc < 4.0 || t_nodes_in_window < 4.0) {
      throw ResolutionError("row " + std::to_string(row) + ": resolution too coarse for delta = " + std::to_string(delta));
    }
  }
};

// min over the test points of 𝔄^r f(x) for every r in `rs`; one radial sampling per point serves all r.
template <std::size_t D>
std::vector<double> measure_figA(const FigAExample<D>& ex, const std::vector<Exponent>& rs, std::size_t points,
                                 int k, std::uint64_t seed, unsigned threads = 1) {
  const FigAResolution res = ex.resolution(k);
  ex.check_resolution(res);
  const SphereRule rule = sphere_rule(static_cast<int>(D), res.sphere_n, MeasureMode::normalized);
  const auto xs = ex.test_points(points, seed);
  std::vector<std::vector<double>> vals(xs.size());
  parallel_for(xs.size(), threads, [&](std::size_t i) {
    const RadialSamples s = sample_radii<D>(ex, xs[i], rule, res.panels);
    for (const auto& r : rs) vals[i].push_back(s.lr_norm(r));
  });
  std::vector<double> out(rs.size(), HUGE_VAL);
  for (const auto& v : vals) {
    for (std::size_t j = 0; j < rs.size(); ++j) out[j] = std::min(out[j], v[j]);
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// Convex polygons and unions of them, for the Kakeya-type family.

struct ConvexPolygon {
  std::vector<Pt<2>> v;  // counter-clockwise
  double lo[2] = {0, 0};
  double hi[2] = {0, 0};

  static ConvexPolygon hull(std::vector<Pt<2>> pts) {
    std::sort(pts.begin(), pts.end());
    auto cross = [](const Pt<2>& o, const Pt<2>& a, const Pt<2>& b) {
      return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<Pt<2>> h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
      h[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
      while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
      h[k++] = pts[i];
    }
    h.resize(k - 1);
    ConvexPolygon p;
    p.v = std::move(h);
    p.lo[0] = p.lo[1] = HUGE_VAL;
    p.hi[0] = p.hi[1] = -HUGE_VAL;
    for (const auto& q : p.v) {
      for (int a = 0; a < 2; ++a) {
        p.lo[a] = std::min(p.lo[a], q[a]);
        p.hi[a] = std::max(p.hi[a], q[a]);
      }
    }
    return p;
  }

  bool contains(const Pt<2>& x) const {
    if (x[0] < lo[0] || x[0] > hi[0] || x[1] < lo[1] || x[1] > hi[1]) return false;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Pt<2>& a = v[i];
      const Pt<2>& b = v[(i + 1) % v.size()];
      if ((b[0] - a[0]) * (x[1] - a[1]) - (b[1] - a[1]) * (x[0] - a[0]) < 0.0) return false;
    }
    return true;
  }

  double area() const {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Pt<2>& a = v[i];
      const Pt<2>& b = v[(i + 1) % v.size()];
      s += a[0] * b[1] - a[1] * b[0];
    }
    return 0.5 * s;
  }
};

// Indicator of a union of convex polygons with a bucket grid for lookups.
class PolygonUnion {
 public:
  PolygonUnion() = default;
  explicit PolygonUnion(std::vector<ConvexPolygon> pieces, int buckets = 64) : pieces_(std::move(pieces)), nb_(buckets) {
    lo_[0] = lo_[1] = HUGE_VAL;
    hi_[0] = hi_[1] = -HUGE_VAL;
    for (const auto& p : pieces_) {
      for (int a = 0; a < 2; ++a) {
        lo_[a] = std::min(lo_[a], p.lo[a]);
        hi_[a] = std::max(hi_[a], p.hi[a]);
      }
    }
    for (int a = 0; a < 2; ++a) cell_[a] = (hi_[a] - lo_[a]) / nb_;
    grid_.assign(static_cast<std::size_t>(nb_ * nb_), {});
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      const auto& p = pieces_[i];
      const int x0 = bucket(p.lo[0], 0), x1 = bucket(p.hi[0], 0);
      const int y0 = bucket(p.lo[1], 1), y1 = bucket(p.hi[1], 1);
      for (int bx = x0; bx <= x1; ++bx) {
        for (int by = y0; by <= y1; ++by) grid_[static_cast<std::size_t>(bx * nb_ + by)].push_back(i);
      }
    }
  }

  double operator()(const Pt<2>& x) const {
    if (x[0] < lo_[0] || x[0] > hi_[0] || x[1] < lo_[1] || x[1] > hi_[1]) return 0.0;
    for (std::size_t i : grid_[static_cast<std::size_t>(bucket(x[0], 0) * nb_ + bucket(x[1], 1))]) {
      if (pieces_[i].contains(x)) return 1.0;
    }
    return 0.0;
  }

  // Cell-centre count on an m x m grid over the bounding box.
  double area_estimate(int m) const {
    const double hx = (hi_[0] - lo_[0]) / m, hy = (hi_[1] - lo_[1]) / m;
    std::size_t count = 0;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) count += (*this)({lo_[0] + (i + 0.5) * hx, lo_[1] + (j + 0.5) * hy}) > 0.0;
    }
    return static_cast<double>(count) * hx * hy;
  }

  const std::vector<ConvexPolygon>& pieces() const { return pieces_; }

 private:
  int bucket(double v, int a) const {
    if (cell_[a] <= 0.0) return 0;
    return std::clamp(static_cast<int>((v - lo_[a]) / cell_[a]), 0, nb_ - 1);
  }

  std::vector<ConvexPolygon> pieces_;
  int nb_ = 1;
  double lo_[2] = {0, 0}, hi_[2] = {0, 0}, cell_[2] = {1, 1};
  std::vector<std::vector<std::size_t>> grid_;
};

// δ x δ² parallelograms from the dyadic line family (2^n slopes l/2^n, bit-weighted intercepts),
// rescaled into [-δ, δ]^2 with δ = 2^{-n}.
struct KakeyaFamily {
  int n = 4;
  double delta = 1.0 / 16;
  double theta = std::numbers::pi / 2;
  std::vector<double> slope;      // long-side slope of R_l
  std::vector<double> offset;     // centre-line height at x = 0
  std::vector<Pt<2>> normal;      // unit normal n_l of R_l
  PolygonUnion f_support;         // ∪ R_l
  PolygonUnion translates;        // ∪ (R_l + [1,2] n_l) = ∪_ν R_{l,ν}
  PolygonUnion g_support;         // ∪ ((I - Θ)(R_l + [1,2] n_l) + Θ R_l)

  std::size_t directions() const { return slope.size(); }
  double half_thickness() const { return 0.5 * delta * delta; }

  std::array<Pt<2>, 4> rectangle(std::size_t l) const {
    const double h = half_thickness(), a = 0.5 * delta;
    auto yc = [&](double x) { return slope[l] * x + offset[l]; };
    return {Pt<2>{-a, yc(-a) - h}, Pt<2>{a, yc(a) - h}, Pt<2>{a, yc(a) + h}, Pt<2>{-a, yc(-a) + h}};
  }

  double f(const Pt<2>& x) const {
    const double a = 0.5 * delta;
    if (x[0] < -a || x[0] > a) return 0.0;
    const double h = half_thickness();
    for (std::size_t l = 0; l < slope.size(); ++l) {
      if (std::abs(x[1] - slope[l] * x[0] - offset[l]) <= h) return 1.0;
    }
    return 0.0;
  }
  double g(const Pt<2>& x) const { return g_support(x); }

  // |∪ R_l| by exact interval unions on `columns` vertical slices.
  double union_area(std::size_t columns = 0) const {
    if (columns == 0) columns = 16 * slope.size();
    const double a = 0.5 * delta, h = half_thickness();
    const double w = delta / static_cast<double>(columns);
    std::vector<std::pair<double, double>> iv(slope.size());
    double area = 0.0;
    for (std::size_t c = 0; c < columns; ++c) {
      const double x = -a + (c + 0.5) * w;
      for (std::size_t l = 0; l < slope.size(); ++l) {
        const double y = slope[l] * x + offset[l];
        iv[l] = {y - h, y + h};
      }
      std::sort(iv.begin(), iv.end());
      double len = 0.0, lo = iv[0].first, hi = iv[0].second;
      for (std::size_t l = 1; l < iv.size(); ++l) {
        if (iv[l].first > hi) {
          len += hi - lo;
          lo = iv[l].first;
        }
        hi = std::max(hi, iv[l].second);
      }
      len += hi - lo;
      area += len * w;
    }
    return area;
  }

  struct SamplePoint {
    Pt<2> x;
    std::size_t l;
    double radius;  // the s with x ∈ R_l + s n_l
  };

  std::vector<SamplePoint> sample_translates(std::size_t count, std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<SamplePoint> out;
    for (std::size_t i = 0; i < count; ++i) {
      const auto l = static_cast<std::size_t>(u(rng) * static_cast<double>(slope.size())) % slope.size();
      const double px = delta * (u(rng) - 0.5);
      const double py = slope[l] * px + offset[l] + half_thickness() * (2.0 * u(rng) - 1.0);
      const double s = 1.0 + u(rng);
      out.push_back({{px + s * normal[l][0], py + s * normal[l][1]}, l, s});
    }
    return out;
  }
};

inline KakeyaFamily make_kakeya(int n, double theta = std::numbers::pi / 2) {
  if (n < 2 || n > 12) throw std::invalid_argument("make_kakeya: need 2 <= n <= 12 (delta = 2^-n)");
  KakeyaFamily k;
  k.n = n;
  k.delta = std::ldexp(1.0, -n);
  k.theta = theta;
  const std::size_t count = std::size_t{1} << n;
  const double c = std::cos(theta), s = std::sin(theta);
  std::vector<ConvexPolygon> rects, trans, gs;
  for (std::size_t l = 0; l < count; ++l) {
    const double sigma = static_cast<double>(l) * k.delta;
    double intercept = 0.0;
    for (int b = 1; b <= n; ++b) {
      const double bit = static_cast<double>((l >> (n - b)) & 1u);
      intercept -= (static_cast<double>(b) / n) * bit * std::ldexp(1.0, -b);
    }
    k.slope.push_back(sigma);
    k.offset.push_back(k.delta * (0.5 * sigma + intercept));
    const double len = std::hypot(sigma, 1.0);
    k.normal.push_back({-sigma / len, 1.0 / len});
  }
  for (std::size_t l = 0; l < count; ++l) {
    const auto r = k.rectangle(l);
    const Pt<2>& nl = k.normal[l];
    rects.push_back(ConvexPolygon::hull({r.begin(), r.end()}));
    std::vector<Pt<2>> tv;
    for (const auto& q : r) {
      tv.push_back({q[0] + nl[0], q[1] + nl[1]});
      tv.push_back({q[0] + 2.0 * nl[0], q[1] + 2.0 * nl[1]});
    }
    trans.push_back(ConvexPolygon::hull(tv));
    std::vector<Pt<2>> gv;
    for (const auto& t : tv) {
      const Pt<2> a{t[0] - (c * t[0] - s * t[1]), t[1] - (s * t[0] + c * t[1])};
      for (const auto& q : r) gv.push_back({a[0] + c * q[0] - s * q[1], a[1] + s * q[0] + c * q[1]});
    }
    gs.push_back(ConvexPolygon::hull(gv));
  }
  k.f_support = PolygonUnion(std::move(rects));
  k.translates = PolygonUnion(std::move(trans), 128);
  k.g_support = PolygonUnion(std::move(gs), 128);
  return k;
}

// Lower bound for ℳ^θ_loc(f,g)(x): sup over radii within δ² of the generating radius.
inline double kakeya_maximal(const KakeyaFamily& fam, const KakeyaFamily::SamplePoint& p, int k = 1) {
  const int nodes = detail::pow2_at_least(64.0 * k / fam.delta);
  const SphereRule rule = sphere_rule(2, nodes, MeasureMode::normalized);
  const double step = fam.delta * fam.delta / (8.0 * k);
  std::vector<double> times;
  for (int i = -8 * k; i <= 8 * k; ++i) {
    const double t = p.radius + i * step;
    if (t >= 1.0 && t <= 2.0) times.push_back(t);
  }
  auto f = [&](const Pt<2>& y) { return fam.f(y); };
  auto g = [&](const Pt<2>& y) { return fam.g(y); };
  return rotated_maximal(f, g, p.x, fam.theta, times, rule);
}

// ---------------------------------------------------------------------------------------------
// Dyadic sum of nested balls: f = Σ_{i=1}^N 4^{(d/p0) i} χ_{B(0, a 4^{-i})}.

struct DyadicSumSpec {
  int N = 8;
  double a = 0.25;
  int d = 2;
  Exponent r = Exponent::from_value(2);

  Exponent p0() const {
    const Rational ir = r.reciprocal();
    return Exponent::from_reciprocal((d - 1 + ir) / d);
  }
};

struct DyadicSum {
  DyadicSumSpec spec;
  std::vector<double> radii;     // a 4^{-i}, i = 1..N
  std::vector<double> weights;   // 4^{(d/p0) i}
  std::vector<double> cumulative;  // value on shell i: Σ_{k<=i} weights

  template <std::size_t D>
  double operator()(const Pt<D>& x) const {
    const double rho = std::sqrt(detail::norm2(x));
    double v = 0.0;
    for (std::size_t i = 0; i < radii.size() && rho <= radii[i]; ++i) v = cumulative[i];
    return v;
  }

  // Levels in decreasing order with their exact measures.
  SimpleFunction simple() const {
    SimpleFunction s;
    const double w = unit_ball_volume(spec.d);
    for (std::size_t i = radii.size(); i-- > 0;) {
      const double outer = std::pow(radii[i], spec.d);
      const double inner = i + 1 < radii.size() ? std::pow(radii[i + 1], spec.d) : 0.0;
      s.levels.push_back(cumulative[i]);
      s.measures.push_back(w * (outer - inner));
    }
    return s;
  }

  // Piecewise-constant radial samples, adequate only for small N.
  RadialProfile radial_profile(std::size_t samples) const {
    RadialProfile p;
    p.dim = spec.d;
    p.r_max = radii.empty() ? 1.0 : 2.0 * radii.front();
    p.samples.resize(samples);
    for (std::size_t i = 0; i < samples; ++i) {
      const double rho = (i + 0.5) * p.dr();
      double v = 0.0;
      for (std::size_t k = 0; k < radii.size() && rho <= radii[k]; ++k) v = cumulative[k];
      p.samples[i] = v;
    }
    return p;
  }
};

inline DyadicSum make_dyadic_sum(const DyadicSumSpec& spec) {
  if (spec.N < 1) throw std::invalid_argument("make_dyadic_sum: N must be positive");
  if (!(spec.a > 0.0)) throw std::invalid_argument("make_dyadic_sum: a must be positive");
  if (spec.d < 2 || spec.d > 4) throw std::invalid_argument("make_dyadic_sum: d must be 2, 3 or 4");
  DyadicSum f;
  f.spec = spec;
  const double power = spec.d * to_double(spec.p0().reciprocal());
  double acc = 0.0;
  for (int i = 1; i <= spec.N; ++i) {
    f.radii.push_back(spec.a * std::pow(4.0, -i));
    f.weights.push_back(std::pow(4.0, power * i));
    acc += f.weights.back();
    f.cumulative.push_back(acc);
  }
  return f;
}

// Normalized σ-measure of {y ∈ S^{d-1}: |x - t y| <= rho} for |x| = dist > rho, t = dist + u; d = 2 or 3.
// Written through u so that radii far below machine epsilon relative to dist keep full precision.
inline double ball_fraction(int d, double dist, double u, double rho) {
  if (rho >= dist) throw std::invalid_argument("ball_fraction: ball must not contain the centre");
  const double a = std::abs(u);
  if (a >= rho) return 0.0;
  const double t = dist + u;
  const double half_gap = std::min(1.0, (rho - a) * (rho + a) / (4.0 * dist * t));  // (1 - cos angle) / 2
  if (d == 2) return 2.0 * std::asin(std::sqrt(half_gap)) / std::numbers::pi;
  if (d == 3) return half_gap;
  throw std::invalid_argument("ball_fraction: d must be 2 or 3");
}

// 𝔄^r of a radial sum of ball indicators at |x| = dist, via exact cap fractions and Gauss rules
// between consecutive breakpoints t = dist ± radius (sin-graded for the square-root edges).
inline double ar_ball_sum(const DyadicSum& f, double dist, const Exponent& r, std::size_t order = 24) {
  const int d = f.spec.d;
  const double u_lo = 1.0 - dist, u_hi = 2.0 - dist;
  std::vector<double> cuts{u_lo, u_hi};
  for (double rad : f.radii) {
    for (double u : {-rad, rad}) {
      if (u > u_lo && u < u_hi) cuts.push_back(u);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  const GaussRule base = gauss_legendre(order, -0.5 * std::numbers::pi, 0.5 * std::numbers::pi);
  auto value = [&](double u) {
    double v = 0.0;
    for (std::size_t i = 0; i < f.radii.size(); ++i) v += f.weights[i] * ball_fraction(d, dist, u, f.radii[i]);
    return v;
  };
  double acc = 0.0, best = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double mid = 0.5 * (cuts[k] + cuts[k + 1]), half = 0.5 * (cuts[k + 1] - cuts[k]);
    for (std::size_t i = 0; i < base.nodes.size(); ++i) {
      const double u = mid + half * std::sin(base.nodes[i]);
      const double v = value(u);
      if (r.is_infinite()) {
        best = std::max(best, v);
      } else {
        acc += base.weights[i] * half * std::cos(base.nodes[i]) * std::pow(v, r.value_double()) *
               std::pow(dist + u, d - 1);
      }
    }
  }
  return r.is_infinite() ? best : std::pow(acc, 1.0 / r.value_double());
}

// ---------------------------------------------------------------------------------------------
// Product-type pair for the bilinear necessary condition (d = 2, one variable each).

struct ProductTypeSpec {
  double alpha1 = 0.9, alpha2 = 0.9, beta1 = 0.9, beta2 = 0.9;
  double p1 = 2.0, p2 = 2.0;
  double cap = std::ldexp(1.0, -16);  // distances below this are raised to it
  int k_lo = 4, k_hi = 9;

  void validate() const {
    if (!(alpha1 < 1.0 && alpha2 < 1.0 && beta1 < 1.0 && beta2 < 1.0)) {
      throw std::invalid_argument("ProductTypeSpec: exponents must be below 1 for integrability");
    }
    if (!(p1 >= 1.0 && p2 >= 1.0)) throw std::invalid_argument("ProductTypeSpec: p1, p2 must be at least 1");
  }
  // 𝒯(f,g) on B_k grows like 2^{k * predicted_exponent()}.
  double predicted_exponent() const { return alpha1 / p1 + beta1 / p2 + alpha2 / (2 * p1) + beta2 / (2 * p2) - 0.5; }
};

struct ProductFunction {
  double e1 = 0.45, e2 = 0.45, cap = 1e-5;

  double operator()(const Pt<2>& x) const {
    if (std::abs(x[0]) > 2.0 || std::abs(x[1]) > 1.0) return 0.0;
    const double u = std::max(std::abs(std::abs(x[0]) - 1.0), cap);
    const double v = std::max(std::abs(x[1]), cap);
    return std::pow(u, -e1) * std::pow(v, -e2);
  }
};

inline std::pair<ProductFunction, ProductFunction> make_product_type(const ProductTypeSpec& s) {
  s.validate();
  return {ProductFunction{s.alpha1 / s.p1, s.alpha2 / s.p1, s.cap}, ProductFunction{s.beta1 / s.p2, s.beta2 / s.p2, s.cap}};
}

// Points of B_k = {2^{-k} <= x1 <= 2^{-k+1}, 2^{-k/2} <= x2 <= 2^{-(k-1)/2}}, deterministic spread.
inline std::vector<Pt<2>> product_points(int k, std::size_t count) {
  std::vector<Pt<2>> out;
  for (std::size_t i = 0; i < count; ++i) {
    const double u = (i + 0.5) / static_cast<double>(count);
    const double v = std::fmod(0.618033988749895 * (i + 1), 1.0);
    out.push_back({std::ldexp(1.0 + u, -k), std::exp2(-0.5 * k) * (1.0 + (std::sqrt(2.0) - 1.0) * v)});
  }
  return out;
}

// Mean over B_k points of 𝒯(f,g)(x) = ∫ f(x - y) g(x + y) dσ(y).
inline double product_average(const ProductTypeSpec& s, int k, std::size_t points, int sphere_n, unsigned threads = 1) {
  const auto [f, g] = make_product_type(s);
  const SphereRule rule = sphere_rule(2, sphere_n, MeasureMode::normalized);
  const auto xs = product_points(k, points);
  std::vector<double> v(xs.size());
  parallel_for(xs.size(), threads, [&](std::size_t i) { v[i] = rotated_bilinear(f, g, xs[i], 1.0, std::numbers::pi, rule); });
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

}  // namespace sphavg

#endif  // SPHAVG_EXAMPLES_HPP_
