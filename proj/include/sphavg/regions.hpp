#ifndef SPHAVG_REGIONS_HPP_
#define SPHAVG_REGIONS_HPP_

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sphavg/rational.hpp"

namespace sphavg {

// Reciprocal exponents, e.g. (1/p, 1/q) or (1/p1, 1/p2, 1/p).
struct ExponentPoint {
  std::vector<Rational> coords;
  int d = 2;
  std::optional<Exponent> r;

  std::size_t size() const { return coords.size(); }
  const Rational& operator[](std::size_t i) const { return coords[i]; }
};

using Coords = std::vector<Rational>;

enum class Verdict { strong, weak, restricted_weak, restricted_strong, unbounded, open };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::strong: return "strong";
    case Verdict::weak: return "weak";
    case Verdict::restricted_weak: return "restricted-weak";
    case Verdict::restricted_strong: return "restricted-strong";
    case Verdict::unbounded: return "false";
    case Verdict::open: return "open";
  }
  return "open";
}

struct Classification {
  std::string theorem;
  ExponentPoint point;
  Verdict verdict = Verdict::open;
  std::string stratum;
  std::vector<std::string> citations;
  std::optional<Rational> delta_exponent;  // δ-power of the bound, for the 𝔅 strata
};

struct NecessaryCheck {
  std::string label;
  Rational lhs;
  Rational rhs;
  bool satisfied = false;
  bool boundary = false;  // holds with equality
};

struct UnknownTheorem : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct IncompatiblePoint : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

using VertexTable = std::vector<std::pair<std::string, Coords>>;

namespace geom {

inline Rational cross(const Coords& o, const Coords& a, const Coords& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Counter-clockwise hull without collinear points (monotone chain, exact).
inline std::vector<Coords> hull2(std::vector<Coords> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Coords> h(2 * pts.size());
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
  return h;
}

inline bool on_segment(const Coords& a, const Coords& b, const Coords& p) {
  if (cross(a, b, p) != 0) return false;
  return std::min(a[0], b[0]) <= p[0] && p[0] <= std::max(a[0], b[0]) && std::min(a[1], b[1]) <= p[1] &&
         p[1] <= std::max(a[1], b[1]);
}

// Closed (strict = false) or open (strict = true) convex hull membership in the plane.
inline bool in_hull2(const std::vector<Coords>& vertices, const Coords& p, bool strict) {
  const auto h = hull2(vertices);
  if (h.size() == 1) return !strict && h[0] == p;
  if (h.size() == 2) return !strict && on_segment(h[0], h[1], p);
  for (std::size_t i = 0; i < h.size(); ++i) {
    const Rational c = cross(h[i], h[(i + 1) % h.size()], p);
    if (c < 0 || (strict && c == 0)) return false;
  }
  return true;
}

// Closed hull membership in R^3 via every supporting plane through three vertices.
inline bool in_hull3(const std::vector<Coords>& v, const Coords& p) {
  bool any_plane = false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      for (std::size_t k = j + 1; k < v.size(); ++k) {
        Coords a{v[j][0] - v[i][0], v[j][1] - v[i][1], v[j][2] - v[i][2]};
        Coords b{v[k][0] - v[i][0], v[k][1] - v[i][1], v[k][2] - v[i][2]};
        Coords n{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
        if (n[0] == 0 && n[1] == 0 && n[2] == 0) continue;
        auto side = [&](const Coords& q) {
          return n[0] * (q[0] - v[i][0]) + n[1] * (q[1] - v[i][1]) + n[2] * (q[2] - v[i][2]);
        };
        bool pos = false, neg = false;
        for (const auto& q : v) {
          const Rational s = side(q);
          pos = pos || s > 0;
          neg = neg || s < 0;
        }
        if (pos && neg) continue;
        any_plane = true;
        const Rational sp = side(p);
        if ((pos && sp < 0) || (neg && sp > 0)) return false;
      }
    }
  }
  if (!any_plane) throw std::logic_error("in_hull3: degenerate vertex set");
  return true;
}

}  // namespace geom

namespace detail {

inline Rational inv_r(const ExponentPoint& pt) {
  if (!pt.r) throw IncompatiblePoint("this theorem needs r");
  return pt.r->reciprocal();
}

inline void require_dims(const ExponentPoint& pt, std::size_t n, const std::string& thm) {
  if (pt.size() != n) {
    throw IncompatiblePoint(thm + " expects " + std::to_string(n) + " coordinates, got " + std::to_string(pt.size()));
  }
  for (const auto& c : pt.coords) {
    if (c < 0) throw IncompatiblePoint(thm + ": reciprocal exponents must be nonnegative");
  }
}

inline Rational sum(const Coords& c) {
  Rational s = 0;
  for (const auto& v : c) s += v;
  return s;
}

inline NecessaryCheck le(std::string label, Rational lhs, Rational rhs) {
  NecessaryCheck c{std::move(label), lhs, rhs, lhs <= rhs, lhs == rhs};
  return c;
}

inline bool all_hold(const std::vector<NecessaryCheck>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.satisfied; });
}

inline Coords get(const VertexTable& t, const std::string& name) {
  for (const auto& [n, c] : t) {
    if (n == name) return c;
  }
  throw std::out_of_range("vertex " + name);
}

}  // namespace detail

inline const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids{
      "fullmaximal_d1", "fullmaximal_d2",  "dosidisRamos", "mlinearspherical", "jeongLee",
      "slicedbilinearimproving", "linearAr", "linearArStar", "linearBr",  "schlag",
      "gikl",           "gikl_pi",         "Mfull",        "linearized",       "productNecessary",
      "giklImproving"};
  return ids;
}

// Named vertices; r is only used by linearAr / linearArStar / linearBr.
inline VertexTable vertex_table(const std::string& thm, int d, std::optional<Exponent> r = std::nullopt) {
  const Rational D = d;
  if (thm == "fullmaximal_d1" || thm == "fullmaximal_d2" || thm == "mlinearspherical") {
    return {{"O", {0, 0}},           {"U1", {rat(1, 2), 0}}, {"U2", {rat(1, 2), rat(1, 2)}},
            {"U3", {0, rat(1, 2)}},  {"V1", {1, rat(1, 2)}}, {"V2", {rat(1, 2), 1}}};
  }
  if (thm == "slicedbilinearimproving" || thm == "jeongLee") {
    const Rational q = 2 * D * D - D + 1;
    return {{"O", {0, 0}},
            {"A", {rat(1, 2), 0}},
            {"E", {(2 * D - 3) / (2 * (D - 1)), (D - 2) / (D * (D - 1))}},
            {"F", {(2 * D - 1) * (2 * D - 1) / (2 * q), (2 * D - 3) / q}},
            {"B'", {q / (2 * (D * D + 1)), (D - 1) / (D * D + 1)}},
            {"C", {(2 * D - 1) / (2 * D), 1 / D}},
            {"D", {(2 * D - 1) / (2 * D), (2 * D - 1) / D}}};
  }
  if (thm == "linearAr" || thm == "linearArStar" || thm == "linearBr") {
    if (!r) throw IncompatiblePoint(thm + " needs r");
    const Rational ir = r->reciprocal();
    const Rational irc = 1 - ir;
    VertexTable t{{"O", {0, 0}},
                  {"A", {ir, 0}},
                  {"P", {((D + 1) * ir + D * D - D) / (D * D + 1), (D - 1) * irc / (D * D + 1)}},
                  {"Q", {(D - 1 + ir) / D, irc / D}},
                  {"R", {(D - 1 + ir) / D, (D - 1 + ir) / D}}};
    if (thm == "linearBr") {
      t.push_back({"P'", {(D * D - D) / (D * D + 1), (D - 1) / (D * D + 1)}});
      t.push_back({"Q'", {(D - 1) / D, 1 / D}});
      t.push_back({"R'", {(D - 1) / D, (D - 1) / D}});
    }
    return t;
  }
  if (thm == "schlag") {
    return {{"O", {0, 0}}, {"S", {rat(2, 5), rat(1, 5)}}, {"H", {rat(1, 2), rat(1, 2)}},
            {"L1", {1, 0}}, {"L2", {1, 1}}};
  }
  if (thm == "gikl" || thm == "gikl_pi") {
    VertexTable t{{"O", {0, 0, 0}},
                  {"G1", {rat(2, 3), rat(2, 3), 1}},
                  {"G2", {0, rat(2, 3), rat(1, 3)}},
                  {"G3", {rat(2, 3), 0, rat(1, 3)}},
                  {"G4", {1, 0, 1}},
                  {"G5", {0, 1, 1}}};
    if (thm == "gikl") t.push_back({"G6", {rat(1, 2), rat(1, 2), rat(1, 2)}});
    return t;
  }
  if (std::find(theorem_ids().begin(), theorem_ids().end(), thm) != theorem_ids().end()) return {};
  throw UnknownTheorem("unknown theorem id: " + thm);
}

inline std::vector<Coords> vertices_of(const VertexTable& t, std::initializer_list<const char*> names) {
  std::vector<Coords> out;
  for (const char* n : names) out.push_back(detail::get(t, n));
  return out;
}

// Necessary inequalities for boundedness; each evaluated exactly.
inline std::vector<NecessaryCheck> necessary_gap(const ExponentPoint& pt, const std::string& thm) {
  using detail::le;
  const Rational D = pt.d;
  if (thm == "linearAr" || thm == "linearBr") {
    detail::require_dims(pt, 2, thm);
    const Rational ir = detail::inv_r(pt);
    const Rational& x = pt[0];
    const Rational& y = pt[1];
    return {le("row1: 1/p <= d/q + 1/r", x, D * y + ir),
            le("row2: d/p <= d-1 + 1/r", D * x, D - 1 + ir),
            le("row3: (d+1)/(2p) <= (d-1)/(2q) + 1/r + (d-1)/2", (D + 1) * x / 2, (D - 1) * y / 2 + ir + (D - 1) / 2),
            le("row4: 1/q <= 1/p", y, x)};
  }
  if (thm == "jeongLee" || thm == "slicedbilinearimproving") {
    detail::require_dims(pt, 3, thm);
    const Rational s = pt[0] + pt[1];
    const Rational& z = pt[2];
    std::vector<NecessaryCheck> out{le("1/p <= 1/p1 + 1/p2", z, s),
                                    le("1/p1 + 1/p2 <= (2d-1)/d", s, (2 * D - 1) / D),
                                    le("1/p1 + 1/p2 <= 1 + d/p", s, 1 + D * z)};
    if (thm == "slicedbilinearimproving") {
      out.push_back(le("knapp: 1/p1 + 1/p2 <= (d-1)/((d+1)p) + 2d/(d+1)", s, (D - 1) * z / (D + 1) + 2 * D / (D + 1)));
    }
    return out;
  }
  if (thm == "productNecessary") {
    detail::require_dims(pt, 3, thm);
    return {le("(d+1)/p1 + (d+1)/p2 <= d-1 + (d+1)/p", (D + 1) * (pt[0] + pt[1]), D - 1 + (D + 1) * pt[2])};
  }
  if (thm == "giklImproving") {
    detail::require_dims(pt, 3, thm);
    const Rational s = pt[0] + pt[1];
    return {le("d/p1 + 1/p2 <= 1 + 1/p", D * pt[0] + pt[1], 1 + pt[2]),
            le("1/p1 + d/p2 <= 1 + 1/p", pt[0] + D * pt[1], 1 + pt[2]), le("1/p <= 1/p1 + 1/p2", pt[2], s),
            le("1/p1 + 1/p2 <= d/p", s, D * pt[2])};
  }
  if (thm == "gikl_pi") {
    detail::require_dims(pt, 3, thm);
    return {le("3/p1 + 3/p2 <= 1 + 3/p", 3 * (pt[0] + pt[1]), 1 + 3 * pt[2])};
  }
  if (std::find(theorem_ids().begin(), theorem_ids().end(), thm) != theorem_ids().end()) return {};
  throw UnknownTheorem("unknown theorem id: " + thm);
}

namespace detail {

inline Classification make(const std::string& thm, const ExponentPoint& pt, Verdict v, std::string stratum,
                           std::vector<std::string> cites) {
  Classification c;
  c.theorem = thm;
  c.point = pt;
  c.verdict = v;
  c.stratum = std::move(stratum);
  c.citations = std::move(cites);
  return c;
}

inline Classification classify_dosidis(const ExponentPoint& pt, const std::string& thm) {
  const std::size_t m = pt.size();
  if (m < 2) throw IncompatiblePoint(thm + " needs at least two coordinates");
  for (const auto& c : pt.coords) {
    if (c > 1) throw IncompatiblePoint(thm + ": coordinates must lie in [0,1]");
  }
  const Rational total = sum(pt.coords);
  const Rational M = static_cast<long long>(m);
  bool loo_ok = true, loo_edge = false;
  for (std::size_t i = 0; i < m; ++i) {
    const Rational rest = total - pt[i];
    loo_ok = loo_ok && rest < M - rat(3, 2);
    loo_edge = loo_edge || rest == M - rat(3, 2);
  }
  const bool sum_ok = total < M - 1;
  bool corner = total > 0;
  for (const auto& c : pt.coords) corner = corner && (c == 0 || c == 1);
  if (loo_edge) return make(thm, pt, Verdict::unbounded, "leave-one-out sum equals m-3/2", {"dosidisRamos/weak-fails"});
  if (corner) {
    return sum_ok && loo_ok ? make(thm, pt, Verdict::weak, "cube corner", {"dosidisRamos/weak-corner"})
                            : make(thm, pt, Verdict::unbounded, "cube corner", {"dosidisRamos/only-if"});
  }
  if (sum_ok && loo_ok) return make(thm, pt, Verdict::strong, "interior", {"dosidisRamos/if"});
  return make(thm, pt, Verdict::unbounded, "outside", {"dosidisRamos/only-if"});
}

inline bool on_lkj(const Coords& c) {
  const std::size_t m = c.size();
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t j = 0; j < m; ++j) {
      if (c[j] != rat(1, 2)) continue;
      if (c[k] > rat(1, 2)) continue;
      bool rest = true;
      for (std::size_t i = 0; i < m; ++i) {
        if (i != k && i != j) rest = rest && c[i] == 1;
      }
      if (rest) return true;
    }
  }
  return false;
}

inline Classification classify_linear_ar(const ExponentPoint& pt, const std::string& thm) {
  require_dims(pt, 2, thm);
  const auto checks = necessary_gap(pt, "linearAr");
  if (!all_hold(checks)) return make(thm, pt, Verdict::unbounded, "outside necessary region", {"linearAr/only-if"});
  const auto t = vertex_table("linearAr", pt.d, pt.r);
  const Coords p{pt[0], pt[1]};
  for (const char* v : {"P", "Q", "R"}) {
    if (p == get(t, v)) return make(thm, pt, Verdict::restricted_weak, v, {"linearAr/restricted-weak-vertex"});
  }
  const Coords q = get(t, "Q"), r = get(t, "R");
  if (p[0] == q[0] && p[1] > q[1] && p[1] < r[1]) {
    return make(thm, pt, Verdict::restricted_strong, "open segment QR",
                {"linearAr/restricted-strong-QR", "restrictedexample/no-L^{p0,s}-bound-for-s>1"});
  }
  return make(thm, pt, Verdict::strong, "closed hull OAPQR minus {P,Q,R} and QR", {"linearAr/strong"});
}

inline Classification classify_linear_br(const ExponentPoint& pt, const std::string& thm) {
  require_dims(pt, 2, thm);
  const auto t = vertex_table("linearBr", pt.d, pt.r);
  const Coords p{pt[0], pt[1]};
  const Rational D = pt.d;
  const Rational &x = p[0], &y = p[1];
  const Coords P = get(t, "P"), Q = get(t, "Q"), R = get(t, "R");
  if (!geom::in_hull2(vertices_of(t, {"O", "A", "P", "Q", "R"}), p, false)) {
    return make(thm, pt, Verdict::unbounded, "outside hull OAPQR", {"linearBr/same-range-as-linearAr"});
  }
  auto with = [&](Classification c, Rational e) {
    c.delta_exponent = e;
    return c;
  };
  if (geom::in_hull2(vertices_of(t, {"O", "P'", "Q'", "R'"}), p, true)) {
    return with(make(thm, pt, Verdict::strong, "stratum 1: open hull OP'Q'R'", {"linearBr/stratum-1"}), 0);
  }
  if (p != P && geom::in_hull2(vertices_of(t, {"O", "A", "P", "P'"}), p, false)) {
    return with(make(thm, pt, Verdict::strong, "stratum 2: hull OAPP' minus P", {"linearBr/stratum-2"}), D * y - x);
  }
  if (p != P && p != Q && geom::in_hull2(vertices_of(t, {"P", "Q", "Q'", "P'"}), p, false)) {
    return with(make(thm, pt, Verdict::strong, "stratum 3: hull PQQ'P' minus P, Q", {"linearBr/stratum-3"}),
                (D - 1 + (D - 1) * y - (D + 1) * x) / 2);
  }
  const bool on_qr = geom::on_segment(Q, R, p);
  if (!on_qr && geom::in_hull2(vertices_of(t, {"Q", "R", "R'", "Q'"}), p, false)) {
    return with(make(thm, pt, Verdict::strong, "stratum 4: hull QRR'Q' minus QR", {"linearBr/stratum-4"}), D - 1 - D * x);
  }
  return make(thm, pt, Verdict::open, "not covered by any stratum", {"linearBr"});
}

inline Classification classify_bilinear_local(const ExponentPoint& pt, const std::string& thm) {
  require_dims(pt, 3, thm);
  const Rational D = pt.d;
  const Rational &x1 = pt[0], &x2 = pt[1], &z = pt[2];
  if (x1 > 1 || x2 > 1 || z >= 2) throw IncompatiblePoint(thm + ": need 1 <= p1,p2 <= inf and p > 1/2");
  const Rational s = x1 + x2;
  if (z == 0) {
    return s <= 1 ? make(thm, pt, Verdict::strong, "p = inf", {"jeongLee/p-infinite"})
                  : make(thm, pt, Verdict::unbounded, "p = inf", {"jeongLee/p-infinite"});
  }
  const bool jl = z <= s && s < std::min({(2 * D - 1) / D, 1 + D * z, z + 2 * (D - 1) / D});
  if (thm == "jeongLee") {
    if (jl) return make(thm, pt, Verdict::strong, "sufficient region", {"jeongLee/if"});
    if (!all_hold(necessary_gap(pt, thm))) return make(thm, pt, Verdict::unbounded, "necessary fails", {"jeongLee/only-if"});
    return make(thm, pt, Verdict::open, "between sufficient and necessary", {"jeongLee"});
  }
  const Rational k = 2 * D * D + D;
  const Rational rhs = k * z + 4 * D * D - 2 * D + 2;
  const bool c1 = z <= s && s < std::min({(2 * D - 1) / D, 1 + D * z, (2 * D - 1) * z / (2 * D + 1) + 2 * (2 * D - 1) / (2 * D + 1)});
  const bool c2 = (k + 4) * x1 + k * x2 < rhs;
  const bool c3 = k * x1 + (k + 4) * x2 < rhs;
  if (c1 && c2 && c3) return make(thm, pt, Verdict::strong, "conditions (1)-(3)", {"slicedbilinearimproving/if"});
  const auto checks = necessary_gap(pt, thm);
  if (!all_hold(checks)) {
    return make(thm, pt, Verdict::unbounded, "necessary fails", {"jeongLee/only-if", "knapp-necessary"});
  }
  if (x1 == x2) {
    const auto t = vertex_table(thm, pt.d);
    if (geom::in_hull2(vertices_of(t, {"F", "B'", "C"}), Coords{x1, z}, false)) {
      return make(thm, pt, Verdict::open, "triangle FB'C", {"slicedbilinearimproving/open-FB'C"});
    }
  }
  return make(thm, pt, Verdict::open, "undetermined", {"slicedbilinearimproving"});
}

}  // namespace detail

// Exact verdict for `pt` under theorem `thm`.
inline Classification classify(const ExponentPoint& pt, const std::string& thm) {
  using detail::make;
  if (thm == "dosidisRamos") return detail::classify_dosidis(pt, thm);
  if (thm == "mlinearspherical") {
    if (detail::on_lkj(pt.coords)) return make(thm, pt, Verdict::restricted_weak, "segment L_{k,j}", {"mlinearspherical"});
    auto c = detail::classify_dosidis(pt, thm);
    c.citations.push_back("mlinearspherical/not-on-L_{k,j}");
    return c;
  }
  if (thm == "fullmaximal_d1") {
    detail::require_dims(pt, 2, thm);
    const Rational &x1 = pt[0], &x2 = pt[1];
    const Rational half = rat(1, 2);
    if ((x1 == half && x2 <= half) || (x2 == half && x1 <= half)) {
      return make(thm, pt, Verdict::restricted_weak, "U1U2 or U2U3", {"fullmaximal/d=1"});
    }
    auto c = detail::classify_dosidis(pt, thm);
    c.citations.push_back("fullmaximal/d=1-context");
    return c;
  }
  if (thm == "fullmaximal_d2") {
    detail::require_dims(pt, 2, thm);
    const Rational &x1 = pt[0], &x2 = pt[1];
    if (x1 > 1 || x2 > 1) throw IncompatiblePoint(thm + ": coordinates must lie in [0,1]");
    const Rational s = x1 + x2;
    if (s == rat(3, 2)) {
      if (x1 > rat(1, 2) && x1 < 1) return make(thm, pt, Verdict::restricted_weak, "open segment V1V2", {"fullmaximal/d=2"});
      return make(thm, pt, Verdict::open, x1 == 1 ? "V1" : "V2", {"fullmaximal/d=2-excluded-endpoint"});
    }
    if (s > rat(3, 2)) return make(thm, pt, Verdict::unbounded, "1/p1 + 1/p2 > 3/2", {"jeongLee/full-maximal"});
    if ((x1 == 1 && x2 == 0) || (x1 == 0 && x2 == 1)) {
      return make(thm, pt, Verdict::unbounded, "excluded corner", {"jeongLee/full-maximal-exception"});
    }
    return make(thm, pt, Verdict::strong, "1/p1 + 1/p2 < 3/2", {"jeongLee/full-maximal"});
  }
  if (thm == "jeongLee" || thm == "slicedbilinearimproving") return detail::classify_bilinear_local(pt, thm);
  if (thm == "linearAr") return detail::classify_linear_ar(pt, thm);
  if (thm == "linearArStar") {
    if (pt.size() == 2 && pt[0] != pt[1]) throw IncompatiblePoint("linearArStar: only p = q is covered");
    if (pt.size() != 1 && pt.size() != 2) throw IncompatiblePoint("linearArStar expects (1/p) or (1/p, 1/p)");
    const Rational ir = detail::inv_r(pt);
    const Rational crit = (pt.d - 1 + ir) / pt.d;
    if (pt[0] < crit) return make(thm, pt, Verdict::strong, "p > dr/(dr-r+1)", {"linearAr/maximal"});
    if (pt[0] == crit) {
      return pt.r->is_infinite() ? make(thm, pt, Verdict::open, "endpoint, r = inf", {"linearAr/maximal"})
                                 : make(thm, pt, Verdict::restricted_weak, "p = dr/(dr-r+1)", {"linearAr/maximal-endpoint"});
    }
    return make(thm, pt, Verdict::unbounded, "p < dr/(dr-r+1)", {"linearAr/only-if"});
  }
  if (thm == "linearBr") return detail::classify_linear_br(pt, thm);
  if (thm == "schlag") {
    detail::require_dims(pt, 2, thm);
    const auto t = vertex_table(thm, 2);
    const Coords p{pt[0], pt[1]};
    auto with = [&](Classification c, std::optional<Rational> e) {
      c.delta_exponent = e;
      return c;
    };
    if (geom::in_hull2(vertices_of(t, {"O", "S", "H"}), p, true)) return with(make(thm, pt, Verdict::strong, "stratum 1", {"schlag/1"}), Rational(0));
    if (geom::in_hull2(vertices_of(t, {"O", "L1", "S"}), p, false)) return with(make(thm, pt, Verdict::strong, "stratum 2 (up to eps)", {"schlag/2"}), 2 * p[1] - p[0]);
    if (geom::in_hull2(vertices_of(t, {"S", "L1", "H"}), p, false)) return with(make(thm, pt, Verdict::strong, "stratum 3 (up to eps)", {"schlag/3"}), (1 + p[1] - 3 * p[0]) / 2);
    if (geom::in_hull2(vertices_of(t, {"H", "L1", "L2"}), p, false)) return with(make(thm, pt, Verdict::strong, "stratum 4", {"schlag/4"}), 1 - 2 * p[0]);
    return make(thm, pt, Verdict::open, "not covered", {"schlag"});
  }
  if (thm == "gikl" || thm == "gikl_pi") {
    detail::require_dims(pt, 3, thm);
    const auto t = vertex_table(thm, 2);
    std::vector<Coords> v;
    for (const auto& [n, c] : t) v.push_back(c);
    if (geom::in_hull3(v, pt.coords)) return make(thm, pt, Verdict::strong, "closed hull", {"gikl/if"});
    if (pt[2] <= 1) return make(thm, pt, Verdict::unbounded, "outside hull, p >= 1", {"gikl/sharp-for-p>=1"});
    if (thm == "gikl_pi" && !detail::all_hold(necessary_gap(pt, thm))) {
      return make(thm, pt, Verdict::unbounded, "necessary fails", {"gikl/necessary", "productNecessary"});
    }
    return make(thm, pt, Verdict::open, "p < 1 outside hull", {"gikl/open-below-1"});
  }
  if (thm == "Mfull") {
    detail::require_dims(pt, 2, thm);
    if (pt[0] >= 1 || pt[1] >= 1) throw IncompatiblePoint("Mfull: need 1 < p1, p2");
    if (pt[0] >= rat(1, 2) || pt[1] >= rat(1, 2)) {
      return make(thm, pt, Verdict::unbounded, "p1 <= 2 or p2 <= 2", {"Mfull/no-restricted-weak"});
    }
    if (pt[0] + pt[1] < rat(1, 2)) return make(thm, pt, Verdict::strong, "p > 2", {"Mfull/interpolation-range"});
    return make(thm, pt, Verdict::open, "local L^2 range", {"Mfull/open"});
  }
  if (thm == "linearized") {
    detail::require_dims(pt, 2, thm);
    const Rational half = rat(1, 2);
    if (pt[0] < half && pt[1] < half) return make(thm, pt, Verdict::strong, "p1, p2 > 2", {"linearized/strong"});
    if ((pt[0] == half && pt[1] <= half) || (pt[1] == half && pt[0] <= half)) {
      return make(thm, pt, Verdict::restricted_weak, "p1 = 2 or p2 = 2", {"linearized/restricted-weak"});
    }
    return make(thm, pt, Verdict::open, "not claimed", {"linearized"});
  }
  if (thm == "productNecessary" || thm == "giklImproving") {
    const auto checks = necessary_gap(pt, thm);
    return detail::all_hold(checks) ? make(thm, pt, Verdict::open, "necessary conditions hold", {thm})
                                    : make(thm, pt, Verdict::unbounded, "necessary condition fails", {thm});
  }
  throw UnknownTheorem("unknown theorem id: " + thm);
}

// Vertices of the theorem's main hull in counter-clockwise order (2-D theorems only).
inline VertexTable hull_vertices(const std::string& thm, int d, std::optional<Exponent> r = std::nullopt) {
  const auto table = vertex_table(thm, d, r);
  if (table.empty() || table.front().second.size() != 2) return table;
  std::vector<Coords> pts;
  for (const auto& [n, c] : table) pts.push_back(c);
  VertexTable out;
  for (const auto& h : geom::hull2(pts)) {
    for (const auto& [n, c] : table) {
      if (c == h) {
        out.push_back({n, c});
        break;
      }
    }
  }
  return out;
}

inline void write_hull_csv(std::ostream& out, const VertexTable& t) {
  out << "name";
  const std::size_t dims = t.empty() ? 0 : t.front().second.size();
  for (std::size_t i = 0; i < dims; ++i) out << ",x" << i;
  for (std::size_t i = 0; i < dims; ++i) out << ",x" << i << "_exact";
  out << '\n';
  for (const auto& [n, c] : t) {
    out << n;
    for (const auto& v : c) out << ',' << to_double(v);
    for (const auto& v : c) out << ',' << to_string(v);
    out << '\n';
  }
}

}  // namespace sphavg

#endif  // SPHAVG_REGIONS_HPP_
