#ifndef SPHAVG_VERIFY_HPP_
#define SPHAVG_VERIFY_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sphavg/funcspace.hpp"
#include "sphavg/interp.hpp"
#include "sphavg/lpdecomp.hpp"
#include "sphavg/operators.hpp"
#include "sphavg/parallel.hpp"
#include "sphavg/quad.hpp"
#include "sphavg/regions.hpp"
#include "sphavg/sweep.hpp"

namespace sphavg {

struct Check {
  std::string name;
  bool passed = false;
  double value = 0.0;  // measured quantity (error, slope, violation count, ...)
  double bound = 0.0;  // what it was compared against
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  double seconds = 0.0;

  bool passed() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.passed; }));
  }
  const Check* find(const std::string& name) const {
    for (const auto& c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }
};

struct VerifyOptions {
  std::uint64_t seed = 20240601;
  unsigned threads = 0;
  int cases = 200;  // randomized cases per inequality family
};

struct UnknownSuite : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"quadrature", "slicing",        "domination",     "lpdecomp",
                                              "lorentz",    "interp-table",   "regions-golden", "linearized"};
  return names;
}

namespace detail {

inline Check check_le(std::string name, double value, double bound, std::string detail = {}) {
  return {std::move(name), value <= bound, value, bound, std::move(detail)};
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Sum of a few Gaussian bumps in the plane; amplitudes may be negative.
struct GaussianMix {
  struct Bump {
    double cx, cy, inv_w2, amp;
  };
  std::vector<Bump> bumps;

  double operator()(const Pt<2>& p) const {
    double s = 0.0;
    for (const auto& b : bumps) {
      const double dx = p[0] - b.cx, dy = p[1] - b.cy;
      s += b.amp * std::exp(-(dx * dx + dy * dy) * b.inv_w2);
    }
    return s;
  }

  template <class Rng>
  static GaussianMix random(Rng& rng, int count, double spread, bool signed_amp) {
    std::uniform_real_distribution<double> c(-spread, spread), w(0.4, 1.2), a(signed_amp ? -1.0 : 0.2, 1.0);
    GaussianMix g;
    for (int i = 0; i < count; ++i) {
      const double width = w(rng);
      const double cx = c(rng);
      const double cy = c(rng);
      g.bumps.push_back({cx, cy, 1.0 / (width * width), a(rng)});
    }
    return g;
  }
};

// Per-case seeds so that results do not depend on the thread count.
inline std::uint64_t case_seed(std::uint64_t seed, std::uint64_t family, std::uint64_t i) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(family), static_cast<std::uint32_t>(i)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

inline std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

// ---------------------------------------------------------------- quadrature

inline void suite_quadrature(SuiteReport& rep, const VerifyOptions&) {
  for (int d = 1; d <= 4; ++d) {
    const SphereRule raw = sphere_rule(d, 32, MeasureMode::raw);
    rep.checks.push_back(check_le("raw mass d=" + std::to_string(d), rel_err(raw.total_weight(), sphere_area(d)), 1e-12));
    const SphereRule nrm = sphere_rule(d, 32, MeasureMode::normalized);
    rep.checks.push_back(check_le("normalized mass d=" + std::to_string(d), std::abs(nrm.total_weight() - 1.0), 1e-12));
  }
  const SphereRule circle = sphere_rule(2, 64, MeasureMode::normalized);
  auto gauss = [](const Pt<2>& p) { return std::exp(-(p[0] * p[0] + p[1] * p[1])); };
  rep.checks.push_back(check_le("A_1 of exp(-|x|^2) at 0 equals 1/e",
                                rel_err(spherical_average<2>(gauss, Pt<2>{0.0, 0.0}, 1.0, circle), std::exp(-1.0)), 1e-13));
  // A_t of a linear function at x is its value at x.
  const SphereRule s3 = sphere_rule(3, 24, MeasureMode::normalized);
  auto lin = [](const Pt<3>& p) { return 2.0 * p[0] - p[1] + 0.5 * p[2] + 1.0; };
  const Pt<3> x{0.3, -0.2, 0.7};
  rep.checks.push_back(check_le("A_t of affine function, d=3", rel_err(spherical_average<3>(lin, x, 1.7, s3), lin(x)), 1e-12));
  const GaussRule g = gauss_legendre(12, 0.0, 1.0);
  double m = 0.0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) m += g.weights[i] * std::pow(g.nodes[i], 23);
  rep.checks.push_back(check_le("Gauss-Legendre 12 integrates t^23", rel_err(m, 1.0 / 24.0), 1e-13));
}

// ---------------------------------------------------------------- slicing

inline void suite_slicing(SuiteReport& rep, const VerifyOptions& opt) {
  rep.checks.push_back(check_le("|S^3| by slicing", std::abs(slicing_mass(2) - 2.0 * std::numbers::pi * std::numbers::pi), 1e-10));
  rep.checks.push_back(check_le("|S^5| by slicing", std::abs(slicing_mass(3) - std::pow(std::numbers::pi, 3)), 1e-10));
  const int n = 20;
  std::vector<double> err(n);
  const SphereRule r4 = sphere_rule(4, 64, MeasureMode::raw);
  const SphereRule r2 = sphere_rule(2, 64, MeasureMode::raw);
  parallel_for(n, opt.threads, [&](std::size_t i) {
    std::mt19937_64 rng(case_seed(opt.seed, 1, i));
    const auto f = GaussianMix::random(rng, 2, 1.5, false);
    const auto g = GaussianMix::random(rng, 2, 1.5, false);
    std::uniform_real_distribution<double> u(-1.0, 1.0), tt(1.0, 2.0);
    const Pt<2> x{u(rng), u(rng)};
    const double t = tt(rng);
    err[i] = rel_err(bilinear_average_sliced<2>(f, g, x, t, r2, 48), bilinear_average_direct<2>(f, g, x, t, r4));
  });
  rep.checks.push_back(check_le("direct vs sliced, 20 Gaussian cases", *std::max_element(err.begin(), err.end()), 1e-6));
}

// ---------------------------------------------------------------- domination

// Slicing integral of normalized averages: the left side of the domination inequality at one t.
template <class F, class G>
double sliced_normalized(const F& f, const G& g, const Pt<2>& x, double t, const SphereRule& raw_rule, std::size_t s_nodes) {
  const double area = sphere_area(2);
  return std::abs(bilinear_average_sliced<2>(f, g, x, t, raw_rule, s_nodes)) / (area * area);
}

inline Exponent random_r(std::mt19937_64& rng) {
  static const std::vector<Exponent> pool{Exponent::from_value(1), Exponent::from_value(rat(4, 3)),
                                          Exponent::from_value(2), Exponent::from_value(3), Exponent::infinity()};
  return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
}

inline void suite_domination(SuiteReport& rep, const VerifyOptions& opt) {
  const std::size_t n = static_cast<std::size_t>(opt.cases);
  const SphereRule raw = sphere_rule(2, 48, MeasureMode::raw);
  const SphereRule nrm = sphere_rule(2, 48, MeasureMode::normalized);

  // M(f,g)(x) over a global t-grid against C A^r_* f A^{r'}_* g.
  std::vector<double> ratio(n);
  parallel_for(n, opt.threads, [&](std::size_t i) {
    std::mt19937_64 rng(case_seed(opt.seed, 2, i));
    const auto f = GaussianMix::random(rng, 3, 2.0, true);
    const auto g = GaussianMix::random(rng, 3, 2.0, true);
    const Exponent r = random_r(rng);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const Pt<2> x{u(rng), u(rng)};
    double lhs = 0.0;
    for (double t : TimeGrid::global(8, -2, 1).times()) lhs = std::max(lhs, sliced_normalized(f, g, x, t, raw, 24));
    const double rhs = domination_constant(2, r) * ar_star<2>(f, x, r, -16, 1, nrm, 6) *
                       ar_star<2>(g, x, r.conjugate(), -16, 1, nrm, 6);
    ratio[i] = lhs / rhs;
  });
  std::size_t bad = static_cast<std::size_t>(std::count_if(ratio.begin(), ratio.end(), [](double v) { return v > 1.0; }));
  rep.checks.push_back({"domination by A^r_* A^r'_*", bad == 0, static_cast<double>(bad), 0.0,
                        std::to_string(n) + " cases, worst lhs/rhs " + fmt(*std::max_element(ratio.begin(), ratio.end()))});

  // T_k against both Hölder-chain bounds, with exact piecewise-constant integrals.
  std::vector<double> tk_ratio(n);
  parallel_for(n, opt.threads, [&](std::size_t i) {
    std::mt19937_64 rng(case_seed(opt.seed, 3, i));
    std::uniform_real_distribution<double> v(0.0, 1.0), u(-2.0, 2.0);
    GridFunction f(1, {-6.0, 0.0, 0.0}, {12.0 / 96.0, 1.0, 1.0}, {96, 1, 1});
    GridFunction g = f;
    for (double& a : f.values()) a = v(rng) < 0.3 ? 0.0 : v(rng);
    for (double& a : g.values()) a = v(rng) < 0.3 ? 0.0 : v(rng);
    const double x = u(rng);
    const int k = std::uniform_int_distribution<int>(1, 6)(rng);
    std::vector<double> times;
    for (int j = 0; j <= 24; ++j) times.push_back(0.25 * std::exp2(3.0 * j / 24.0));
    const double lhs = tk_operator(f, g, x, k, times);
    const Exponent three = Exponent::from_value(3), three_half = Exponent::from_value(rat(3, 2));
    const double up = tk_growth_constant() * std::exp2(k / 3.0) * hl_maximal(f, three, x) * hl_maximal(g, three_half, x);
    const double down = tk_decay_constant() * std::exp2(-k / 3.0) * hl_maximal(f, three_half, x) * hl_maximal(g, three, x);
    tk_ratio[i] = lhs == 0.0 ? 0.0 : lhs / std::min(up, down);
  });
  bad = static_cast<std::size_t>(std::count_if(tk_ratio.begin(), tk_ratio.end(), [](double v) { return v > 1.0 + 1e-12; }));
  rep.checks.push_back({"T_k Hoelder chain", bad == 0, static_cast<double>(bad), 0.0,
                        std::to_string(n) + " cases, worst lhs/bound " + fmt(*std::max_element(tk_ratio.begin(), tk_ratio.end()))});

  // The Hölder step that turns the sliced bilinear average into a product of L^r norms.
  std::vector<double> hb_ratio(n);
  parallel_for(n, opt.threads, [&](std::size_t i) {
    std::mt19937_64 rng(case_seed(opt.seed, 4, i));
    const auto f = GaussianMix::random(rng, 3, 2.0, true);
    const auto g = GaussianMix::random(rng, 3, 2.0, true);
    const Exponent r = random_r(rng);
    std::uniform_real_distribution<double> u(-1.0, 1.0), tt(0.5, 3.0);
    const Pt<2> x{u(rng), u(rng)};
    const auto [lhs, bound] = holder_bridge<2>(f, g, x, tt(rng), r, nrm, 32);
    hb_ratio[i] = bound == 0.0 ? 0.0 : lhs / bound;
  });
  bad = static_cast<std::size_t>(std::count_if(hb_ratio.begin(), hb_ratio.end(), [](double v) { return v > 1.0 + 1e-12; }));
  rep.checks.push_back({"Hoelder bridge", bad == 0, static_cast<double>(bad), 0.0,
                        std::to_string(n) + " cases, worst lhs/bound " + fmt(*std::max_element(hb_ratio.begin(), hb_ratio.end()))});
}

// ---------------------------------------------------------------- lpdecomp

inline void suite_lpdecomp(SuiteReport& rep, const VerifyOptions& opt) {
  const MultiplierBank bank(10);
  const auto pc = partition_check(bank, 1.0, 2.0);
  rep.checks.push_back(check_le("partition of unity on [1,2]", pc.max_error, 1e-8));
  const auto wide = partition_check(bank, 0.5, std::ldexp(1.0, 9));
  rep.checks.push_back(check_le("partition of unity on [1/2, 2^9]", wide.max_error, 1e-8));
  const auto out = partition_check(bank, 1.0, std::ldexp(1.0, 11));
  rep.checks.push_back({"out-of-range annulus flagged", !out.in_range && out.max_error > 0.5, out.max_error, 0.5, ""});

  // Telescoping reconstruction on a band-limited field.
  std::mt19937_64 rng(case_seed(opt.seed, 5, 0));
  const GridFunction f = band_limited_noise(2, bank, 64, 4.0, rng);
  GridFunction sum = lp_piece(f, 0, bank);
  for (int j = 1; j <= 3; ++j) {
    const GridFunction p = lp_piece(f, j, bank);
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += p[i];
  }
  double recon = 0.0;
  for (std::size_t i = 0; i < sum.size(); ++i) recon = std::max(recon, std::abs(sum[i] - f[i]));
  rep.checks.push_back(check_le("reconstruction from pieces 0..3", recon, 1e-8));

  std::vector<double> js, l2, pm2, pminf;
  for (int j = 3; j <= 8; ++j) {
    js.push_back(std::exp2(j));
    l2.push_back(a2j_l2_norm(bank, j));
    pm2.push_back(a_rj_point_mass(bank, j, 1.5, Exponent::from_value(2), 1e-4, std::size_t{1} << j));
    pminf.push_back(a_rj_point_mass(bank, j, 1.5, Exponent::infinity(), 1e-4, std::size_t{1} << j));
  }
  auto slope_check = [&](const std::string& name, const std::vector<double>& y, double predicted) {
    const ScalingFit fit = fit_loglog(js, y);
    rep.checks.push_back({name, std::abs(fit.slope - predicted) <= 0.15, fit.slope, predicted,
                          "R^2 " + fmt(fit.r2) + ", tolerance 0.15"});
  };
  slope_check("L2 -> L2 decay slope, r = 2", l2, -0.5);
  slope_check("L1 -> Linf growth slope, r = 2", pm2, 0.5);
  slope_check("L1 -> Linf growth slope, r = inf", pminf, 1.0);

  double lo = HUGE_VAL, hi = 0.0;
  for (int j = 4; j <= 7; ++j) {
    const double c = kernel_decay_fit(DecayCheckSpec::standard(j, 4), bank).constant;
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  rep.checks.push_back(check_le("kernel decay constant stable over j = 4..7 (max/min)", hi / lo, 2.0));
}

// ---------------------------------------------------------------- lorentz

inline void suite_lorentz(SuiteReport& rep, const VerifyOptions&) {
  double worst = 0.0, worst_weak = 0.0, worst_pp = 0.0;
  for (const auto& p : {Exponent::from_value(1), Exponent::from_value(rat(3, 2)), Exponent::from_value(2),
                        Exponent::from_value(rat(7, 2)), Exponent::from_value(10)}) {
    for (double m : {1e-3, 0.37, 1.0, 12.5, 4096.0}) {
      const SimpleFunction chi{{1.0}, {m}};
      const double pd = p.value_double();
      worst = std::max(worst, rel_err(lorentz_norm(chi, {p, Exponent::from_value(1)}), pd * std::pow(m, 1.0 / pd)));
      worst_weak = std::max(worst_weak, rel_err(lorentz_norm(chi, {p, Exponent::infinity()}), std::pow(m, 1.0 / pd)));
    }
    const SimpleFunction step{{3.0, 2.0, 0.5}, {0.25, 1.5, 7.0}};
    worst_pp = std::max(worst_pp, rel_err(lorentz_norm(step, {p, p}), lp_norm(step, p)));
  }
  rep.checks.push_back(check_le("indicator ||chi_E||_{p,1} = p|E|^{1/p}", worst, 1e-12));
  rep.checks.push_back(check_le("indicator ||chi_E||_{p,inf} = |E|^{1/p}", worst_weak, 1e-12));
  rep.checks.push_back(check_le("L^{p,p} equals L^p on a step function", worst_pp, 1e-12));
  const SimpleFunction step{{3.0, 2.0, 0.5}, {0.25, 1.5, 7.0}};
  const double d1 = distribution_function(step, 1.0);
  rep.checks.push_back(check_le("distribution function at lambda = 1", std::abs(d1 - 1.75), 1e-14));
  // L^{p,q} norms decrease in q.
  const Exponent p = Exponent::from_value(2);
  const double n1 = lorentz_norm(step, {p, Exponent::from_value(1)});
  const double n2 = lorentz_norm(step, {p, Exponent::from_value(2)});
  const double ninf = lorentz_norm(step, {p, Exponent::infinity()});
  rep.checks.push_back({"L^{2,1} >= L^{2,2} >= L^{2,inf}", n1 >= n2 && n2 >= ninf, n1, ninf, ""});
}

// ---------------------------------------------------------------- interp-table

inline void suite_interp(SuiteReport& rep, const VerifyOptions&) {
  const TableReport t = reproduce_table();
  std::size_t mismatches = 0;
  for (const auto& c : t.checks) mismatches += c.status == "mismatch";
  rep.checks.push_back({"table rows reproduce P/Q/R exactly", t.rows_exact() == 6, static_cast<double>(t.rows_exact()), 6.0,
                        std::to_string(t.rows_exact()) + "/6 rows exact"});
  rep.checks.push_back({"no mismatching (row, d, r) sample", mismatches == 0, static_cast<double>(mismatches), 0.0,
                        std::to_string(t.checks.size()) + " samples"});
}

// ---------------------------------------------------------------- regions-golden

struct GoldenVertex {
  std::string thm;
  int d;
  std::optional<Exponent> r;
  std::string name;
  Coords expected;
};

// Coordinates evaluated by hand from the figure captions and the displayed vertex formulas.
inline std::vector<GoldenVertex> golden_vertices() {
  const auto two = Exponent::from_value(2);
  const auto inf = Exponent::infinity();
  const auto one = Exponent::from_value(1);
  return {
      {"fullmaximal_d1", 1, {}, "U1", {rat(1, 2), 0}},
      {"fullmaximal_d1", 1, {}, "U2", {rat(1, 2), rat(1, 2)}},
      {"fullmaximal_d1", 1, {}, "U3", {0, rat(1, 2)}},
      {"fullmaximal_d2", 2, {}, "V1", {1, rat(1, 2)}},
      {"fullmaximal_d2", 2, {}, "V2", {rat(1, 2), 1}},
      {"slicedbilinearimproving", 2, {}, "A", {rat(1, 2), 0}},
      {"slicedbilinearimproving", 2, {}, "E", {rat(1, 2), 0}},
      {"slicedbilinearimproving", 2, {}, "F", {rat(9, 14), rat(1, 7)}},
      {"slicedbilinearimproving", 2, {}, "B'", {rat(7, 10), rat(1, 5)}},
      {"slicedbilinearimproving", 2, {}, "C", {rat(3, 4), rat(1, 2)}},
      {"slicedbilinearimproving", 2, {}, "D", {rat(3, 4), rat(3, 2)}},
      {"slicedbilinearimproving", 3, {}, "E", {rat(3, 4), rat(1, 6)}},
      {"slicedbilinearimproving", 3, {}, "F", {rat(25, 32), rat(3, 16)}},
      {"slicedbilinearimproving", 3, {}, "B'", {rat(4, 5), rat(1, 5)}},
      {"slicedbilinearimproving", 3, {}, "C", {rat(5, 6), rat(1, 3)}},
      {"slicedbilinearimproving", 3, {}, "D", {rat(5, 6), rat(5, 3)}},
      {"linearAr", 2, two, "A", {rat(1, 2), 0}},
      {"linearAr", 2, two, "P", {rat(7, 10), rat(1, 10)}},
      {"linearAr", 2, two, "Q", {rat(3, 4), rat(1, 4)}},
      {"linearAr", 2, two, "R", {rat(3, 4), rat(3, 4)}},
      {"linearAr", 3, inf, "A", {0, 0}},
      {"linearAr", 3, inf, "P", {rat(3, 5), rat(1, 5)}},
      {"linearAr", 3, inf, "Q", {rat(2, 3), rat(1, 3)}},
      {"linearAr", 3, inf, "R", {rat(2, 3), rat(2, 3)}},
      {"linearAr", 3, one, "P", {1, 0}},
      {"linearAr", 3, one, "R", {1, 1}},
      {"linearBr", 2, two, "P'", {rat(2, 5), rat(1, 5)}},
      {"linearBr", 2, two, "Q'", {rat(1, 2), rat(1, 2)}},
      {"linearBr", 3, two, "P'", {rat(3, 5), rat(1, 5)}},
      {"linearBr", 3, two, "Q'", {rat(2, 3), rat(1, 3)}},
      {"linearBr", 3, two, "R'", {rat(2, 3), rat(2, 3)}},
      {"schlag", 2, {}, "S", {rat(2, 5), rat(1, 5)}},
      {"schlag", 2, {}, "H", {rat(1, 2), rat(1, 2)}},
  };
}

struct GoldenProbe {
  std::string thm;
  Coords coords;
  int d;
  std::optional<Exponent> r;
  Verdict verdict;
  std::string stratum;  // substring of the expected stratum
};

inline std::vector<GoldenProbe> golden_probes() {
  const auto two = Exponent::from_value(2);
  const auto inf = Exponent::infinity();
  const auto rw = Verdict::restricted_weak;
  const auto st = Verdict::strong;
  const auto no = Verdict::unbounded;
  const auto op = Verdict::open;
  return {
      // linearAr, d = 2, r = 2: O A P Q R with P = (7/10, 1/10), Q = (3/4, 1/4), R = (3/4, 3/4).
      {"linearAr", {rat(7, 10), rat(1, 10)}, 2, two, rw, "P"},
      {"linearAr", {rat(3, 4), rat(1, 4)}, 2, two, rw, "Q"},
      {"linearAr", {rat(3, 4), rat(3, 4)}, 2, two, rw, "R"},
      {"linearAr", {rat(3, 4), rat(1, 2)}, 2, two, Verdict::restricted_strong, "open segment QR"},
      {"linearAr", {rat(1, 4), rat(1, 8)}, 2, two, st, "closed hull"},
      {"linearAr", {rat(1, 2), 0}, 2, two, st, "closed hull"},
      {"linearAr", {0, 0}, 2, two, st, "closed hull"},
      {"linearAr", {rat(1, 2), rat(1, 2)}, 2, two, st, "closed hull"},
      {"linearAr", {rat(29, 40), rat(7, 40)}, 2, two, st, "closed hull"},
      {"linearAr", {rat(3, 5), rat(1, 20)}, 2, two, st, "closed hull"},
      {"linearAr", {rat(3, 4), rat(7, 8)}, 2, two, no, "outside"},
      {"linearAr", {rat(4, 5), rat(1, 2)}, 2, two, no, "outside"},
      {"linearAr", {rat(3, 5), 0}, 2, two, no, "outside"},
      {"linearAr", {rat(2, 3), rat(1, 3)}, 3, inf, rw, "Q"},
      // linearBr, d = 2, r = 2.
      {"linearBr", {rat(1, 5), rat(1, 6)}, 2, two, st, "stratum 1"},
      {"linearBr", {rat(1, 2), 0}, 2, two, st, "stratum 2"},
      {"linearBr", {rat(3, 4), rat(1, 2)}, 2, two, op, "not covered"},
      {"linearBr", {rat(3, 5), rat(3, 5)}, 2, two, st, "stratum 4"},
      {"linearBr", {rat(9, 10), rat(1, 10)}, 2, two, no, "outside"},
      // full maximal function.
      {"fullmaximal_d2", {rat(3, 4), rat(3, 4)}, 2, {}, rw, "open segment V1V2"},
      {"fullmaximal_d2", {1, rat(1, 2)}, 2, {}, op, "V1"},
      {"fullmaximal_d2", {rat(1, 2), 1}, 2, {}, op, "V2"},
      {"fullmaximal_d2", {rat(1, 2), rat(1, 2)}, 2, {}, st, "< 3/2"},
      {"fullmaximal_d2", {1, rat(3, 4)}, 2, {}, no, "> 3/2"},
      {"fullmaximal_d2", {1, 0}, 2, {}, no, "excluded corner"},
      {"fullmaximal_d1", {rat(1, 2), rat(1, 4)}, 1, {}, rw, "U1U2"},
      {"fullmaximal_d1", {rat(1, 4), rat(1, 2)}, 1, {}, rw, "U2U3"},
      {"fullmaximal_d1", {rat(1, 4), rat(1, 4)}, 1, {}, st, "interior"},
      {"dosidisRamos", {rat(1, 2), 1}, 1, {}, no, "leave-one-out"},
      {"dosidisRamos", {rat(1, 4), rat(1, 4)}, 1, {}, st, "interior"},
      {"mlinearspherical", {rat(1, 2), rat(1, 4), 1}, 1, {}, rw, "L_{k,j}"},
      // local bilinear maximal function, d = 2: centroid of the open triangle F B' C on the diagonal.
      {"slicedbilinearimproving", {rat(293, 420), rat(293, 420), rat(59, 210)}, 2, {}, op, "FB'C"},
      {"slicedbilinearimproving", {rat(1, 4), rat(1, 4), rat(1, 4)}, 2, {}, st, "conditions"},
      {"slicedbilinearimproving", {1, 1, rat(1, 2)}, 2, {}, no, "necessary fails"},
      // Schlag-type strata.
      {"schlag", {rat(1, 4), rat(1, 5)}, 2, {}, st, "stratum 1"},
      {"schlag", {rat(3, 4), rat(1, 10)}, 2, {}, st, "stratum 3"},
      {"schlag", {rat(9, 10), rat(4, 5)}, 2, {}, st, "stratum 4"},
      // trilinear-form hull and the excluded region.
      {"gikl", {1, 1, rat(1, 2)}, 2, {}, no, "outside hull"},
      {"Mfull", {rat(1, 4), rat(1, 8)}, 2, {}, st, "p > 2"},
      {"Mfull", {rat(1, 2), rat(1, 8)}, 2, {}, no, "p1 <= 2"},
      {"Mfull", {rat(3, 8), rat(3, 8)}, 2, {}, op, "local L^2"},
      {"linearized", {rat(1, 2), rat(1, 4)}, 2, {}, rw, "p1 = 2"},
      {"linearized", {rat(1, 4), rat(1, 4)}, 2, {}, st, "p1, p2 > 2"},
      {"linearArStar", {rat(3, 4)}, 2, two, rw, "p = dr/(dr-r+1)"},
      {"linearArStar", {rat(1, 2)}, 2, two, st, "p > "},
      {"linearArStar", {rat(4, 5)}, 2, two, no, "p < "},
  };
}

inline std::string coords_str(const Coords& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? ", " : "") + to_string(c[i]);
  return s + ")";
}

inline void suite_regions(SuiteReport& rep, const VerifyOptions&) {
  std::size_t vbad = 0;
  std::string vdetail;
  for (const auto& v : golden_vertices()) {
    const Coords got = get(vertex_table(v.thm, v.d, v.r), v.name);
    if (got != v.expected) {
      ++vbad;
      vdetail += v.thm + " " + v.name + " = " + coords_str(got) + " expected " + coords_str(v.expected) + "; ";
    }
  }
  rep.checks.push_back({"vertex coordinates (" + std::to_string(golden_vertices().size()) + ")", vbad == 0,
                        static_cast<double>(vbad), 0.0, vdetail});
  std::size_t pbad = 0;
  std::string pdetail;
  const auto probes = golden_probes();
  for (const auto& p : probes) {
    const Classification c = classify(ExponentPoint{p.coords, p.d, p.r}, p.thm);
    if (c.verdict != p.verdict || c.stratum.find(p.stratum) == std::string::npos) {
      ++pbad;
      pdetail += p.thm + " " + coords_str(p.coords) + " -> " + to_string(c.verdict) + " [" + c.stratum + "]; ";
    }
  }
  rep.checks.push_back({"classification probes (" + std::to_string(probes.size()) + ")", pbad == 0 && probes.size() >= 30,
                        static_cast<double>(pbad), 0.0, pdetail});
}

// ---------------------------------------------------------------- linearized

inline void suite_linearized(SuiteReport& rep, const VerifyOptions& opt) {
  const DiscGrid grid(9.0, 16, 160);
  std::vector<double> err(10);
  parallel_for(err.size(), opt.threads, [&](std::size_t i) {
    std::mt19937_64 rng(case_seed(opt.seed, 6, i));
    const auto f = GaussianMix::random(rng, 1, 1.0, false);
    const auto g = GaussianMix::random(rng, 1, 1.0, false);
    const auto h = GaussianMix::random(rng, 1, 1.0, false);
    err[i] = rel_err(linearized_pairing_polar(f, g, h, grid, 80), linearized_pairing_direct(f, g, h, grid, 160));
  });
  rep.checks.push_back(check_le("duality identity, 10 Gaussian triples", *std::max_element(err.begin(), err.end()), 1e-4));

  const std::vector<std::pair<double, double>> probes{{3.0, 3.0}, {2.5, 10.0}, {4.0, 2.2}, {2.0, 3.0},
                                                      {1.5, 4.0}, {1.2, 1.2}, {6.0, 1.8}, {1.9, 2.1}};
  std::size_t bad = 0;
  std::string detail;
  for (const auto& [p1, p2] : probes) {
    const BetaProbe b = BetaProbe::from_exponents(p1, p2);
    const BetaConvergence c = beta_convergence(b);
    if (c.converges != b.predicted_finite()) {
      ++bad;
      detail += "(" + fmt(p1) + ", " + fmt(p2) + ") ";
    }
  }
  rep.checks.push_back({"beta finiteness predicate at 8 probes", bad == 0, static_cast<double>(bad), 0.0, detail});
}

}  // namespace detail

inline SuiteReport run_suite(const std::string& name, const VerifyOptions& opt = {}) {
  SuiteReport rep;
  rep.suite = name;
  const auto start = std::chrono::steady_clock::now();
  if (name == "quadrature") detail::suite_quadrature(rep, opt);
  else if (name == "slicing") detail::suite_slicing(rep, opt);
  else if (name == "domination") detail::suite_domination(rep, opt);
  else if (name == "lpdecomp") detail::suite_lpdecomp(rep, opt);
  else if (name == "lorentz") detail::suite_lorentz(rep, opt);
  else if (name == "interp-table") detail::suite_interp(rep, opt);
  else if (name == "regions-golden") detail::suite_regions(rep, opt);
  else if (name == "linearized") detail::suite_linearized(rep, opt);
  else throw UnknownSuite("unknown suite: " + name);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace sphavg

#endif  // SPHAVG_VERIFY_HPP_
