#ifndef SPHAVG_SWEEP_HPP_
#define SPHAVG_SWEEP_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sphavg/config.hpp"
#include "sphavg/examples.hpp"
#include "sphavg/funcspace.hpp"
#include "sphavg/rational.hpp"
#include "sphavg/regions.hpp"

namespace sphavg {

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t n = 0;
  std::vector<double> residuals;
};

// Least squares of log y against log x. A flat response (no spread in log y) gets R² = 1.
inline ScalingFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_loglog: need at least two matched points");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) throw std::domain_error("fit_loglog: data must be positive");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_loglog: ladder has no spread");
  ScalingFit fit;
  fit.n = lx.size();
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double e = ly[i] - (fit.intercept + fit.slope * lx[i]);
    fit.residuals.push_back(e);
    ss_res += e * e;
  }
  fit.r2 = syy <= 1e-20 * n ? 1.0 : 1.0 - ss_res / syy;
  return fit;
}

struct SweepPlan {
  std::string generator = "figA";  // figA | product | dyadic_op | dyadic_norm
  std::map<std::string, std::string> params;
  std::vector<double> ladder;  // δ for figA, 2^k for product, N for the dyadic sums
  double tolerance = 0.1;
  double r2_min = 0.98;
  int resolution = 1;
  unsigned threads = 1;
  std::uint64_t seed = 42;

  std::string get(const std::string& key, const std::string& fallback) const {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  }
};

struct SweepRow {
  double parameter = 0.0;
  double measured = 0.0;
  double measured_refined = 0.0;
};

struct SweepResult {
  std::string generator;
  std::string label;
  Rational predicted;
  double tolerance = 0.1;
  double r2_min = 0.98;
  ScalingFit fit;
  ScalingFit fit_refined;  // resolution doubled
  std::vector<SweepRow> rows;
  std::string note;

  bool within_tolerance() const { return std::abs(fit.slope - to_double(predicted)) <= tolerance; }
  bool k_stable() const { return std::abs(fit.slope - fit_refined.slope) < 0.5 * tolerance; }
  bool r2_ok() const { return fit.r2 >= r2_min; }
  bool pass() const { return within_tolerance() && k_stable() && r2_ok(); }
};

namespace detail {

inline std::vector<double> measure_ladder(const SweepPlan& plan, int k, Rational& predicted, std::string& label) {
  std::vector<double> out;
  const std::string& gen = plan.generator;
  if (gen == "figA") {
    const int row = std::stoi(plan.get("row", "1"));
    const int d = std::stoi(plan.get("d", "2"));
    const Exponent r = Exponent::parse(plan.get("r", "2"));
    const double c = std::stod(plan.get("c", "4"));
    const auto points = static_cast<std::size_t>(std::stoul(plan.get("points", "6")));
    for (double delta : plan.ladder) {
      if (d == 2) {
        const FigAExample<2> ex(row, delta, c);
        predicted = ex.gamma(r);
        label = ex.certifies();
        out.push_back(measure_figA<2>(ex, {r}, points, k, plan.seed, plan.threads)[0]);
      } else if (d == 3) {
        const FigAExample<3> ex(row, delta, c);
        predicted = ex.gamma(r);
        label = ex.certifies();
        out.push_back(measure_figA<3>(ex, {r}, points, k, plan.seed, plan.threads)[0]);
      } else {
        throw std::invalid_argument("figA sweep: d must be 2 or 3");
      }
    }
    return out;
  }
  if (gen == "product") {
    ProductTypeSpec s;
    s.alpha1 = s.alpha2 = std::stod(plan.get("alpha", "0.9"));
    s.beta1 = s.beta2 = std::stod(plan.get("beta", "0.9"));
    s.p1 = std::stod(plan.get("p1", "2"));
    s.p2 = std::stod(plan.get("p2", "2"));
    s.cap = std::ldexp(1.0, -std::stoi(plan.get("cap_log2", "16")));
    const int n = std::stoi(plan.get("sphere_log2", "20"));
    const auto points = static_cast<std::size_t>(std::stoul(plan.get("points", "8")));
    {
      const Rational a = parse_rational(plan.get("alpha", "0.9")), b = parse_rational(plan.get("beta", "0.9"));
      const Rational q1 = parse_rational(plan.get("p1", "2")), q2 = parse_rational(plan.get("p2", "2"));
      predicted = a / q1 + b / q2 + a / (2 * q1) + b / (2 * q2) - rat(1, 2);
    }
    label = "product-type lower bound on B_k";
    for (double scale : plan.ladder) {
      const int kk = static_cast<int>(std::lround(std::log2(scale)));
      out.push_back(product_average(s, kk, points, (1 << n) * k, plan.threads));
    }
    return out;
  }
  if (gen == "dyadic_op" || gen == "dyadic_norm") {
    const int d = std::stoi(plan.get("d", "2"));
    const Exponent r = Exponent::parse(plan.get("r", "1"));
    const double a = std::stod(plan.get("a", "0.25"));
    const Exponent s = Exponent::parse(plan.get("s", "2"));
    const double dist = std::stod(plan.get("radius", "1.5"));
    for (double nv : plan.ladder) {
      const DyadicSum f = make_dyadic_sum({static_cast<int>(std::lround(nv)), a, d, r});
      if (gen == "dyadic_op") {
        out.push_back(ar_ball_sum(f, dist, r, static_cast<std::size_t>(24 * k)));
      } else {
        out.push_back(lorentz_norm(f.simple(), {f.spec.p0(), s}));
      }
    }
    predicted = gen == "dyadic_op" ? Rational(1) : s.reciprocal();
    label = gen == "dyadic_op" ? "A^r f on the annulus grows like N" : "||f||_{p0,s} grows like N^{1/s}";
    return out;
  }
  throw std::invalid_argument("unknown sweep generator: " + gen);
}

}  // namespace detail

inline SweepResult run_sweep(const SweepPlan& plan) {
  if (plan.ladder.size() < 4) throw std::invalid_argument("run_sweep: ladder needs at least four points");
  if (!(plan.tolerance > 0.0)) throw std::invalid_argument("run_sweep: tolerance must be positive");
  SweepResult res;
  res.generator = plan.generator;
  res.tolerance = plan.tolerance;
  res.r2_min = plan.r2_min;
  const auto base = detail::measure_ladder(plan, plan.resolution, res.predicted, res.label);
  const auto fine = detail::measure_ladder(plan, 2 * plan.resolution, res.predicted, res.label);
  for (std::size_t i = 0; i < plan.ladder.size(); ++i) res.rows.push_back({plan.ladder[i], base[i], fine[i]});
  res.fit = fit_loglog(plan.ladder, base);
  res.fit_refined = fit_loglog(plan.ladder, fine);
  return res;
}

inline void write_sweep_csv(std::ostream& out, const SweepResult& r) {
  const auto precision = out.precision(10);
  out << "rung,parameter,measured,measured_refined,predicted,residual\n";
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto& row = r.rows[i];
    out << i << ',' << row.parameter << ',' << row.measured << ',' << row.measured_refined << ','
        << to_double(r.predicted) << ',' << (i < r.fit.residuals.size() ? r.fit.residuals[i] : 0.0) << '\n';
  }
  out.precision(precision);
}

// Measured slopes of ||f||_p (through |supp f|) and |E| on a δ ladder, by cell-centre counting (d = 2).
struct GeometrySlopes {
  double f_measure_slope = 0.0;  // compare with alpha_coefficient
  double e_measure_slope = 0.0;  // compare with beta
  Rational f_predicted;
  Rational e_predicted;
};

template <class F>
double grid_measure(const F& indicator, const Pt<2>& lo, const Pt<2>& hi, int mx, int my) {
  const double hx = (hi[0] - lo[0]) / mx, hy = (hi[1] - lo[1]) / my;
  std::size_t count = 0;
  for (int i = 0; i < mx; ++i) {
    for (int j = 0; j < my; ++j) count += indicator(Pt<2>{lo[0] + (i + 0.5) * hx, lo[1] + (j + 0.5) * hy}) > 0.0;
  }
  return static_cast<double>(count) * hx * hy;
}

inline GeometrySlopes geometry_slopes(int row, const std::vector<double>& deltas, double c = 4.0) {
  std::vector<double> fm, em;
  GeometrySlopes g;
  for (double delta : deltas) {
    const FigAExample<2> ex(row, delta, c);
    g.f_predicted = ex.alpha_coefficient();
    g.e_predicted = ex.beta();
    const auto [flo, fhi] = ex.f_box();
    const auto [elo, ehi] = ex.e_box();
    const int mf = row == 1 ? static_cast<int>(std::ceil(4.0 * (fhi[0] - flo[0]) / delta)) : 512;
    fm.push_back(grid_measure(ex, flo, fhi, mf, mf));
    em.push_back(grid_measure([&](const Pt<2>& x) { return ex.in_test_set(x) ? 1.0 : 0.0; }, elo, ehi, 512, 512));
  }
  g.f_measure_slope = fit_loglog(deltas, fm).slope;
  g.e_measure_slope = fit_loglog(deltas, em).slope;
  return g;
}

// Scaling form of the necessary condition: δ^{γ} |E|^{1/q} <~ ||f||_p forces α/p <= γ + β/q.
struct NecessaryReport {
  std::string label;
  double lhs = 0.0;  // α-coefficient / p
  double rhs = 0.0;  // γ + β / q, from fitted or exact exponents
  bool satisfied_measured = false;
  bool satisfied_exact = false;
  bool boundary_exact = false;
};

inline NecessaryReport necessary_condition_report(int row, int d, const Exponent& r, const Exponent& p, const Exponent& q,
                                                  double gamma_fit, double tolerance = 0.1) {
  NecessaryReport rep;
  Rational alpha, beta;
  if (d == 2) {
    const FigAExample<2> ex(row, 0.125);
    alpha = ex.alpha_coefficient();
    beta = ex.beta();
    rep.label = ex.certifies();
  } else {
    const FigAExample<3> ex(row, 0.125);
    alpha = ex.alpha_coefficient();
    beta = ex.beta();
    rep.label = ex.certifies();
  }
  rep.lhs = to_double(alpha * p.reciprocal());
  rep.rhs = gamma_fit + to_double(beta * q.reciprocal());
  rep.satisfied_measured = rep.lhs <= rep.rhs + tolerance;
  const ExponentPoint pt{{p.reciprocal(), q.reciprocal()}, d, r};
  const auto checks = necessary_gap(pt, "linearAr");
  const auto& exact = checks.at(static_cast<std::size_t>(row - 1));
  rep.satisfied_exact = exact.satisfied;
  rep.boundary_exact = exact.boundary;
  return rep;
}

// ---------------------------------------------------------------------------------------------
// Kakeya-type family: lower bound ℳ >= cδ and the restricted weak-type ratio.

struct KakeyaRung {
  int n = 0;
  double delta = 0.0;
  double union_area = 0.0;       // |∪ R_l|
  double translate_area = 0.0;   // |∪ R_{l,ν}|
  double g_area = 0.0;           // |supp g|
  double fraction_above = 0.0;   // share of sampled x with ℳ >= cδ
  std::vector<double> maximal;   // ℳ at the sampled points
  double ratio = 0.0;            // λ |{ℳ > λ}|^{1/p} / (||f||_{p1,1} ||g||_{p2,1}), λ = cδ
  double corrected = 0.0;        // ratio / log2(1/δ)^{1/p1}
};

struct WeakTypeResult {
  Exponent p1, p2, p;
  double c = 0.0;
  double predicted_slope = 0.0;  // 1 - 2/p1 in δ
  std::vector<KakeyaRung> rungs;
  ScalingFit fit;                // corrected ratio against δ
  bool monotone = false;         // ratio increases as δ decreases

  double min_fraction() const {
    double m = 1.0;
    for (const auto& r : rungs) m = std::min(m, r.fraction_above);
    return m;
  }
};

inline WeakTypeResult weak_type_ratio_sweep(const Exponent& p1, const Exponent& p2, const Exponent& p, int n_lo, int n_hi,
                                            double theta, std::size_t samples, int k, std::uint64_t seed,
                                            unsigned threads = 1) {
  if (n_hi - n_lo + 1 < 4) throw std::invalid_argument("weak_type_ratio_sweep: need at least four rungs");
  WeakTypeResult res;
  res.p1 = p1;
  res.p2 = p2;
  res.p = p;
  res.predicted_slope = 1.0 - 2.0 * to_double(p1.reciprocal());
  for (int n = n_lo; n <= n_hi; ++n) {
    const KakeyaFamily fam = make_kakeya(n, theta);
    KakeyaRung rung;
    rung.n = n;
    rung.delta = fam.delta;
    rung.union_area = fam.union_area();
    rung.translate_area = fam.translates.area_estimate(1024);
    rung.g_area = fam.g_support.area_estimate(1024);
    const auto pts = fam.sample_translates(samples, seed + static_cast<std::uint64_t>(n));
    rung.maximal.resize(pts.size());
    parallel_for(pts.size(), threads, [&](std::size_t i) { rung.maximal[i] = kakeya_maximal(fam, pts[i], k); });
    if (n == n_lo) {
      std::vector<double> sorted;
      for (double m : rung.maximal) sorted.push_back(m / fam.delta);
      std::sort(sorted.begin(), sorted.end());
      res.c = 0.5 * sorted[sorted.size() / 2];
    }
    const double lambda = res.c * fam.delta;
    std::size_t above = 0;
    for (double m : rung.maximal) above += m >= lambda;
    rung.fraction_above = static_cast<double>(above) / static_cast<double>(pts.size());
    auto indicator_norm = [](double area, const Exponent& e) {
      return lorentz_norm(SimpleFunction{{1.0}, {area}}, {e, Exponent::from_value(1)});
    };
    const double level_set = rung.translate_area * rung.fraction_above;
    rung.ratio = lambda * std::pow(level_set, to_double(p.reciprocal())) /
                 (indicator_norm(rung.union_area, p1) * indicator_norm(rung.g_area, p2));
    rung.corrected = rung.ratio / std::pow(static_cast<double>(n), to_double(p1.reciprocal()));
    res.rungs.push_back(std::move(rung));
  }
  std::vector<double> ds, cs;
  res.monotone = true;
  for (std::size_t i = 0; i < res.rungs.size(); ++i) {
    ds.push_back(res.rungs[i].delta);
    cs.push_back(res.rungs[i].corrected);
    if (i > 0 && !(res.rungs[i].ratio > res.rungs[i - 1].ratio)) res.monotone = false;
  }
  res.fit = fit_loglog(ds, cs);
  return res;
}

inline void write_weak_csv(std::ostream& out, const WeakTypeResult& r) {
  out.precision(10);
  out << "n,delta,union_area,translate_area,g_area,fraction_above,ratio,corrected\n";
  for (const auto& g : r.rungs) {
    out << g.n << ',' << g.delta << ',' << g.union_area << ',' << g.translate_area << ',' << g.g_area << ','
        << g.fraction_above << ',' << g.ratio << ',' << g.corrected << '\n';
  }
}

// ---------------------------------------------------------------------------------------------
// Experiment files: [sweep] kind + ladder_log2, plus a section named after the kind.

struct RunSettings {
  std::uint64_t seed = 0;
  unsigned threads = 0;
  int resolution = 1;
};

// Overrides win when set: seed when `seed_override`, threads when nonzero, resolution when above 1.
inline RunSettings run_settings(const ExperimentConfig& cfg, std::optional<std::uint64_t> seed_override = std::nullopt,
                                unsigned threads = 0, int resolution = 1) {
  RunSettings s;
  const auto seed = cfg.tree.get_optional<std::uint64_t>("run.seed");
  if (!seed && !seed_override) throw ConfigError(cfg.path + ": run.seed is required (randomized sweep)");
  s.seed = seed_override ? *seed_override : *seed;
  s.threads = threads ? threads : cfg.value<unsigned>("run.threads", 0u);
  s.resolution = resolution > 1 ? resolution : cfg.value<int>("run.resolution", 1);
  return s;
}

inline SweepPlan sweep_plan(const ExperimentConfig& cfg, const RunSettings& run) {
  SweepPlan plan;
  plan.generator = cfg.require<std::string>("sweep.kind");
  plan.seed = run.seed;
  plan.threads = run.threads;
  plan.resolution = run.resolution;
  plan.tolerance = cfg.value<double>("sweep.tolerance", 0.1);
  plan.r2_min = cfg.value<double>("sweep.r2_min", 0.98);
  for (int v : cfg.int_list("sweep.ladder_log2")) {
    plan.ladder.push_back(plan.generator == "figA" ? std::exp2(-v) : std::exp2(v));
  }
  if (const auto section = cfg.tree.get_child_optional(plan.generator)) {
    for (const auto& [key, node] : *section) plan.params[key] = node.data();
  }
  return plan;
}

struct KakeyaPlan {
  Exponent p1, p2, p;
  int n_lo = 3;
  int n_hi = 8;
  double theta = std::numbers::pi / 2;
  std::size_t samples = 64;
  double tolerance = 0.15;
};

inline KakeyaPlan kakeya_plan(const ExperimentConfig& cfg) {
  KakeyaPlan k;
  k.p1 = Exponent::parse(cfg.require<std::string>("kakeya.p1"));
  k.p2 = Exponent::parse(cfg.require<std::string>("kakeya.p2"));
  k.p = Exponent::parse(cfg.require<std::string>("kakeya.p"));
  if (k.p1.reciprocal() + k.p2.reciprocal() != k.p.reciprocal()) {
    throw ConfigError(cfg.path + ": kakeya.p must satisfy 1/p = 1/p1 + 1/p2");
  }
  k.n_lo = cfg.require<int>("kakeya.n_lo");
  k.n_hi = cfg.require<int>("kakeya.n_hi");
  k.theta = cfg.value<double>("kakeya.theta", std::numbers::pi / 2);
  k.samples = cfg.value<std::size_t>("kakeya.samples", 64);
  k.tolerance = cfg.value<double>("sweep.tolerance", 0.15);
  return k;
}

inline WeakTypeResult run_kakeya(const KakeyaPlan& k, const RunSettings& run) {
  return weak_type_ratio_sweep(k.p1, k.p2, k.p, k.n_lo, k.n_hi, k.theta, k.samples, run.resolution, run.seed, run.threads);
}

// p1 = 2: monotone growth over at least five rungs. p1 < 2: fitted slope within tolerance. p1 > 2 is not judged.
inline std::string kakeya_verdict(const KakeyaPlan& k, const WeakTypeResult& r) {
  const Rational inv1 = k.p1.reciprocal();
  if (inv1 < rat(1, 2)) return "NOT-JUDGED";
  if (inv1 == rat(1, 2)) return r.monotone && r.rungs.size() >= 5 ? "PASS" : "FAIL";
  return std::abs(r.fit.slope - r.predicted_slope) <= k.tolerance ? "PASS" : "FAIL";
}

}  // namespace sphavg

#endif  // SPHAVG_SWEEP_HPP_
