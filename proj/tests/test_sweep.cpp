#include <catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "sphavg/sweep.hpp"

using namespace sphavg;
using Catch::Matchers::WithinAbs;

namespace {

SweepPlan figA_plan(int row, const std::string& r, double c = 4.0) {
  SweepPlan plan;
  plan.generator = "figA";
  plan.params = {{"row", std::to_string(row)}, {"d", "2"}, {"r", r}, {"c", std::to_string(c)}, {"points", "4"}};
  for (int v = 3; v <= 7; ++v) plan.ladder.push_back(std::exp2(-v));
  plan.seed = 3;
  return plan;
}

}  // namespace

TEST_CASE("log-log fit of an exact power law", "[sweep][fit]") {
  std::vector<double> x, y;
  for (int i = 0; i < 6; ++i) {
    x.push_back(std::exp2(-i));
    y.push_back(3.0 * std::pow(x.back(), 1.25));
  }
  const ScalingFit f = fit_loglog(x, y);
  CHECK_THAT(f.slope, WithinAbs(1.25, 1e-12));
  CHECK_THAT(f.intercept, WithinAbs(std::log(3.0), 1e-12));
  CHECK_THAT(f.r2, WithinAbs(1.0, 1e-12));
  CHECK(f.n == 6);

  const ScalingFit flat = fit_loglog(x, std::vector<double>(6, 2.0));
  CHECK(flat.slope == 0.0);
  CHECK(flat.r2 == 1.0);
  CHECK_THROWS(fit_loglog({1.0}, {1.0}));
}

TEST_CASE("row sweeps recover the tabulated exponent", "[sweep][rows]") {
  for (const char* r : {"1", "2", "inf"}) {
    CAPTURE(r);
    const SweepResult res = run_sweep(figA_plan(2, r));
    CHECK(res.pass());
    CHECK(res.rows.size() == 5);
    CHECK(res.label == "d/p <= d-1 + 1/r");
  }
  const SweepResult row3 = run_sweep(figA_plan(3, "2", 1.0));
  CHECK(row3.predicted == 1);
  CHECK(row3.pass());
}

TEST_CASE("sweeps validate their plan", "[sweep]") {
  SweepPlan short_plan = figA_plan(1, "2");
  short_plan.ladder.resize(3);
  CHECK_THROWS(run_sweep(short_plan));
  SweepPlan bad = figA_plan(1, "2");
  bad.generator = "nope";
  CHECK_THROWS(run_sweep(bad));
}

TEST_CASE("dyadic sum sweeps", "[sweep][dyadic]") {
  SweepPlan norm;
  norm.generator = "dyadic_norm";
  norm.params = {{"d", "2"}, {"r", "1"}, {"s", "2"}};
  for (int v = 2; v <= 6; ++v) norm.ladder.push_back(std::exp2(v));
  const SweepResult n = run_sweep(norm);
  CHECK(n.predicted == rat(1, 2));
  CHECK(n.pass());

  SweepPlan op;
  op.generator = "dyadic_op";
  op.params = {{"d", "2"}, {"r", "1"}, {"a", "0.25"}, {"radius", "1.5"}};
  op.ladder = norm.ladder;
  const SweepResult o = run_sweep(op);
  CHECK(o.predicted == 1);
  CHECK(o.pass());
}

TEST_CASE("sweep csv is stable and self-describing", "[sweep]") {
  const SweepResult res = run_sweep(figA_plan(4, "2"));
  std::ostringstream a, b;
  write_sweep_csv(a, res);
  write_sweep_csv(b, run_sweep(figA_plan(4, "2")));
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("rung,parameter,measured,measured_refined,predicted,residual\n", 0) == 0);
}

TEST_CASE("geometry slopes match the row exponents", "[sweep][rows]") {
  const std::vector<double> deltas{1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64};
  for (int row = 1; row <= 3; ++row) {
    CAPTURE(row);
    const GeometrySlopes g = geometry_slopes(row, deltas, row == 3 ? 1.0 : 4.0);
    CHECK_THAT(g.f_measure_slope, WithinAbs(to_double(g.f_predicted), 0.05));
    CHECK_THAT(g.e_measure_slope, WithinAbs(to_double(g.e_predicted), 0.05));
  }
}

TEST_CASE("necessary condition report", "[sweep][rows]") {
  const Exponent two = Exponent::parse("2");
  const NecessaryReport ok = necessary_condition_report(2, 2, two, Exponent::parse("4/3"), Exponent::parse("4"), 1.5);
  CHECK(ok.satisfied_exact);
  CHECK(ok.satisfied_measured);
  const NecessaryReport bad = necessary_condition_report(2, 2, two, Exponent::parse("1"), Exponent::parse("4"), 1.5);
  CHECK_FALSE(bad.satisfied_exact);
}

TEST_CASE("weak-type ratio on the Kakeya family", "[sweep][kakeya]") {
  const Exponent two = Exponent::parse("2"), one = Exponent::parse("1");
  const WeakTypeResult r = weak_type_ratio_sweep(two, two, one, 3, 6, std::numbers::pi / 2, 24, 1, 5, 1);
  CHECK(r.rungs.size() == 4);
  CHECK(r.monotone);
  CHECK(r.min_fraction() >= 0.95);
  CHECK(r.predicted_slope == 0.0);
  std::ostringstream out;
  write_weak_csv(out, r);
  CHECK(out.str().rfind("n,delta,union_area", 0) == 0);
  CHECK_THROWS(weak_type_ratio_sweep(two, two, one, 3, 5, std::numbers::pi / 2, 8, 1, 5, 1));
}
