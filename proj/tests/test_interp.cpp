#include <catch_amalgamated.hpp>

#include <sstream>

#include "sphavg/interp.hpp"
#include "sphavg/regions.hpp"

using namespace sphavg;

namespace {

EndpointEstimate est(Rational inv_in, Rational inv_out, Rational rate) {
  return {{Exponent::from_reciprocal(inv_in)}, Exponent::from_reciprocal(inv_out), rate, "M"};
}

}  // namespace

TEST_CASE("combining a growing and a decaying estimate", "[interp]") {
  const InterpolatedPoint p = bourgain_combine(est(1, 0, rat(1, 2)), est(rat(1, 2), rat(1, 2), rat(-3, 2)));
  CHECK(p.theta == rat(3, 4));
  CHECK(p.input_reciprocals.at(0) == rat(3, 4) + rat(1, 8));
  CHECK(p.output_reciprocal == rat(1, 8));
  CHECK(p.growth_norm_power + p.decay_norm_power == 1);
  CHECK(p.from_infinite_q1);
}

TEST_CASE("combination preconditions", "[interp]") {
  const auto grow = est(1, 0, 1);
  const auto decay = est(rat(1, 2), rat(1, 2), -1);
  CHECK_THROWS_AS(bourgain_combine(decay, grow), InterpolationError);
  CHECK_THROWS_AS(bourgain_combine(grow, grow), InterpolationError);
  CHECK_THROWS_AS(bourgain_combine(decay, decay), InterpolationError);
  CHECK_THROWS_AS(bourgain_combine(grow, est(rat(1, 2), rat(1, 2), 0)), InterpolationError);
  EndpointEstimate two = grow;
  two.inputs.push_back(Exponent::from_value(2));
  CHECK_THROWS_AS(bourgain_combine(two, decay), InterpolationError);
}

TEST_CASE("all six table rows hit their vertex exactly", "[interp][table]") {
  const TableReport rep = reproduce_table();
  CHECK(rep.rows_exact() == 6);
  CHECK(rep.all_matched());
  std::size_t matched = 0;
  for (const auto& c : rep.checks) {
    if (c.status != "matched") continue;
    ++matched;
    const auto target = detail::get(vertex_table("linearAr", c.d, c.r), c.vertex);
    CAPTURE(c.row, c.d, c.r.str());
    REQUIRE(c.point);
    CHECK(c.point->input_reciprocals[0] == target[0]);
    CHECK(c.point->output_reciprocal == target[1]);
  }
  CHECK(matched >= 40);
}

TEST_CASE("r = 1 rows are degenerate rather than mismatched", "[interp][table]") {
  const TableReport rep = reproduce_table({2, 3}, {Exponent::from_value(1)});
  REQUIRE_FALSE(rep.checks.empty());
  for (const auto& c : rep.checks) CHECK(c.status == "degenerate");
}

TEST_CASE("table rows respect their applicability ranges", "[interp][table]") {
  const auto& rows = interpolation_table();
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].applies(2, Exponent::from_value(2)));
  CHECK_FALSE(rows[0].applies(3, Exponent::from_value(2)));
  CHECK_FALSE(rows[1].applies(2, Exponent::from_value(2)));
  CHECK(rows[2].applies(3, Exponent::from_value(2)));
  CHECK_FALSE(rows[2].applies(3, Exponent::from_value(3)));
  CHECK(rows[3].applies(3, Exponent::from_value(3)));
}

TEST_CASE("table csv layout", "[interp][table]") {
  std::ostringstream out;
  write_table_csv(out, reproduce_table({2}, {Exponent::from_value(2)}));
  const std::string s = out.str();
  CHECK(s.rfind("row,d,r,theta,inv_p,inv_q,vertex,status\n", 0) == 0);
  CHECK(s.find(",3/4,1/4,Q,matched") != std::string::npos);
}
