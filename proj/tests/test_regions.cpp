#include <catch_amalgamated.hpp>

#include <sstream>

#include "sphavg/regions.hpp"
#include "sphavg/verify.hpp"

using namespace sphavg;

TEST_CASE("named vertices match hand-evaluated coordinates", "[regions][golden]") {
  for (const auto& g : detail::golden_vertices()) {
    CAPTURE(g.thm, g.d, g.name, g.r ? g.r->str() : std::string("-"));
    const auto table = vertex_table(g.thm, g.d, g.r);
    CHECK(detail::get(table, g.name) == g.expected);
  }
}

TEST_CASE("pinned probes land in the expected stratum", "[regions][golden]") {
  const auto probes = detail::golden_probes();
  REQUIRE(probes.size() >= 30);
  for (const auto& p : probes) {
    const Classification c = classify(ExponentPoint{p.coords, p.d, p.r}, p.thm);
    CAPTURE(p.thm, c.stratum, to_string(c.verdict));
    CHECK(c.verdict == p.verdict);
    CHECK(c.stratum.find(p.stratum) != std::string::npos);
    CHECK_FALSE(c.citations.empty());
  }
}

TEST_CASE("r-dependent vertices move with r", "[regions]") {
  const auto p2 = detail::get(vertex_table("linearAr", 3, Exponent::parse("2")), "P");
  const auto p4 = detail::get(vertex_table("linearAr", 3, Exponent::parse("4")), "P");
  CHECK(p2 != p4);
  CHECK_THROWS(vertex_table("linearAr", 2));
}

TEST_CASE("necessary conditions for the linear averages", "[regions]") {
  const auto two = Exponent::parse("2");
  // Q = (3/4, 1/4) sits on row 2 with equality for d = 2, r = 2
  const auto at_q = necessary_gap(ExponentPoint{{rat(3, 4), rat(1, 4)}, 2, two}, "linearAr");
  REQUIRE(at_q.size() == 4);
  CHECK(detail::all_hold(at_q));
  CHECK(at_q[1].boundary);
  const auto outside = necessary_gap(ExponentPoint{{rat(4, 5), rat(1, 2)}, 2, two}, "linearAr");
  CHECK_FALSE(detail::all_hold(outside));
  CHECK(necessary_gap(ExponentPoint{{rat(1, 2), rat(1, 4)}, 2, {}}, "linearized").empty());
}

TEST_CASE("input errors are reported", "[regions]") {
  CHECK_THROWS_AS(classify(ExponentPoint{{rat(1, 2), rat(1, 2)}, 2, {}}, "nope"), UnknownTheorem);
  CHECK_THROWS_AS(necessary_gap(ExponentPoint{{rat(1, 2)}, 2, Exponent::parse("2")}, "linearAr"), IncompatiblePoint);
  CHECK_THROWS_AS(classify(ExponentPoint{{rat(1, 2)}, 2, Exponent::parse("2")}, "linearAr"), IncompatiblePoint);
  CHECK_THROWS_AS(vertex_table("nope", 2), UnknownTheorem);
}

TEST_CASE("every theorem id is known", "[regions]") {
  for (const auto& id : theorem_ids()) {
    CAPTURE(id);
    for (std::size_t n : {1u, 2u, 3u}) {
      const ExponentPoint pt{Coords(n, rat(1, 4)), 2, Exponent::parse("2")};
      try {
        (void)necessary_gap(pt, id);
      } catch (const UnknownTheorem&) {
        FAIL("unknown theorem " << id);
      } catch (const IncompatiblePoint&) {
      }
    }
  }
}

TEST_CASE("hull export", "[regions]") {
  const auto hull = hull_vertices("linearAr", 2, Exponent::parse("2"));
  CHECK(hull.size() >= 4);
  std::ostringstream out;
  write_hull_csv(out, hull);
  CHECK(out.str().rfind("name,x0,x1,x0_exact,x1_exact\n", 0) == 0);
  CHECK(out.str().find("3/4") != std::string::npos);
}
