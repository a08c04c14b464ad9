#include <catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "sphavg/funcspace.hpp"

using namespace sphavg;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

GridFunction unit_interval_indicator() {
  // cells of width 1/4 on [-2, 2]; value 1 on [0, 1]
  GridFunction f(1, {-2.0, 0.0, 0.0}, {0.25, 1.0, 1.0}, {16, 1, 1});
  for (std::size_t i = 8; i < 12; ++i) f[i] = 1.0;
  return f;
}

}  // namespace

TEST_CASE("lorentz norm of an indicator has the closed form", "[funcspace][lorentz]") {
  const SimpleFunction chi{{1.0}, {0.37}};
  for (const char* p : {"1", "3/2", "2", "4"}) {
    for (const char* q : {"1", "2", "3"}) {
      const Exponent pe = Exponent::parse(p), qe = Exponent::parse(q);
      const double expected = std::pow(pe.value_double() / qe.value_double(), 1.0 / qe.value_double()) *
                              std::pow(0.37, 1.0 / pe.value_double());
      CAPTURE(p, q);
      CHECK_THAT(lorentz_norm(chi, {pe, qe}), WithinRel(expected, 1e-12));
    }
  }
  CHECK_THAT(lorentz_norm(chi, {Exponent::parse("2"), Exponent::infinity()}), WithinRel(std::sqrt(0.37), 1e-14));
}

TEST_CASE("lorentz L^{p,p} equals L^p", "[funcspace][lorentz]") {
  const SimpleFunction f{{3.0, 1.5, 0.25}, {0.5, 2.0, 7.0}};
  for (const char* p : {"1", "2", "5/2"}) {
    const Exponent e = Exponent::parse(p);
    CAPTURE(p);
    CHECK_THAT(lorentz_norm(f, {e, e}), WithinRel(lp_norm(f, e), 1e-12));
  }
}

TEST_CASE("lorentz norms decrease in the second index", "[funcspace][lorentz]") {
  const SimpleFunction f{{4.0, 2.0, 1.0, 0.5}, {0.1, 0.3, 1.0, 5.0}};
  const Exponent p = Exponent::parse("3");
  const double n1 = lorentz_norm(f, {p, Exponent::parse("1")});
  const double n3 = lorentz_norm(f, {p, Exponent::parse("3")});
  const double ninf = lorentz_norm(f, {p, Exponent::infinity()});
  CHECK(n1 >= n3);
  CHECK(n3 >= ninf);
}

TEST_CASE("simple functions validate their shape", "[funcspace]") {
  CHECK_THROWS_AS((SimpleFunction{{1.0, 2.0}, {1.0, 1.0}}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((SimpleFunction{{1.0}, {0.0}}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((SimpleFunction{{1.0}, {1.0, 2.0}}.validate()), std::invalid_argument);
}

TEST_CASE("rearrangement merges equal values and drops zeros", "[funcspace]") {
  const SimpleFunction f = rearrangement({{1.0, 0.5}, {0.0, 3.0}, {2.0, 0.25}, {1.0, 0.5}});
  REQUIRE(f.levels.size() == 2);
  CHECK(f.levels[0] == 2.0);
  CHECK_THAT(f.measures[1], WithinRel(1.0, 1e-15));
  CHECK_THAT(distribution_function(f, 0.5), WithinRel(1.25, 1e-15));
  CHECK(distribution_function(f, 2.0) == 0.0);
}

TEST_CASE("grid lp norms of an indicator", "[funcspace]") {
  const GridFunction f = unit_interval_indicator();
  CHECK_THAT(lp_norm(f, Exponent::parse("1")), WithinRel(1.0, 1e-14));
  CHECK_THAT(lp_norm(f, Exponent::parse("3")), WithinRel(1.0, 1e-14));
  CHECK(lp_norm(f, Exponent::infinity()) == 1.0);
}

TEST_CASE("grid sampling and interpolation", "[funcspace]") {
  const auto f = GridFunction::sample<2>(Pt<2>{-1.0, -1.0}, Pt<2>{1.0, 1.0}, {40, 40},
                                         [](const Pt<2>& p) { return 2.0 * p[0] + p[1]; });
  CHECK(f.dim() == 2);
  CHECK(f.size() == 1600);
  CHECK_THAT(f.multilinear(Pt<2>{0.3, -0.2}), WithinAbs(0.4, 1e-12));
  CHECK(f.nearest(Pt<2>{5.0, 0.0}) == 0.0);
}

TEST_CASE("grid binary round trip", "[funcspace]") {
  const GridFunction f = unit_interval_indicator();
  std::stringstream buf;
  f.write_binary(buf);
  const GridFunction g = GridFunction::read_binary(buf);
  CHECK(g.values() == f.values());
  CHECK(g.shape() == f.shape());
  CHECK(g.lo() == f.lo());
}

TEST_CASE("uncentred maximal function of an interval indicator", "[funcspace][maximal]") {
  const GridFunction f = unit_interval_indicator();
  const Exponent one = Exponent::parse("1");
  CHECK_THAT(hl_maximal(f, one, 0.5), WithinRel(1.0, 1e-14));
  CHECK_THAT(hl_maximal(f, one, 1.5), WithinRel(2.0 / 3.0, 1e-14));
  CHECK_THAT(hl_maximal(f, one, -1.0), WithinRel(0.5, 1e-14));
  // M_p of an indicator is (M_1)^{1/p}
  CHECK_THAT(hl_maximal(f, Exponent::parse("3"), 1.5), WithinRel(std::cbrt(2.0 / 3.0), 1e-14));
  CHECK_THROWS(hl_maximal(f, Exponent::infinity(), 0.0));
}
