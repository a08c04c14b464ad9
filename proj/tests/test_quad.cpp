#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "sphavg/quad.hpp"

using namespace sphavg;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("sphere areas match closed forms", "[quad]") {
  const double pi = std::numbers::pi;
  CHECK_THAT(sphere_area(1), WithinRel(2.0, 1e-15));
  CHECK_THAT(sphere_area(2), WithinRel(2 * pi, 1e-15));
  CHECK_THAT(sphere_area(3), WithinRel(4 * pi, 1e-15));
  CHECK_THAT(sphere_area(4), WithinRel(2 * pi * pi, 1e-15));
}

TEST_CASE("gauss-legendre integrates polynomials exactly", "[quad]") {
  const GaussRule g = gauss_legendre(6, -1.0, 2.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) acc += g.weights[i] * std::pow(g.nodes[i], 11);
  // ∫_{-1}^2 x^11 = (4096 - 1) / 12
  CHECK_THAT(acc, WithinRel(4095.0 / 12.0, 1e-13));

  const GaussRule c = composite_gauss(0.0, 1.0, 5, 4);
  double e = 0.0;
  for (std::size_t i = 0; i < c.nodes.size(); ++i) e += c.weights[i] * std::exp(c.nodes[i]);
  CHECK_THAT(e, WithinRel(std::numbers::e - 1.0, 1e-12));
}

TEST_CASE("sphere rules carry the right total mass", "[quad]") {
  for (int d = 2; d <= 4; ++d) {
    CAPTURE(d);
    const SphereRule raw = sphere_rule(d, 16, MeasureMode::raw);
    const SphereRule nrm = sphere_rule(d, 16, MeasureMode::normalized);
    CHECK_THAT(raw.total_weight(), WithinRel(sphere_area(d), 1e-12));
    CHECK_THAT(nrm.total_weight(), WithinRel(1.0, 1e-12));
  }
}

TEST_CASE("sphere rules integrate low-degree monomials", "[quad]") {
  // normalized mean of y_1^2 over S^{d-1} is 1/d, of y_1^4 is 3/(d(d+2))
  for (int d = 2; d <= 4; ++d) {
    CAPTURE(d);
    const SphereRule r = sphere_rule(d, 24, MeasureMode::normalized);
    double m2 = 0.0, m4 = 0.0, odd = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double y = r.node(i)[d - 1];
      m2 += r.weights[i] * y * y;
      m4 += r.weights[i] * y * y * y * y;
      odd += r.weights[i] * y * y * y;
    }
    CHECK_THAT(m2, WithinRel(1.0 / d, 1e-12));
    CHECK_THAT(m4, WithinRel(3.0 / (d * (d + 2)), 1e-12));
    CHECK_THAT(odd, WithinAbs(0.0, 1e-14));
  }
}

TEST_CASE("sphere_rule rejects bad arguments", "[quad]") {
  CHECK_THROWS_AS(sphere_rule(5, 16, MeasureMode::raw), std::invalid_argument);
  CHECK_THROWS_AS(sphere_rule(2, 2, MeasureMode::raw), std::invalid_argument);
}

TEST_CASE("slicing mass reproduces the area of S^{2d-1}", "[quad][slicing]") {
  CHECK_THAT(slicing_mass(2), WithinRel(sphere_area(4), 1e-12));
  const double pi = std::numbers::pi;
  CHECK_THAT(slicing_mass(3), WithinRel(pi * pi * pi, 1e-12));
  CHECK_THAT(slicing_mass(4), WithinRel(pi * pi * pi * pi / 3.0, 1e-12));
}

TEST_CASE("slicing weight domain", "[quad][slicing]") {
  CHECK_THAT(slicing_weight(0.5, 2), WithinRel(0.5, 1e-15));
  CHECK_THROWS_AS(slicing_weight(0.0, 2), std::domain_error);
  CHECK_THROWS_AS(slicing_weight(1.0, 2), std::domain_error);
  CHECK_THROWS_AS(slicing_weight(0.5, 1), std::domain_error);
}

TEST_CASE("rotation is counter-clockwise", "[quad]") {
  const Pt<2> v = rotate({1.0, 0.0}, 0.5 * std::numbers::pi);
  CHECK_THAT(v[0], WithinAbs(0.0, 1e-15));
  CHECK_THAT(v[1], WithinAbs(1.0, 1e-15));
}
