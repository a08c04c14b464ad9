#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "sphavg/examples.hpp"

using namespace sphavg;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

template <class F>
double box_measure(const F& indicator, const Pt<2>& lo, const Pt<2>& hi, int m) {
  const double hx = (hi[0] - lo[0]) / m, hy = (hi[1] - lo[1]) / m;
  double acc = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) acc += indicator(Pt<2>{lo[0] + (i + 0.5) * hx, lo[1] + (j + 0.5) * hy});
  }
  return acc * hx * hy;
}

}  // namespace

TEST_CASE("row sets have their closed-form measures", "[examples][rows]") {
  for (int row = 1; row <= 3; ++row) {
    CAPTURE(row);
    const FigAExample<2> ex(row, 1.0 / 16, row == 3 ? 1.0 : 4.0);
    const auto [lo, hi] = ex.f_box();
    CHECK_THAT(box_measure(ex, lo, hi, 800), WithinRel(ex.f_measure(), 0.02));
    const auto [elo, ehi] = ex.e_box();
    const double e = box_measure([&](const Pt<2>& x) { return ex.in_test_set(x) ? 1.0 : 0.0; }, elo, ehi, 800);
    CHECK_THAT(e, WithinRel(ex.e_measure(), 0.02));
  }
}

TEST_CASE("row exponents", "[examples][rows]") {
  const Exponent two = Exponent::parse("2"), inf = Exponent::infinity();
  CHECK(FigAExample<2>(1, 0.1).gamma(two) == rat(1, 2));
  CHECK(FigAExample<2>(2, 0.1).gamma(inf) == 1);
  CHECK(FigAExample<3>(3, 0.1).gamma(two) == rat(3, 2));
  CHECK(FigAExample<2>(4, 0.1).gamma(two) == 0);
  CHECK(FigAExample<3>(2, 0.1).alpha_coefficient() == 3);
  CHECK(FigAExample<2>(3, 0.1).beta() == rat(1, 2));
  CHECK(FigAExample<2>(4, 0.1).certifies() == "1/q <= 1/p");
}

TEST_CASE("row construction guards", "[examples][rows]") {
  CHECK_THROWS_AS(FigAExample<2>(5, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(FigAExample<2>(1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(FigAExample<2>(1, 0.25, 4.0), std::invalid_argument);
  const FigAExample<2> ex(2, 1.0 / 64);
  CHECK_THROWS_AS(ex.check_resolution({16, 4}), ResolutionError);
  CHECK_NOTHROW(ex.check_resolution(ex.resolution(1)));
}

TEST_CASE("row measurements are thread-count independent", "[examples][rows]") {
  const FigAExample<2> ex(2, 1.0 / 16);
  const std::vector<Exponent> rs{Exponent::parse("1"), Exponent::parse("2"), Exponent::infinity()};
  const auto one = measure_figA<2>(ex, rs, 6, 1, 11, 1);
  const auto four = measure_figA<2>(ex, rs, 6, 1, 11, 4);
  CHECK(one == four);
  CHECK(one[0] <= one[1]);
  CHECK(one[1] <= one[2] * std::sqrt(1.5) + 1e-12);
}

TEST_CASE("Kakeya union stays near delta^2 / log(1/delta)", "[examples][kakeya]") {
  for (int n = 4; n <= 7; ++n) {
    const KakeyaFamily fam = make_kakeya(n);
    CAPTURE(n);
    CHECK(fam.directions() == (std::size_t{1} << n));
    const double ratio = fam.union_area() / (fam.delta * fam.delta / std::log2(1.0 / fam.delta));
    CHECK(ratio > 0.5);
    CHECK(ratio < 2.0);
  }
  CHECK_THROWS(make_kakeya(1));
}

TEST_CASE("Kakeya sample points lie in the translated rectangles", "[examples][kakeya]") {
  const KakeyaFamily fam = make_kakeya(4);
  for (const auto& p : fam.sample_translates(50, 3)) {
    CHECK(fam.translates(p.x) == 1.0);
    CHECK(p.radius >= 1.0);
    CHECK(p.radius <= 2.0);
    const Pt<2> base{p.x[0] - p.radius * fam.normal[p.l][0], p.x[1] - p.radius * fam.normal[p.l][1]};
    CHECK(fam.f(base) == 1.0);
  }
}

TEST_CASE("Kakeya maximal lower bound is of order delta", "[examples][kakeya]") {
  const KakeyaFamily fam = make_kakeya(4);
  for (const auto& p : fam.sample_translates(8, 5)) CHECK(kakeya_maximal(fam, p) >= 0.05 * fam.delta);
}

TEST_CASE("dyadic sums", "[examples][dyadic]") {
  const DyadicSum f = make_dyadic_sum({4, 0.25, 2, Exponent::from_value(2)});
  CHECK(f.spec.p0().reciprocal() == rat(3, 4));
  REQUIRE(f.radii.size() == 4);
  const SimpleFunction s = f.simple();
  CHECK_NOTHROW(s.validate());
  CHECK_THAT(s.total_measure(), WithinRel(std::numbers::pi * std::pow(0.25 / 4.0, 2), 1e-13));
  CHECK(f(Pt<2>{0.0, 0.0}) == f.cumulative.back());
  CHECK(f(Pt<2>{1.0, 0.0}) == 0.0);
  CHECK_THROWS(make_dyadic_sum({0, 0.25, 2, Exponent::from_value(2)}));
}

TEST_CASE("exact cap fractions match direct quadrature", "[examples][dyadic]") {
  const DyadicSum f = make_dyadic_sum({1, 0.25, 2, Exponent::from_value(1)});
  const SphereRule rule = sphere_rule(2, 1 << 14, MeasureMode::normalized);
  const Pt<2> x{1.5, 0.0};
  const double direct = ar_value<2>(f, x, Exponent::from_value(1), rule, 64);
  CHECK_THAT(ar_ball_sum(f, 1.5, Exponent::from_value(1)), WithinRel(direct, 2e-3));
  CHECK_THAT(ball_fraction(2, 2.0, 0.0, 1e-3), WithinRel(2.0 * std::asin(0.5e-3 / 2.0) / std::numbers::pi, 1e-9));
  CHECK_THROWS(ball_fraction(2, 0.5, 0.0, 1.0));
}

TEST_CASE("product-type pair", "[examples][product]") {
  ProductTypeSpec s;
  CHECK_THAT(s.predicted_exponent(), WithinAbs(0.85, 1e-15));
  for (const auto& x : product_points(5, 16)) {
    CHECK(x[0] >= std::ldexp(1.0, -5));
    CHECK(x[0] <= std::ldexp(1.0, -4));
    CHECK(x[1] >= std::exp2(-2.5));
    CHECK(x[1] <= std::exp2(-2.0) + 1e-15);
  }
  s.alpha1 = 1.0;
  CHECK_THROWS(s.validate());
  CHECK(product_average(ProductTypeSpec{}, 5, 4, 1 << 14) > product_average(ProductTypeSpec{}, 4, 4, 1 << 14));
}
