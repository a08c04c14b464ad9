#include <catch_amalgamated.hpp>

#include "sphavg/verify.hpp"

using namespace sphavg;

TEST_CASE("cheap suites pass", "[verify]") {
  for (const char* name : {"quadrature", "slicing", "lorentz", "interp-table", "regions-golden"}) {
    CAPTURE(name);
    const SuiteReport r = run_suite(name);
    CHECK(r.passed());
    CHECK(r.failures() == 0);
    for (const auto& c : r.checks) {
      CAPTURE(c.name, c.value, c.bound, c.detail);
      CHECK(c.passed);
    }
  }
}

TEST_CASE("randomized suites pass on a reduced case count", "[verify]") {
  VerifyOptions opt;
  opt.cases = 40;
  opt.threads = 1;
  for (const char* name : {"domination", "linearized"}) {
    CAPTURE(name);
    const SuiteReport r = run_suite(name, opt);
    for (const auto& c : r.checks) {
      CAPTURE(c.name, c.value, c.bound, c.detail);
      CHECK(c.passed);
    }
  }
}

TEST_CASE("suite results do not depend on the thread count", "[verify]") {
  VerifyOptions one, four;
  one.cases = four.cases = 20;
  one.threads = 1;
  four.threads = 4;
  const SuiteReport a = run_suite("domination", one), b = run_suite("domination", four);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].value == b.checks[i].value);
    CHECK(a.checks[i].detail == b.checks[i].detail);
  }
}

TEST_CASE("suite lookup", "[verify]") {
  CHECK(suite_names().size() == 8);
  CHECK_THROWS_AS(run_suite("no-such-suite"), UnknownSuite);
  const SuiteReport r = run_suite("slicing");
  REQUIRE(r.find("|S^3| by slicing") != nullptr);
  CHECK(r.find("|S^3| by slicing")->value <= 1e-10);
  CHECK(r.find("missing") == nullptr);
}
