#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "sphavg/lpdecomp.hpp"
#include "sphavg/sweep.hpp"

using namespace sphavg;
using Catch::Matchers::WithinAbs;

TEST_CASE("bump multipliers", "[lpdecomp]") {
  const MultiplierBank bank(10);
  CHECK(bank.phi_hat(0.3) == 1.0);
  CHECK(bank.phi_hat(1.0) == 1.0);
  CHECK(bank.phi_hat(2.0) == 0.0);
  CHECK_THAT(bank.phi_hat(1.5), WithinAbs(0.5, 1e-10));
  double prev = 1.0;
  for (double rho = 1.0; rho <= 2.0; rho += 1.0 / 64) {
    const double v = bank.phi_hat(rho);
    CHECK(v <= prev + 1e-15);
    prev = v;
  }
  // ψ_j lives on [2^{j-1}, 2^{j+1}]
  CHECK(bank.psi_hat(4, 7.9) == 0.0);
  CHECK(bank.psi_hat(4, 32.1) == 0.0);
  CHECK(bank.psi_hat(4, 16.0) > 0.9);
  CHECK_THROWS(MultiplierBank(0));
}

TEST_CASE("partition of unity", "[lpdecomp]") {
  const MultiplierBank bank(10);
  CHECK(partition_check(bank, 1.0, 2.0).max_error <= 1e-8);
  const auto wide = partition_check(bank, 0.5, 512.0);
  CHECK(wide.in_range);
  CHECK(wide.max_error <= 1e-8);
  const auto beyond = partition_check(bank, 1.0, 2048.0);
  CHECK_FALSE(beyond.in_range);
  CHECK(beyond.max_error > 0.5);
}

TEST_CASE("pieces telescope back to the field", "[lpdecomp]") {
  const MultiplierBank bank(10);
  std::mt19937_64 rng(7);
  const GridFunction f = band_limited_noise(2, bank, 64, 4.0, rng);
  CHECK_THAT(lp_norm(f, Exponent::from_value(2)), WithinAbs(1.0, 1e-12));
  GridFunction sum = lp_piece(f, 0, bank);
  for (int j = 1; j <= 3; ++j) {
    const GridFunction p = lp_piece(f, j, bank);
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += p[i];
  }
  double err = 0.0;
  for (std::size_t i = 0; i < sum.size(); ++i) err = std::max(err, std::abs(sum[i] - f[i]));
  CHECK(err <= 1e-8);
  // spectrum of a band-2 field sits in [2, 8], where the low piece vanishes
  const GridFunction low = lp_piece(f, 0, bank);
  CHECK(lp_norm(low, Exponent::infinity()) <= 1e-10);
}

TEST_CASE("unresolved frequencies are rejected", "[lpdecomp]") {
  const MultiplierBank bank(10);
  const GridFunction coarse(2, {-1.0, -1.0, 0.0}, {0.25, 0.25, 1.0}, {8, 8, 1});
  CHECK_THROWS_AS(lp_piece(coarse, 6, bank), AliasingError);
  CHECK_THROWS_AS(lp_piece(coarse, -1, bank), std::invalid_argument);
}

TEST_CASE("L2 operator norm decays like 2^{-j/2}", "[lpdecomp]") {
  const MultiplierBank bank(12);
  std::vector<double> js, norms;
  for (int j = 3; j <= 8; ++j) {
    js.push_back(std::exp2(j));
    norms.push_back(a2j_l2_norm(bank, j));
  }
  CHECK_THAT(fit_loglog(js, norms).slope, WithinAbs(-0.5, 0.05));
}

TEST_CASE("point-mass response grows like 2^{j/r'}", "[lpdecomp]") {
  const MultiplierBank bank(10);
  std::vector<double> js, r2, rinf;
  for (int j = 3; j <= 6; ++j) {
    js.push_back(std::exp2(j));
    r2.push_back(a_rj_point_mass(bank, j, 1.5, Exponent::from_value(2), 1e-4, std::size_t{1} << j));
    rinf.push_back(a_rj_point_mass(bank, j, 1.5, Exponent::infinity(), 1e-4, std::size_t{1} << j));
  }
  CHECK_THAT(fit_loglog(js, r2).slope, WithinAbs(0.5, 0.15));
  CHECK_THAT(fit_loglog(js, rinf).slope, WithinAbs(1.0, 0.15));
}

TEST_CASE("kernel decay constant is j-stable", "[lpdecomp]") {
  const MultiplierBank bank(10);
  const DecayFit a = kernel_decay_fit(DecayCheckSpec::standard(4, 4), bank);
  const DecayFit b = kernel_decay_fit(DecayCheckSpec::standard(6, 4), bank);
  CHECK(a.constant > 0.0);
  CHECK(std::max(a.constant, b.constant) / std::min(a.constant, b.constant) < 2.0);
  CHECK(a.radii.size() == a.values.size());
  CHECK_THROWS(kernel_decay_fit(DecayCheckSpec::standard(4, 1), bank));
}
