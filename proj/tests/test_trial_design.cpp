#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "equimax/errors.hpp"
#include "equimax/special_functions.hpp"
#include "equimax/trial_design.hpp"

namespace {

using namespace equimax;

EquicorrParams make(int k, double rho, std::vector<double> mu) {
  EquicorrParams p;
  p.k = k;
  p.rho = rho;
  p.mu = std::move(mu);
  return p;
}

}  // namespace

TEST_SUITE("trial_design") {

TEST_CASE("shift reference values") {
  CHECK(std::fabs(threshold_shift(0.5, 0.975) - 1.9599639845400542) <= 1e-12);
  CHECK(std::fabs(threshold_shift(0.025, 0.975) - 3.9199279690801085) <= 1e-12);
  CHECK(threshold_shift(0.2, 0.8) ==
        std_normal_quantile(0.8) - std_normal_quantile(0.2));
}

TEST_CASE("shift domain") {
  CHECK_THROWS_AS((void)threshold_shift(0.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS((void)threshold_shift(0.9, 0.5), std::invalid_argument);
  CHECK_THROWS_AS((void)threshold_shift(0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS((void)threshold_shift(0.5, 1.0), std::invalid_argument);
}

TEST_CASE("calibration reference values") {
  CHECK(std::fabs(calibrate_kappa(make(1, 0.5, {0.0})) - 0.5) <= 1e-12);
  CHECK(std::fabs(calibrate_kappa(make(2, 0.5, {0.0, 0.0})) - 1.0 / 3.0) <= 1e-10);
  CHECK(std::fabs(calibrate_kappa(make(1, 0.5, {-1.9599639845400542})) - 0.975) <=
        1e-10);
}

TEST_CASE("bound is exactly tight for a single component") {
  // with one component and calibrated kappa, P(X < shift) lands on zeta
  // for every mean, so the margin sits on the frontier
  for (double mu1 : {0.0, -0.7, -2.0}) {
    const auto p = make(1, 0.4, {mu1});
    const double kap = calibrate_kappa(p);
    for (double frac : {0.4, 0.95}) {
      const double zeta = kap + (1.0 - kap) * frac;
      const CorollaryResult r = corollary_check(p, kap, zeta);
      CHECK(std::fabs(r.margin) <= 1e-9);
      CHECK(std::fabs(r.attained - zeta) <= 1e-9);
      CHECK(std::fabs(r.shift - (std_normal_quantile(zeta) -
                                 std_normal_quantile(kap))) <= 1e-12);
    }
  }
}

TEST_CASE("bound is strict with several components") {
  const auto p = make(2, 0.5, {0.0, 0.0});
  const double kap = calibrate_kappa(p);
  for (double zeta : {0.8, 0.9, 0.99}) {
    const CorollaryResult r = corollary_check(p, kap, zeta);
    CHECK(r.margin > 0.0);
    CHECK(r.attained > zeta);
    CHECK(r.shift > 0.0);
    CHECK(r.kappa == kap);
    CHECK(r.zeta == zeta);
  }
}

TEST_CASE("slack in the hypothesis widens the margin") {
  const auto p = make(3, 0.3, {-0.2, -0.6, -1.0});
  const double kap = calibrate_kappa(p);
  const double tight = corollary_check(p, kap, 0.9).margin;
  const double slack = corollary_check(p, kap - 0.05, 0.9).margin;
  CHECK(tight > 0.0);
  CHECK(slack > tight);
}

TEST_CASE("an unsatisfiable hypothesis is rejected") {
  const auto p = make(2, 0.5, {0.0, 0.0});
  const double kap = calibrate_kappa(p);
  CHECK_THROWS_AS((void)corollary_check(p, kap + 0.01, 0.9), std::invalid_argument);
  CHECK_THROWS_AS((void)corollary_check(p, 0.0, 0.9), std::invalid_argument);
  CHECK_THROWS_AS((void)corollary_check(p, 0.2, 0.1), std::invalid_argument);
}

TEST_CASE("sweep collects per-level errors without aborting") {
  const auto p = make(2, 0.5, {0.0, 0.0});
  const double kap = calibrate_kappa(p);
  const auto entries = zeta_sweep(p, kap, {0.8, 0.9, 1.2, 0.95});
  REQUIRE(entries.size() == 4);
  CHECK(entries[0].result.has_value());
  CHECK(entries[1].result.has_value());
  CHECK(!entries[2].result.has_value());
  CHECK(!entries[2].error.empty());
  CHECK(entries[3].result.has_value());
  for (const auto& e : entries) {
    if (e.result) CHECK(e.result->margin > 0.0);
  }
}

TEST_CASE("sweep csv skips errored rows") {
  const auto p = make(2, 0.5, {0.0, 0.0});
  const auto entries = zeta_sweep(p, calibrate_kappa(p), {0.8, 1.2, 0.9});
  std::ostringstream os;
  write_corollary_csv(entries, os);
  std::istringstream is(os.str());
  std::string line;
  REQUIRE(std::getline(is, line));
  CHECK(line == "zeta,kappa,shift,attained,margin");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 2);
}

TEST_CASE("random multi-component parameters stay strictly inside the bound") {
  std::uint64_t state = 7ull;
  auto next = [&state]() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1p-53 + 0x1p-54;
  };
  for (int trial = 0; trial < 20; ++trial) {
    const int k = 2 + static_cast<int>(next() * 4.0);
    const double rho = 0.1 + 0.8 * next();
    std::vector<double> mu(k);
    for (double& m : mu) m = -2.0 + 2.5 * next();
    const auto p = make(k, rho, mu);
    const double kap = calibrate_kappa(p);
    const double zeta = kap + (1.0 - kap) * (0.2 + 0.6 * next());
    CHECK(corollary_check(p, kap, zeta).margin > 0.0);
  }
}

}  // TEST_SUITE
