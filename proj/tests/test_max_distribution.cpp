#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "equimax/errors.hpp"
#include "equimax/max_distribution.hpp"
#include "equimax/special_functions.hpp"

namespace {

using namespace equimax;

constexpr double kPi = 3.14159265358979323846;

EquicorrParams make(int k, double rho, std::vector<double> mu) {
  EquicorrParams p;
  p.k = k;
  p.rho = rho;
  p.mu = std::move(mu);
  return p;
}

// P(max of a zero-mean equicorrelated pair <= 0) in closed form.
double orthant2(double rho) { return 0.25 + std::asin(rho) / (2.0 * kPi); }

}  // namespace

TEST_SUITE("max_distribution") {

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(validate(make(2, 0.5, {0.0, -1.0})));
  CHECK_THROWS_AS(validate(make(0, 0.5, {})), std::invalid_argument);
  CHECK_THROWS_AS(validate(make(2, 0.0, {0.0, 0.0})), std::invalid_argument);
  CHECK_THROWS_AS(validate(make(2, 1.0, {0.0, 0.0})), std::invalid_argument);
  CHECK_THROWS_AS(validate(make(2, -0.3, {0.0, 0.0})), std::invalid_argument);
  CHECK_THROWS_AS(validate(make(3, 0.5, {0.0, 0.0})), std::invalid_argument);
  CHECK_THROWS_AS(validate(make(1, 0.5, {std::nan("")})), std::invalid_argument);

  LocationArgs bad;
  bad.nu0 = 0.0;
  bad.nu = {};
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}

TEST_CASE("single-component kernel collapses to the normal cdf") {
  for (double rho : {0.1, 0.5, 0.9}) {
    LocationArgs a;
    a.nu0 = 0.7;
    a.nu = {0.2};
    CHECK(std::fabs(g_integral(a, rho) - std_normal_cdf(0.5)) <= 1e-12);
  }
}

TEST_CASE("bivariate orthant probabilities") {
  for (double rho : {0.2, 0.5, 0.8}) {
    const double got = max_cdf(0.0, make(2, rho, {0.0, 0.0}));
    CHECK(std::fabs(got - orthant2(rho)) <= 1e-11);
  }
}

TEST_CASE("exchangeable orthant at rho one half is one over k plus one") {
  // At rho = 1/2 the components share a latent factor of equal weight, so
  // P(max <= 0) is the chance one of k+1 exchangeable variables is largest.
  CHECK(std::fabs(max_cdf(0.0, make(2, 0.5, {0.0, 0.0})) - 1.0 / 3) <= 1e-12);
  CHECK(std::fabs(max_cdf(0.0, make(3, 0.5, {0.0, 0.0, 0.0})) - 1.0 / 4) <= 1e-12);
  CHECK(std::fabs(max_cdf(0.0, make(5, 0.5, {0.0, 0.0, 0.0, 0.0, 0.0})) - 1.0 / 6)
        <= 1e-12);
}

TEST_CASE("cdf reduces to the shifted normal at k equals one") {
  const auto p = make(1, 0.3, {-1.0});
  CHECK(std::fabs(max_cdf(0.0, p) - std_normal_cdf(1.0)) <= 1e-12);
  for (double x = -3.0; x <= 3.0; x += 0.5) {
    CHECK(std::fabs(max_cdf(x, p) - std_normal_cdf(x + 1.0)) <= 1e-12);
  }
}

TEST_CASE("cdf saturates and is strictly increasing in the body") {
  const auto p = make(2, 0.4, {0.0, -0.5});
  CHECK(max_cdf(-30.0, p) <= 1e-12);
  CHECK(std::fabs(max_cdf(30.0, p) - 1.0) <= 1e-12);
  double prev = max_cdf(-4.0, p);
  for (double x = -3.5; x <= 3.0; x += 0.5) {
    const double cur = max_cdf(x, p);
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("cdf is invariant under permutation of the means") {
  const auto a = make(3, 0.35, {0.4, -0.7, -1.9});
  const auto b = make(3, 0.35, {-1.9, 0.4, -0.7});
  for (double x : {-2.0, -0.5, 0.0, 1.25}) {
    CHECK(std::fabs(max_cdf(x, a) - max_cdf(x, b)) <= 1e-13);
  }
}

TEST_CASE("cdf commutes with translation") {
  const auto base = make(2, 0.6, {0.0, -1.0});
  for (double c : {-5.0, 1.7, 12.0}) {
    const auto shifted = make(2, 0.6, {0.0 + c, -1.0 + c});
    for (double x : {-1.5, 0.0, 2.0}) {
      CHECK(std::fabs(max_cdf(x + c, shifted) - max_cdf(x, base)) <= 1e-11);
    }
  }
}

TEST_CASE("cdf never exceeds any single-component cdf") {
  const auto p = make(4, 0.45, {0.3, -0.2, -1.0, -2.5});
  for (double x = -6.0; x <= 6.0; x += 0.25) {
    double bound = 1.0;
    for (double m : p.mu) bound = std::min(bound, std_normal_cdf(x - m));
    CHECK(max_cdf(x, p) <= bound + 1e-11);
  }
}

TEST_CASE("components pushed far down stop mattering") {
  const auto p3 = make(3, 0.5, {0.2, -40.0, -40.0});
  for (double x : {-2.0, 0.0, 1.0, 3.0}) {
    CHECK(std::fabs(max_cdf(x, p3) - std_normal_cdf(x - 0.2)) <= 1e-11);
  }
}

TEST_CASE("pdf reduces to the normal density at k equals one") {
  const auto p = make(1, 0.7, {0.0});
  CHECK(std::fabs(max_pdf(0.0, p) - std_normal_pdf(0.0)) <= 1e-12);
  CHECK(std::fabs(max_pdf(1.5, p) - std_normal_pdf(1.5)) <= 1e-12);
}

TEST_CASE("pdf matches a central difference of the cdf") {
  const auto p = make(2, 0.5, {0.0, 0.0});
  const double h = 1e-5;
  for (double x : {-1.0, 0.3, 1.2}) {
    const double fd = (max_cdf(x + h, p) - max_cdf(x - h, p)) / (2 * h);
    CHECK(std::fabs(fd - max_pdf(x, p)) <= 1e-7);
  }
}

TEST_CASE("pdf agrees with the integrated-by-parts kernel") {
  // f(x) can also be written (1/sqrt(rho)) E[U phi-product] by moving the
  // derivative onto the latent factor; evaluating that form directly gives
  // an independent check of the 1/sqrt(1-rho) prefactor.
  const auto p = make(3, 0.35, {0.1, -0.4, -1.3});
  const double sr = std::sqrt(p.rho);
  const double s1r = std::sqrt(1.0 - p.rho);
  for (double x : {-0.8, 0.0, 0.9}) {
    auto alt = [&](double u) {
      double prod = 1.0;
      for (double m : p.mu) prod *= std_normal_cdf((x + sr * u - m) / s1r);
      return u * std_normal_pdf(u) * prod;
    };
    const double oracle = detail::gl16_panels(alt, -9.0, 9.0, 64) / sr;
    CHECK(std::fabs(max_pdf(x, p) - oracle) <= 1e-11);
  }
}

TEST_CASE("pdf integrates to one") {
  const auto p = make(5, 0.2, {0.0, 0.0, 0.0, 0.0, 0.0});
  const double mass =
      detail::gl16_panels([&](double x) { return max_pdf(x, p); }, -10.0, 10.0, 40);
  CHECK(std::fabs(mass - 1.0) <= 1e-9);
}

TEST_CASE("quantile inverts the cdf") {
  const auto p2 = make(2, 0.5, {0.0, -1.0});
  const auto p3 = make(3, 0.25, {0.5, 0.0, -0.5});
  for (double zeta : {1e-3, 0.01, 0.3333333333333333, 0.5, 0.9, 0.999}) {
    for (const auto& p : {p2, p3}) {
      const double x = max_quantile(zeta, p);
      CHECK(std::fabs(max_cdf(x, p) - zeta) <= 1e-10);
    }
  }
}

TEST_CASE("quantile reference points") {
  CHECK(std::fabs(max_quantile(0.975, make(1, 0.5, {0.0})) -
                  1.9599639845400542355) <= 1e-10);
  // orthant identity read backward: at zeta = 1/3 the exchangeable pair
  // at rho = 1/2 crosses zero
  CHECK(std::fabs(max_quantile(1.0 / 3.0, make(2, 0.5, {0.0, 0.0}))) <= 1e-9);
}

TEST_CASE("quantile rejects levels outside the open interval") {
  const auto p = make(2, 0.5, {0.0, 0.0});
  CHECK_THROWS_AS((void)max_quantile(0.0, p), std::invalid_argument);
  CHECK_THROWS_AS((void)max_quantile(1.0, p), std::invalid_argument);
}

TEST_CASE("first derivatives in closed form at k equals one") {
  LocationArgs a;
  a.nu0 = 0.9;
  a.nu = {0.4};
  const double gap = 0.5;
  for (double rho : {0.2, 0.5, 0.8}) {
    CHECK(std::fabs(dG_dnu0(a, rho) - std_normal_pdf(gap)) <= 1e-11);
    CHECK(std::fabs(dG_dnui(1, a, rho) + std_normal_pdf(gap)) <= 1e-11);
  }
}

TEST_CASE("first derivatives match finite differences") {
  LocationArgs a;
  a.nu0 = 0.3;
  a.nu = {0.0, -1.0};
  const double rho = 0.4;
  const double h = 1e-5;

  LocationArgs up = a, dn = a;
  up.nu0 += h;
  dn.nu0 -= h;
  const double fd0 = (g_integral(up, rho) - g_integral(dn, rho)) / (2 * h);
  CHECK(std::fabs(fd0 - dG_dnu0(a, rho)) <= 1e-7);

  for (int i = 1; i <= 2; ++i) {
    LocationArgs ui = a, di = a;
    ui.nu[i - 1] += h;
    di.nu[i - 1] -= h;
    const double fdi = (g_integral(ui, rho) - g_integral(di, rho)) / (2 * h);
    CHECK(std::fabs(fdi - dG_dnui(i, a, rho)) <= 1e-7);
  }
}

TEST_CASE("component derivatives are negative and sum against dG_dnu0") {
  // raising any nu_i can only lower G; translation invariance makes the
  // component derivatives sum to exactly -dG/dnu0
  LocationArgs a;
  a.nu0 = -0.2;
  a.nu = {0.6, 0.0, -0.9};
  const double rho = 0.55;
  const double d0 = dG_dnu0(a, rho);
  double sum = 0.0;
  for (int i = 1; i <= 3; ++i) {
    const double di = dG_dnui(i, a, rho);
    CHECK(di < 0.0);
    sum += di;
  }
  CHECK(d0 > 0.0);
  CHECK(std::fabs(sum + d0) <= 1e-10);
}

TEST_CASE("second derivatives in closed form at k equals one") {
  // with one component G = Phi(nu0 - nu1), so both second derivatives
  // reduce to +/- (nu0 - nu1) phi(nu0 - nu1)
  LocationArgs a;
  a.nu0 = 0.5;
  a.nu = {0.0};
  const double gap = 0.5;
  for (double rho : {0.3, 0.6}) {
    CHECK(std::fabs(d2G_dnu02(a, rho) + gap * std_normal_pdf(gap)) <= 1e-9);
    CHECK(std::fabs(d2G_dnu0_dnui(1, a, rho) - gap * std_normal_pdf(gap)) <= 1e-9);
  }
}

TEST_CASE("second derivatives match finite differences of the first") {
  LocationArgs a;
  a.nu0 = 0.3;
  a.nu = {0.0, -1.0};
  const double rho = 0.4;
  const double h = 1e-5;

  LocationArgs up = a, dn = a;
  up.nu0 += h;
  dn.nu0 -= h;
  const double fd00 = (dG_dnu0(up, rho) - dG_dnu0(dn, rho)) / (2 * h);
  CHECK(std::fabs(fd00 - d2G_dnu02(a, rho)) <= 1e-6);
  for (int i = 1; i <= 2; ++i) {
    const double fd0i = (dG_dnui(i, up, rho) - dG_dnui(i, dn, rho)) / (2 * h);
    CHECK(std::fabs(fd0i - d2G_dnu0_dnui(i, a, rho)) <= 1e-6);
  }
}

TEST_CASE("index bounds are enforced") {
  LocationArgs a;
  a.nu0 = 0.0;
  a.nu = {0.0, -1.0};
  CHECK_THROWS_AS((void)dG_dnui(0, a, 0.5), std::invalid_argument);
  CHECK_THROWS_AS((void)dG_dnui(3, a, 0.5), std::invalid_argument);
  CHECK_THROWS_AS((void)d2G_dnu0_dnui(-1, a, 0.5), std::invalid_argument);
}

}  // TEST_SUITE
