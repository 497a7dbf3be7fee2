#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "eigenloc/errors.hpp"
#include "eigenloc/quadrature.hpp"
#include "eigenloc/specfun.hpp"

using namespace eigenloc;
using namespace eigenloc::specfun;

namespace {
constexpr double kPi = 3.14159265358979323846;

// reference values computed with 30-digit arithmetic
struct BesselRef {
  double nu, t, value;
};
const BesselRef kBesselTable[] = {
    {0, 0.5, 0.9384698072408129},    {0, 1.0, 0.76519768655796655},
    {0, 2.0, 0.22389077914123567},   {0, 5.0, -0.1775967713143383},
    {0, 10.0, -0.24593576445134834}, {0, 50.0, 0.055812327669251815},
    {0, 100.0, 0.019985850304223122},{0, 1000.0, 0.024786686152420175},
    {1, 0.5, 0.24226845767487389},   {1, 1.0, 0.44005058574493352},
    {1, 5.0, -0.32757913759146522},  {1, 10.0, 0.043472746168861437},
    {1, 100.0, -0.077145352014112158},{1, 1000.0, 0.0047283119070895239},
    {2, 2.0, 0.35283402861563772},   {2, 50.0, -0.059712800794258821},
    {2, 1000.0, -0.024777229528605996},
    {5, 1.0, 0.00024975773021123443},{5, 5.0, 0.26114054612017009},
    {5, 10.0, -0.23406152818679364}, {5, 100.0, -0.074195736964513921},
    {5, 1000.0, 0.0050254069452331861},
    {10, 2.0, 2.5153862827167367e-7},{10, 10.0, 0.20748610663335886},
    {10, 50.0, -0.11384784914946939},{10, 1000.0, -0.024520622306036558},
    {0.5, 0.5, 0.54097378993452809}, {0.5, 1.0, 0.67139670714180309},
    {0.5, 5.0, -0.34216798479816181},{0.5, 100.0, -0.040402132716252124},
    {0.5, 1000.0, 0.020863266605093828},
    {1.5, 2.0, 0.49129377868716235}, {1.5, 10.0, 0.1979824927558931},
    {1.5, 1000.0, -0.0141687061043222},
    {2.5, 5.0, 0.24037720111131735}, {2.5, 100.0, 0.038325919332375406},
    {7.5, 1.0, 3.8219741213480422e-7},{7.5, 10.0, 0.2860884861168645},
    {7.5, 1000.0, 0.013600100212583395},
};
}  // namespace

TEST_CASE("bessel_j against reference values") {
  for (const auto& ref : kBesselTable) {
    const double v = bessel_j(ref.nu, ref.t);
    CHECK(v == doctest::Approx(ref.value).epsilon(1e-10));
  }
}

TEST_CASE("bessel_j closed forms and domain") {
  CHECK(std::abs(bessel_j(0.5, kPi)) <= 1e-14);
  CHECK(bessel_j(0, 0.0) == 1.0);
  CHECK(bessel_j(0.5, kPi / 2) == doctest::Approx(2.0 / kPi).epsilon(1e-13));
  CHECK_THROWS_AS(bessel_j(0, -1.0), ValidationError);
  CHECK_THROWS_AS(bessel_j(0.3, 1.0), ValidationError);
}

TEST_CASE("bessel_kernel values and continuity at zero") {
  CHECK(std::abs(bessel_kernel(3, kPi)) <= 1e-14);
  CHECK(bessel_kernel(3, 0.0) == doctest::Approx(std::sqrt(2.0 / kPi)).epsilon(1e-13));
  CHECK(bessel_kernel(2, 0.0) == 1.0);
  CHECK(bessel_kernel(5, 2.0) == doctest::Approx(0.1736985812322277).epsilon(1e-12));
  CHECK(bessel_kernel(4, 3.0) == doctest::Approx(0.11301965284197882).epsilon(1e-12));
  for (int n = 2; n <= 6; ++n) {
    const double limit = 1.0 / (std::pow(2.0, 0.5 * n - 1.0) * std::tgamma(0.5 * n));
    CHECK(std::abs(bessel_kernel(n, 1e-8) - limit) <= 1e-7);
    // series-recurrence seam
    CHECK(std::abs(bessel_kernel(n, 0.1 - 1e-9) - bessel_kernel(n, 0.1 + 1e-9)) <= 1e-10);
  }
}

TEST_CASE("jacobi_poly low degrees and endpoint") {
  CHECK(jacobi_poly(0, 0.5, 0.3) == 1.0);
  CHECK(jacobi_poly(1, 0.5, 0.4) == doctest::Approx(0.6).epsilon(1e-15));
  // P_N^{(a,a)}(1) = binom(N+a, N)
  CHECK(jacobi_poly(5, 0.5, 1.0) == doctest::Approx(2.70703125).epsilon(1e-13));
  CHECK(jacobi_poly(10, 0.5, 0.3) == doctest::Approx(0.34486941235195312).epsilon(1e-12));
  CHECK(jacobi_poly(200, 1.0, -0.7) == doctest::Approx(0.12418220271777491).epsilon(1e-10));
  CHECK(jacobi_poly(500, 0.5, 0.999) == doctest::Approx(-0.45565227317675344).epsilon(1e-10));
  CHECK(jacobi_poly(300, 0.5, 0.11) == doctest::Approx(-0.012379665875488949).epsilon(1e-10));
  CHECK_THROWS_AS(jacobi_poly(3, 0.5, 1.5), ValidationError);
}

TEST_CASE("gegenbauer normalization, parity, bound") {
  CHECK(gegenbauer_norm(7, 4, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(gegenbauer_norm(1, 3, 0.25) == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(gegenbauer_norm(6, 3, -1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(gegenbauer_norm(10, 3, 0.3) == doctest::Approx(0.093204470690909091).epsilon(1e-12));
  CHECK(gegenbauer_norm(100, 5, 0.45) == doctest::Approx(-0.00032053749459209).epsilon(1e-9));
  CHECK(gegenbauer_norm(500, 6, 0.2) == doctest::Approx(9.442908463978207e-7).epsilon(1e-8));

  for (int n = 2; n <= 6; ++n)
    for (int N : {0, 1, 2, 5, 17, 64, 150, 333, 500}) {
      CHECK(std::abs(gegenbauer_norm(N, n, 1.0) - 1.0) <= 1e-10);
      for (double t : {0.0, 0.17, 0.5, 0.83, 0.99}) {
        const double plus = gegenbauer_norm(N, n, t);
        const double minus = gegenbauer_norm(N, n, -t);
        CHECK(std::abs(minus - (N % 2 ? -plus : plus)) <= 1e-10);
        CHECK(std::abs(plus) <= 1.0 + 1e-12);
      }
    }
}

TEST_CASE("mehler-heine pair and O(1/N) rate") {
  // both sides equal 1 at t = 0 for n = 2
  auto [l0, r0] = mehler_heine_pair(37, 2, 0.0);
  CHECK(l0 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r0 == doctest::Approx(1.0).epsilon(1e-12));

  auto [l1, r1] = mehler_heine_pair(200, 3, 1.0);
  CHECK(std::abs(l1 - r1) <= 0.02);

  auto gap = [](int N, int n) {
    double worst = 0.0;
    for (double t = 0.0; t <= 10.0 + 1e-9; t += 0.1) {
      auto [a, b] = mehler_heine_pair(N, n, t);
      worst = std::max(worst, std::abs(a - b));
    }
    return worst;
  };
  for (int n : {2, 3, 4}) {
    const double g100 = gap(100, n), g200 = gap(200, n), g400 = gap(400, n);
    CHECK(g100 / g200 >= 1.5);
    CHECK(g100 / g200 <= 2.5);
    CHECK(g200 / g400 >= 1.5);
    CHECK(g200 / g400 <= 2.5);
  }
}

TEST_CASE("harmonic_count") {
  CHECK(harmonic_count(2, 0) == 1);
  CHECK(harmonic_count(2, 3) == 7);   // 2l+1 on S^2
  CHECK(harmonic_count(1, 0) == 1);
  CHECK(harmonic_count(1, 4) == 2);
  CHECK(harmonic_count(3, 2) == 9);   // (l+1)^2 on S^3
  CHECK(harmonic_count(2, 1) == 3);
}

TEST_CASE("sph_harmonic basics") {
  const VecN north{0.0, 0.0, 1.0};
  CHECK(sph_harmonic(0, 1, north) == doctest::Approx(1.0 / std::sqrt(4.0 * kPi)).epsilon(1e-14));
  // circle basis {cos, sin}/sqrt(pi) at theta = 0
  const VecN e1{1.0, 0.0};
  CHECK(sph_harmonic(1, 1, e1) == doctest::Approx(1.0 / std::sqrt(kPi)).epsilon(1e-14));
  CHECK(std::abs(sph_harmonic(1, 2, e1)) <= 1e-14);
  // Y_{1,0} on S^2 is sqrt(3/4pi) cos(theta)
  const VecN p{0.6, 0.0, 0.8};
  CHECK(sph_harmonic(1, 1, p) == doctest::Approx(std::sqrt(3.0 / (4.0 * kPi)) * 0.8).epsilon(1e-13));
  CHECK_THROWS_AS(sph_harmonic(1, 1, VecN{0.5, 0.5, 0.5}), ValidationError);
  CHECK_THROWS_AS(sph_harmonic(1, 4, e1), ValidationError);
}

TEST_CASE("sph_harmonic Gram matrix is the identity (quadrature oracle)") {
  for (int n : {2, 3}) {
    const int L = 4;
    const SphereRule rule = sphere_rule(n, 2 * L + 2);
    std::vector<std::pair<int, int>> basis;
    for (int l = 0; l <= L; ++l)
      for (int k = 1; k <= harmonic_count(n - 1, l); ++k) basis.emplace_back(l, k);
    for (size_t a = 0; a < basis.size(); ++a)
      for (size_t b = a; b < basis.size(); ++b) {
        double g = 0.0;
        for (size_t q = 0; q < rule.nodes.size(); ++q)
          g += rule.weights[q] * sph_harmonic(basis[a].first, basis[a].second, rule.nodes[q]) *
               sph_harmonic(basis[b].first, basis[b].second, rule.nodes[q]);
        CHECK(std::abs(g - (a == b ? 1.0 : 0.0)) <= 1e-8);
      }
  }
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  std::vector<double> x, w;
  gauss_legendre(8, x, w);
  double total = 0.0, p6 = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    total += w[i];
    p6 += w[i] * std::pow(x[i], 6);
  }
  CHECK(total == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(p6 == doctest::Approx(2.0 / 7.0).epsilon(1e-13));
}

TEST_CASE("sphere_rule areas") {
  CHECK(sphere_area(2) == doctest::Approx(2 * kPi).epsilon(1e-14));
  CHECK(sphere_area(3) == doctest::Approx(4 * kPi).epsilon(1e-14));
  CHECK(sphere_area(4) == doctest::Approx(2 * kPi * kPi).epsilon(1e-14));
  for (int n : {2, 3, 4}) {
    const SphereRule rule = sphere_rule(n, 14);
    double total = 0.0;
    for (double w : rule.weights) total += w;
    CHECK(total == doctest::Approx(sphere_area(n)).epsilon(1e-12));
  }
}
