#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "eigenloc/errors.hpp"
#include "eigenloc/specfun.hpp"
#include "eigenloc/sphere.hpp"

using namespace eigenloc;
using namespace eigenloc::sphere;

namespace {
constexpr double kPi = 3.14159265358979323846;

VecN random_unit(std::mt19937& rng, int dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  VecN p(dim);
  do {
    for (int d = 0; d < dim; ++d) p[d] = gauss(rng);
  } while (p.norm() < 1e-3);
  return p.normalized();
}

waves::BesselSum single_term(int n, double c0) {
  waves::BesselSum bs;
  bs.n = n;
  bs.m = 1;
  bs.radius = 0.0;
  bs.terms.push_back({CVec::real({c0}), VecN(n)});
  return bs;
}
}  // namespace

TEST_CASE("chart_map basics and round trip") {
  std::mt19937 rng(2);
  for (int n : {2, 3}) {
    const GeodesicChart chart = make_chart(n, random_unit(rng, n + 1));
    CHECK((chart_map(chart, VecN(n)) - chart.base).norm() <= 1e-15);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
      VecN x(n);
      for (int d = 0; d < n; ++d) x[d] = 0.9 * kPi * unif(rng) / std::sqrt(double(n));
      const VecN p = chart_map(chart, x);
      CHECK(std::abs(p.norm() - 1.0) <= 1e-12);
      CHECK(std::abs(p.dot(chart.base) - std::cos(x.norm())) <= 1e-12);
      const VecN back = chart_inverse(chart, p);
      CHECK((back - x).norm() <= 1e-12 * std::max(1.0, x.norm()));
    }
    CHECK_THROWS_AS(chart_inverse(chart, -1.0 * chart.base), ValidationError);
    CHECK_THROWS_AS(chart_map(chart, VecN{4.0, 0.0, 0.0}), ValidationError);
  }
}

TEST_CASE("synthesize_sphere: localization value at the base point") {
  std::mt19937 rng(5);
  const GeodesicChart chart = make_chart(3, VecN{0.0, 0.0, 0.0, 1.0});
  const SphereEigenfunction psi = synthesize_sphere(single_term(3, 1.0), 10, chart);
  CHECK(psi.eigenvalue() == doctest::Approx(10.0 * 12.0));
  // psi(p0) = 1/(2^{1/2} Gamma(3/2)) = sqrt(2/pi), the kernel value at 0
  CHECK(eval_sphere(psi, chart.base)[0].real() ==
        doctest::Approx(std::sqrt(2.0 / kPi)).epsilon(1e-12));
  // psi(p) = norm * C^3_10(p . p0)
  for (int trial = 0; trial < 10; ++trial) {
    const VecN p = random_unit(rng, 4);
    const double expected =
        std::sqrt(2.0 / kPi) * specfun::gegenbauer_norm(10, 3, p.dot(chart.base));
    CHECK(eval_sphere(psi, p)[0].real() == doctest::Approx(expected).epsilon(1e-12));
  }

  waves::BesselSum empty;
  empty.n = 3;
  empty.m = 1;
  const SphereEigenfunction zero = synthesize_sphere(empty, 5, chart);
  CHECK(eval_sphere(zero, chart.base).max_abs() == 0.0);

  waves::BesselSum wide = single_term(3, 1.0);
  wide.radius = 7.0;
  CHECK_THROWS_AS(synthesize_sphere(wide, 5, chart), ValidationError);
}

TEST_CASE("parity identity on random points") {
  std::mt19937 rng(8);
  for (int n : {2, 3}) {
    const GeodesicChart chart = make_chart(n, random_unit(rng, n + 1));
    waves::BesselSum bs;
    bs.n = n;
    bs.m = 1;
    bs.radius = 1.0;
    VecN x1(n), x2(n);
    x1[0] = 0.7;
    x2[n - 1] = -0.4;
    bs.terms.push_back({CVec::real({1.0}), x1});
    bs.terms.push_back({CVec::real({-0.6}), x2});
    for (int N : {11, 36}) {
      const SphereEigenfunction psi = synthesize_sphere(bs, N, chart);
      const double sign = (N % 2 == 0) ? 1.0 : -1.0;
      for (int trial = 0; trial < 1000; ++trial) {
        const VecN p = random_unit(rng, n + 1);
        const CVec a = eval_sphere(psi, p);
        const CVec b = eval_sphere(psi, -1.0 * p);
        CHECK((a - Complex(sign) * b).max_abs() <= 1e-10);
      }
    }
  }
}

TEST_CASE("addition theorem cross-check on S^2") {
  // C^2_N(p.q) = (4 pi / (2N+1)) sum_k Y_Nk(p) Y_Nk(q)
  std::mt19937 rng(13);
  for (int N = 1; N <= 5; ++N) {
    for (int trial = 0; trial < 20; ++trial) {
      const VecN p = random_unit(rng, 3);
      const VecN q = random_unit(rng, 3);
      double sum = 0.0;
      for (int k = 1; k <= 2 * N + 1; ++k)
        sum += specfun::sph_harmonic(N, k, p) * specfun::sph_harmonic(N, k, q);
      const double lhs = specfun::gegenbauer_norm(N, 2, p.dot(q));
      CHECK(std::abs(lhs - 4.0 * kPi / (2.0 * N + 1.0) * sum) <= 1e-9);
    }
  }
}

TEST_CASE("decay_profile values and uniform N-boundedness") {
  // C^3_1(t) = t, so the sup over [pi/3, 2pi/3] is 1/2
  CHECK(decay_profile(1, 3, kPi / 3) == doctest::Approx(0.5).epsilon(1e-6));
  // monotone in the excluded window
  CHECK(decay_profile(40, 3, 0.2) >= decay_profile(40, 3, 0.4));
  // N * decay stays bounded (within a factor 3 band)
  double lo = 1e300, hi = 0.0;
  for (int N : {50, 100, 200, 400}) {
    const double v = N * decay_profile(N, 3, 0.3);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(hi / lo <= 3.0);
  CHECK_THROWS_AS(decay_profile(10, 3, 0.0), ValidationError);
}

TEST_CASE("multi_synthesize: single target matches plain synthesis") {
  std::mt19937 rng(21);
  const GeodesicChart chart = make_chart(3, VecN{1.0, 0.0, 0.0, 0.0});
  const waves::BesselSum bs = single_term(3, 0.8);
  const MultiResult multi = multi_synthesize({{chart, bs}}, 25);
  const SphereEigenfunction plain = synthesize_sphere(bs, 25, chart);
  for (int trial = 0; trial < 20; ++trial) {
    const VecN p = random_unit(rng, 4);
    CHECK((eval_sphere(multi.psi, p) - eval_sphere(plain, p)).max_abs() <= 1e-14);
  }
}

TEST_CASE("multi_synthesize: antipodal and coincident base points rejected") {
  const GeodesicChart c1 = make_chart(3, VecN{0.0, 0.0, 0.0, 1.0});
  const GeodesicChart c2 = make_chart(3, VecN{0.0, 0.0, 0.0, -1.0});
  const waves::BesselSum bs = single_term(3, 1.0);
  CHECK_THROWS_AS(multi_synthesize({{c1, bs}, {c2, bs}}, 20), ValidationError);
  CHECK_THROWS_AS(multi_synthesize({{c1, bs}, {c1, bs}}, 20), ValidationError);
}

TEST_CASE("multi_synthesize: cross-interference halves as N doubles") {
  // two non-antipodal points; measure the second summand near the first base
  const GeodesicChart c1 = make_chart(3, VecN{0.0, 0.0, 0.0, 1.0});
  const VecN p2 = VecN{std::sin(1.5), 0.0, 0.0, std::cos(1.5)};
  const GeodesicChart c2 = make_chart(3, p2);
  const waves::BesselSum bs = single_term(3, 1.0);

  std::mt19937 rng(34);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<VecN> probes;  // chart points within distance ~0.25 of p0
  for (int s = 0; s < 200; ++s) {
    VecN x(3);
    for (int d = 0; d < 3; ++d) x[d] = 0.25 * unif(rng);
    probes.push_back(chart_map(c1, x));
  }
  auto interference = [&](int N) {
    const SphereEigenfunction psi2 = synthesize_sphere(bs, N, c2);
    double sup = 0.0;
    for (const auto& p : probes) sup = std::max(sup, eval_sphere(psi2, p).max_abs());
    return sup;
  };
  double prev = interference(50);
  for (int N : {100, 200, 400}) {
    const double cur = interference(N);
    CHECK(prev / cur >= 1.5);
    CHECK(prev / cur <= 2.5);
    prev = cur;
  }

  // the reported bound dominates the measured interference
  const MultiResult multi = multi_synthesize({{c1, bs}, {c2, bs}}, 100);
  CHECK(multi.rho == doctest::Approx(0.75).epsilon(1e-9));
  CHECK(multi.interference_bound >= interference(100));
}

TEST_CASE("rescaled field satisfies the flat Helmholtz equation up to O(h^2)+O(1/N)") {
  const GeodesicChart chart = make_chart(2, VecN{0.0, 0.0, 1.0});
  waves::BesselSum bs;
  bs.n = 2;
  bs.m = 1;
  bs.radius = 0.5;
  bs.terms.push_back({CVec::real({1.0}), VecN{0.5, 0.0}});

  auto residual = [&](int N, double h) {
    const SphereEigenfunction psi = synthesize_sphere(bs, N, chart);
    EvaluationGrid g = EvaluationGrid::ball(2, 1.0, h, 1);
    g.fill([&](const VecN& x) { return eval_sphere(psi, chart_map(chart, (1.0 / N) * x)); });
    double sup = 0.0;
    const auto& dims = g.dims();
    for (int j = 0; j < dims[1]; ++j)
      for (int i = 0; i < dims[0]; ++i) {
        if (!g.interior(i, j, 0)) continue;
        const double c0 = g.value(g.index(i, j, 0), 0);
        const double lap = g.value(g.index(i - 1, j, 0), 0) + g.value(g.index(i + 1, j, 0), 0) +
                           g.value(g.index(i, j - 1, 0), 0) + g.value(g.index(i, j + 1, 0), 0) -
                           4.0 * c0;
        sup = std::max(sup, std::abs(lap / (h * h) + c0));
      }
    return sup;
  };
  // decreasing in h at fixed N (h^2 term dominates) and in N at fixed h
  CHECK(residual(400, 0.1) > residual(400, 0.05));
  CHECK(residual(50, 0.01) > residual(400, 0.01));
}
