#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "eigenloc/errors.hpp"
#include "eigenloc/herglotz.hpp"
#include "eigenloc/quadrature.hpp"
#include "eigenloc/specfun.hpp"
#include "eigenloc/waves.hpp"

using namespace eigenloc;
using namespace eigenloc::herglotz;

namespace {
constexpr double kPi = 3.14159265358979323846;

// random point inside a cell, drawn in the cell's zonal coordinates
VecN random_in_cell(std::mt19937& rng, int n, const CapCell& cell) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> coords(cell.levels);
  for (int lv = 0; lv < cell.levels; ++lv)
    coords[lv] = cell.zonal[lv][0] + unif(rng) * (cell.zonal[lv][1] - cell.zonal[lv][0]);
  if (n == 2) return VecN{std::cos(coords[0]), std::sin(coords[0])};
  if (n == 3)
    return VecN{std::sin(coords[0]) * std::cos(coords[1]),
                std::sin(coords[0]) * std::sin(coords[1]), std::cos(coords[0])};
  const double schi = std::sin(coords[0]);
  return VecN{std::cos(coords[0]), schi * std::sin(coords[1]) * std::cos(coords[2]),
              schi * std::sin(coords[1]) * std::sin(coords[2]), schi * std::cos(coords[1])};
}

// Hermitian density (even real part, odd imaginary part): its wave is real
// and its Fourier extension is real-valued.
waves::HerglotzDensity smooth_density(int n) {
  waves::HerglotzDensity d;
  d.n = n;
  d.m = 1;
  d.f = [](const VecN& xi) {
    return CVec{Complex(std::exp(0.9 * xi[0] * xi[0] + 0.4 * xi[0] * xi[1]), 0.5 * xi[1])};
  };
  return d;
}

VecN random_ball_point(std::mt19937& rng, int n, double radius) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  VecN x(n);
  do {
    for (int d = 0; d < n; ++d) x[d] = unif(rng);
  } while (x.norm() > 1.0);
  return radius * x;
}
}  // namespace

TEST_CASE("cap cover conservation and diameters") {
  std::mt19937 rng(41);
  for (int n : {2, 3, 4}) {
    for (double eps : {1.2, 0.5}) {
      const SphericalCapCover cover = build_cap_cover(n, eps);
      CHECK(std::abs(cover.total_area() - sphere_area(n)) <= 1e-8);
      // within-cell sample pairs stay under the diameter bound
      const int pairs_per_cell = std::max<int>(1, int(100000 / cover.cells.size()));
      for (const auto& cell : cover.cells) {
        CHECK(cell.diam_bound <= eps + 1e-12);
        for (int s = 0; s < pairs_per_cell; ++s) {
          const VecN a = random_in_cell(rng, n, cell);
          const VecN b = random_in_cell(rng, n, cell);
          CHECK((a - b).norm() <= cell.diam_bound + 1e-9);
        }
        CHECK(cover.contains(int(&cell - cover.cells.data()), cell.center));
        CHECK(cover.contains(int(&cell - cover.cells.data()), cell.rep));
      }
    }
  }
  // arcs covering the circle
  const SphericalCapCover arcs = build_cap_cover(2, kPi);
  CHECK(std::abs(arcs.total_area() - 2 * kPi) <= 1e-12);
  CHECK(arcs.cells.size() == 2);
  CHECK_THROWS_AS(build_cap_cover(3, 1e-6, 1000), ValidationError);
}

TEST_CASE("cap cover locate is a partition") {
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int n : {2, 3, 4}) {
    const SphericalCapCover cover = build_cap_cover(n, 0.8);
    for (int s = 0; s < 500; ++s) {
      VecN xi(n);
      for (int d = 0; d < n; ++d) xi[d] = unif(rng);
      if (xi.norm() < 1e-3) continue;
      xi = xi.normalized();
      CHECK(cover.locate(xi) >= 0);
    }
  }
}

TEST_CASE("discretize_density: coefficient telescoping for constant densities") {
  waves::HerglotzDensity d;
  d.n = 3;
  d.m = 1;
  d.f = [](const VecN&) { return CVec::real({0.75}); };
  const SphericalCapCover cover = build_cap_cover(3, 0.6);
  const waves::PlaneWaveSum pw = discretize_density(d, cover);
  Complex total = 0.0;
  for (const auto& t : pw.terms) total += t.c[0];
  CHECK(std::abs(total - 0.75 * 4 * kPi) <= 1e-10);
}

TEST_CASE("discretize_density: halving eps halves the C0(B) error") {
  const waves::HerglotzDensity d = smooth_density(3);
  const waves::WaveField oracle{waves::WaveSpec{d}};
  std::mt19937 rng(77);
  std::vector<VecN> probes;
  for (int s = 0; s < 60; ++s) probes.push_back(random_ball_point(rng, 3, 1.0));

  auto sup_error = [&](double eps) {
    const waves::PlaneWaveSum pw = discretize_density(d, build_cap_cover(3, eps));
    const waves::WaveField f{waves::WaveSpec{pw}};
    double sup = 0.0;
    for (const auto& x : probes) sup = std::max(sup, (f(x) - oracle(x)).max_abs());
    return sup;
  };
  const double e1 = sup_error(0.8);
  const double e2 = sup_error(0.4);
  const double e3 = sup_error(0.2);
  CHECK(e1 / e2 >= 1.5);
  CHECK(e1 / e2 <= 2.5);
  CHECK(e2 / e3 >= 1.5);
  CHECK(e2 / e3 <= 2.5);
}

TEST_CASE("discretize_density: reality symmetrization") {
  waves::HerglotzDensity d;
  d.n = 3;
  d.m = 1;
  d.real_constraint = true;
  d.f = [](const VecN& xi) {
    // Hermitian: real even part + i * odd imaginary structure
    return CVec{Complex(std::exp(xi[2] * xi[2]), 0.3 * xi[0])};
  };
  const waves::PlaneWaveSum pw = discretize_density(d, build_cap_cover(3, 0.5));
  const waves::WaveField f{waves::WaveSpec{pw}};
  std::mt19937 rng(19);
  for (int s = 0; s < 30; ++s) {
    const VecN x = random_ball_point(rng, 3, 1.0);
    CHECK(f(x).max_abs_imag() <= 1e-10);
  }
}

TEST_CASE("bump profile properties") {
  const BumpProfile chi;
  for (double s : {0.76, 0.9, 1.0, 1.1, 1.24}) CHECK(chi(s) == 1.0);
  for (double s : {0.0, 0.2, 0.49, 1.51, 2.0, 5.0}) CHECK(chi(s) == 0.0);
  for (double s = 0.4; s <= 1.6; s += 0.01) {
    CHECK(chi(s) >= 0.0);
    CHECK(chi(s) <= 1.0);
    // continuity across the glue regions
    CHECK(std::abs(chi(s + 1e-7) - chi(s)) <= 1e-4);
  }
  BumpProfile bad;
  bad.a = 0.5;
  bad.b = 0.3;
  CHECK_THROWS_AS(bad(1.0), ValidationError);
}

TEST_CASE("ball cover conservation and degenerate single cell") {
  for (int n : {2, 3}) {
    const BallCellCover cover = build_ball_cover(n, 2.0, 0.5);
    CHECK(std::abs(cover.total_volume() - ball_volume(n, 2.0)) <= 1e-8);
    for (const auto& cell : cover.cells) {
      CHECK(cell.diam_bound <= 0.5 + 1e-9);
      CHECK(cell.point.norm() <= 2.0 + 1e-12);
    }
  }
  const BallCellCover one = build_ball_cover(3, 1.5, 4.0);
  CHECK(one.cells.size() == 1);
  CHECK(one.cells[0].volume == doctest::Approx(ball_volume(3, 1.5)).epsilon(1e-14));
  CHECK(one.cells[0].point.norm() == 0.0);
}

TEST_CASE("extend_and_transform: zero density, radial symmetry, tail decay") {
  waves::HerglotzDensity zero;
  zero.n = 2;
  zero.m = 1;
  zero.f = [](const VecN&) { return CVec::real({0.0}); };
  const FourierField gz = extend_and_transform(zero, BumpProfile{});
  CHECK(gz(VecN{0.3, 0.4}).max_abs() == 0.0);

  waves::HerglotzDensity one;
  one.n = 2;
  one.m = 1;
  one.f = [](const VecN&) { return CVec::real({1.0}); };
  const FourierField g1 = extend_and_transform(one, BumpProfile{});
  const double r = 1.7;
  const double base = g1(VecN{r, 0.0})[0].real();
  for (double th : {0.3, 1.1, 2.0, 4.4}) {
    const VecN x{r * std::cos(th), r * std::sin(th)};
    CHECK(std::abs(g1(x)[0].real() - base) <= 1e-8);
    CHECK(std::abs(g1(x)[0].imag()) <= 1e-10);
  }

  // the L1 tail of the transform decays superpolynomially once the
  // oscillation outruns the transition width; the per-octave factor itself
  // shrinks, which no fixed power can do
  waves::HerglotzDensity wide = one;
  BumpProfile gentle;
  gentle.b = 0.75;
  const FourierField gw = extend_and_transform(wide, gentle);
  const double t8 = gw.tail_mass(8.0);
  const double t16 = gw.tail_mass(16.0);
  const double t32 = gw.tail_mass(32.0);
  const double t64 = gw.tail_mass(64.0);
  CHECK(t16 <= 0.5 * t8);
  CHECK(t32 <= 0.5 * t16);
  CHECK(t64 <= 0.2 * t32);
  CHECK(t64 / t32 < t16 / t8);

  // unreachable tail bound is reported
  CHECK_THROWS_AS(extend_and_transform(one, BumpProfile{}, 48, 40, 1e-9, 2.0), NumericalError);
}

TEST_CASE("discretize_fourier: degenerate cover and formula") {
  const waves::HerglotzDensity d = smooth_density(2);
  const FourierField ghat = extend_and_transform(d, BumpProfile{});
  const double R = 1.5;
  const FourierDiscretization one = discretize_fourier(ghat, R, 4.0);
  REQUIRE(one.sum.terms.size() == 1);
  const double expected = std::pow(2 * kPi, 1.0) * ghat(VecN(2))[0].real() * ball_volume(2, R);
  CHECK(one.sum.terms[0].c[0].real() == doctest::Approx(expected).epsilon(1e-12));
  CHECK(one.sum.radius == R);

  waves::HerglotzDensity zero;
  zero.n = 2;
  zero.m = 1;
  zero.f = [](const VecN&) { return CVec::real({0.0}); };
  const FourierDiscretization z =
      discretize_fourier(extend_and_transform(zero, BumpProfile{}), 1.0, 0.5);
  CHECK(eval_wave(waves::WaveSpec{z.sum}, VecN{0.2, 0.1}).max_abs() == 0.0);
}

TEST_CASE("discretize_fourier: halving delta2 halves the density error") {
  const waves::HerglotzDensity d = smooth_density(2);
  const FourierField ghat = extend_and_transform(d, BumpProfile{}, 64, 48);
  const double R = 2.0;

  // dense-quadrature oracle for int_{B_R} ghat(x) e^{-i x.xi} dx
  std::vector<double> gx, gw;
  gauss_legendre(40, gx, gw);
  const int na = 96;
  auto truncated_integral = [&](const VecN& xi) {
    Complex acc = 0.0;
    for (size_t iq = 0; iq < gx.size(); ++iq) {
      const double r = 0.5 * R * (gx[iq] + 1.0);
      const double wr = 0.5 * R * gw[iq] * r;
      for (int a = 0; a < na; ++a) {
        const double th = 2 * kPi * a / na;
        const VecN x{r * std::cos(th), r * std::sin(th)};
        const double ph = -x.dot(xi);
        acc += wr * (2 * kPi / na) * ghat(x)[0] * Complex(std::cos(ph), std::sin(ph));
      }
    }
    return acc;
  };

  const SphereRule probe = sphere_rule(2, 24);
  std::vector<Complex> oracle;
  for (const auto& xi : probe.nodes) oracle.push_back(truncated_integral(xi));

  auto sup_error = [&](double delta2) {
    const FourierDiscretization disc = discretize_fourier(ghat, R, delta2);
    double sup = 0.0;
    for (size_t q = 0; q < probe.nodes.size(); ++q) {
      Complex f = 0.0;
      for (const auto& t : disc.sum.terms) {
        const double ph = -t.x.dot(probe.nodes[q]);
        f += std::pow(2 * kPi, -1.0) * t.c[0] * Complex(std::cos(ph), std::sin(ph));
      }
      sup = std::max(sup, std::abs(f - oracle[q]));
    }
    return sup;
  };

  const double e1 = sup_error(0.6);
  const double e2 = sup_error(0.3);
  const double e3 = sup_error(0.15);
  CHECK(e1 / e2 >= 1.5);
  CHECK(e1 / e2 <= 2.5);
  CHECK(e2 / e3 >= 1.5);
  CHECK(e2 / e3 <= 2.5);
}

TEST_CASE("end-to-end Bessel approximation improves monotonically") {
  // target: a real wave in R^2 through its harmonic expansion
  const VecN xi0{0.6, 0.8};
  const FieldEval phi = [&xi0](const VecN& x) {
    return CVec::real({std::cos(x.dot(xi0)) + 0.4 * std::sin(x[0])});
  };
  const waves::ExpansionResult res = waves::expand_wave(phi, 2, 1, 10);
  const waves::WaveField target{waves::WaveSpec{res.expansion}};

  std::mt19937 rng(99);
  std::vector<VecN> probes;
  for (int s = 0; s < 40; ++s) probes.push_back(random_ball_point(rng, 2, 1.0));

  auto sup_error = [&](double R, double delta2) {
    const waves::BesselSum approx =
        bessel_approximate(res.expansion, BumpProfile{0.25, 0.75}, R, delta2);
    const waves::WaveField f{waves::WaveSpec{approx}};
    double sup = 0.0;
    for (const auto& x : probes) sup = std::max(sup, (f(x) - target(x)).max_abs());
    return sup;
  };

  // refinement: enlarge R until the transform tail is subdominant, then
  // shrink the cell diameter
  const double c1 = sup_error(2.0, 1.0);
  const double c2 = sup_error(4.0, 0.5);
  const double c3 = sup_error(4.0, 0.25);
  const double c4 = sup_error(4.0, 0.125);
  MESSAGE("end-to-end sup errors: ", c1, " ", c2, " ", c3, " ", c4);
  CHECK(c2 < c1);
  CHECK(c3 < c2);
  CHECK(c4 < c3);
  CHECK(c4 <= 0.04);
}
