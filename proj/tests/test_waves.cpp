#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "eigenloc/errors.hpp"
#include "eigenloc/quadrature.hpp"
#include "eigenloc/specfun.hpp"
#include "eigenloc/waves.hpp"

using namespace eigenloc;
using namespace eigenloc::waves;

namespace {
constexpr double kPi = 3.14159265358979323846;

VecN random_ball_point(std::mt19937& rng, int n, double radius) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  VecN x(n);
  do {
    for (int d = 0; d < n; ++d) x[d] = unif(rng);
  } while (x.norm() > 1.0);
  return radius * x;
}

// Legendre P_l by its own recurrence (test-local oracle)
double legendre(int l, double t) {
  double p0 = 1.0, p1 = t;
  if (l == 0) return p0;
  for (int k = 2; k <= l; ++k) {
    const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}
}  // namespace

TEST_CASE("plane-wave sphere integral identity (quadrature vs kernel)") {
  // int_{S^{n-1}} e^{ix.xi} dsigma = (2 pi)^{n/2} bessel_kernel(n, |x|)
  std::mt19937 rng(7);
  for (int n : {2, 3}) {
    const SphereRule rule = sphere_rule(n, 40);
    for (int trial = 0; trial < 10; ++trial) {
      const VecN x = random_ball_point(rng, n, 2.0);
      Complex acc = 0.0;
      for (size_t q = 0; q < rule.nodes.size(); ++q) {
        const double ph = x.dot(rule.nodes[q]);
        acc += rule.weights[q] * Complex(std::cos(ph), std::sin(ph));
      }
      const double expected = std::pow(2 * kPi, 0.5 * n) * specfun::bessel_kernel(n, x.norm());
      CHECK(std::abs(acc.real() - expected) <= 1e-10);
      CHECK(std::abs(acc.imag()) <= 1e-10);
    }
  }
}

TEST_CASE("eval_wave basic examples") {
  BesselSum bs;
  bs.n = 3;
  bs.m = 1;
  bs.radius = 0.0;
  bs.terms.push_back({CVec::real({1.0}), VecN{0.0, 0.0, 0.0}});
  CHECK(std::abs(eval_wave(bs, VecN{kPi, 0.0, 0.0})[0]) <= 1e-14);
  CHECK(eval_wave(bs, VecN{0.0, 0.0, 0.0})[0].real() ==
        doctest::Approx(std::sqrt(2 / kPi)).epsilon(1e-13));

  PlaneWaveSum pw;
  pw.n = 3;
  pw.m = 1;
  pw.terms.push_back({CVec{Complex(1.0, 0.0)}, VecN{1.0, 0.0, 0.0}});
  CHECK(eval_wave(pw, VecN{0.0, 0.0, 0.0})[0].real() == doctest::Approx(1.0));

  // constant density: wave equals (2 pi)^{n/2} f0 * kernel
  HerglotzDensity hd;
  hd.n = 3;
  hd.m = 1;
  hd.real_constraint = true;
  const double f0 = std::pow(2 * kPi, -1.5);
  hd.f = [f0](const VecN&) { return CVec::real({f0}); };
  WaveField field{WaveSpec{hd}};
  std::mt19937 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const VecN x = random_ball_point(rng, 3, 1.5);
    CHECK(std::abs(field(x)[0].real() - specfun::bessel_kernel(3, x.norm())) <= 1e-10);
    CHECK(std::abs(field(x)[0].imag()) <= 1e-10);
  }
}

TEST_CASE("vector-valued wave evaluation") {
  BesselSum bs;
  bs.n = 3;
  bs.m = 2;
  bs.radius = 1.0;
  bs.terms.push_back({CVec::real({1.0, -2.0}), VecN{0.5, 0.0, 0.0}});
  const CVec v = eval_wave(bs, VecN{0.1, 0.2, 0.0});
  CHECK(v.size() == 2);
  CHECK(v[1].real() == doctest::Approx(-2.0 * v[0].real()).epsilon(1e-13));
}

TEST_CASE("quadrature degree failure is reported") {
  HerglotzDensity hd;
  hd.n = 2;
  hd.m = 1;
  hd.f = [](const VecN& xi) { return CVec::real({std::abs(xi[0])}); };  // kink
  CHECK_THROWS_AS(WaveField(WaveSpec{hd}, 1e-12), QuadratureError);
}

TEST_CASE("helmholtz_residual is second order") {
  PlaneWaveSum pw;
  pw.n = 3;
  pw.m = 1;
  pw.terms.push_back({CVec{Complex(1.0, 0.0)}, VecN{0.6, 0.8, 0.0}});
  const WaveSpec spec{pw};
  const double r1 = helmholtz_residual(spec, EvaluationGrid::ball(3, 1.0, 0.05)).sup;
  const double r2 = helmholtz_residual(spec, EvaluationGrid::ball(3, 1.0, 0.025)).sup;
  CHECK(r1 / r2 >= 3.5);
  CHECK(r1 / r2 <= 4.5);

  BesselSum bs;
  bs.n = 3;
  bs.m = 1;
  bs.radius = 0.0;
  bs.terms.push_back({CVec::real({1.0}), VecN{0.0, 0.0, 0.0}});
  CHECK(helmholtz_residual(WaveSpec{bs}, EvaluationGrid::ball(3, 1.0, 0.02)).sup <= 1e-3);

  BesselSum zero;
  zero.n = 2;
  zero.m = 1;
  CHECK(helmholtz_residual(WaveSpec{zero}, EvaluationGrid::ball(2, 1.0, 0.05)).sup == 0.0);

  CHECK_THROWS_AS(helmholtz_residual(spec, EvaluationGrid::ball(3, 1.0, 0.6)), ValidationError);
}

TEST_CASE("expand_wave: radial wave hits only the l=0 mode") {
  const FieldEval phi = [](const VecN& x) {
    return CVec::real({2.5 * specfun::bessel_kernel(3, x.norm())});
  };
  const ExpansionResult res = expand_wave(phi, 3, 1, 4);
  // b_00 = 2.5 * sqrt(4 pi) since Y_00 = 1/sqrt(4 pi)
  CHECK(res.expansion.b[0][0][0].real() == doctest::Approx(2.5 * std::sqrt(4 * kPi)).epsilon(1e-9));
  for (int l = 1; l <= 4; ++l)
    for (const auto& c : res.expansion.b[l]) CHECK(c.max_abs() <= 1e-10);
  CHECK(res.l2_residual <= 1e-8);
}

TEST_CASE("expand_wave: plane wave against the classical expansion") {
  const VecN xi0{0.0, 0.6, 0.8};
  const FieldEval phi = [&xi0](const VecN& x) {
    const double ph = x.dot(xi0);
    return CVec{Complex(std::cos(ph), std::sin(ph))};
  };
  const int L = 8;
  const ExpansionResult res = expand_wave(phi, 3, 1, L);

  // sum_k b_lk Y_lk(omega) must equal (2pi)^{3/2} i^l (2l+1)/(4pi) P_l(omega.xi0)
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int trial = 0; trial < 6; ++trial) {
    VecN om(3);
    for (int d = 0; d < 3; ++d) om[d] = unif(rng);
    om = om.normalized();
    for (int l = 0; l <= L; ++l) {
      Complex sum = 0.0;
      for (int k = 1; k <= specfun::harmonic_count(2, l); ++k)
        sum += res.expansion.b[l][k - 1][0] * specfun::sph_harmonic(l, k, om);
      Complex il(1.0, 0.0);
      for (int p = 0; p < l % 4; ++p) il *= Complex(0.0, 1.0);
      const Complex expected =
          std::pow(2 * kPi, 1.5) * il * (2.0 * l + 1.0) / (4.0 * kPi) * legendre(l, om.dot(xi0));
      CHECK(std::abs(sum - expected) <= 1e-8);
    }
  }
}

TEST_CASE("expand_wave reconstruction at L=12") {
  const VecN xi0{1.0, 0.0, 0.0};
  const FieldEval phi = [&xi0](const VecN& x) {
    const double ph = x.dot(xi0);
    return CVec{Complex(std::cos(ph), std::sin(ph))};
  };
  const ExpansionResult res = expand_wave(phi, 3, 1, 12);
  std::mt19937 rng(5);
  double sup = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const VecN x = random_ball_point(rng, 3, 1.0);
    sup = std::max(sup, (eval_expansion(res.expansion, x) - phi(x)).max_abs());
  }
  CHECK(sup <= 1e-6);
}

TEST_CASE("expansion_to_density: constant and round trip") {
  HarmonicExpansion e;
  e.n = 3;
  e.m = 1;
  e.L = 0;
  e.b = {{CVec::real({1.0})}};
  const HerglotzDensity d = expansion_to_density(e);
  CHECK(d.real_constraint);
  const double expected = 1.0 / (std::sqrt(4 * kPi) * std::pow(2 * kPi, 1.5));
  CHECK(d.f(VecN{0.0, 0.0, 1.0})[0].real() == doctest::Approx(expected).epsilon(1e-12));
  CHECK(d.f(VecN{1.0, 0.0, 0.0})[0].real() == doctest::Approx(expected).epsilon(1e-12));

  // round trip: Herglotz integral of the density reproduces the expansion wave
  const VecN xi0{0.8, 0.0, 0.6};
  const FieldEval phi = [&xi0](const VecN& x) {
    const double ph = x.dot(xi0);
    return CVec{Complex(std::cos(ph), std::sin(ph))};
  };
  const ExpansionResult res = expand_wave(phi, 3, 1, 12);
  const HerglotzDensity density = expansion_to_density(res.expansion);
  const WaveField back{WaveSpec{density}};
  std::mt19937 rng(17);
  double sup = 0.0;
  for (int trial = 0; trial < 25; ++trial) {
    const VecN x = random_ball_point(rng, 3, 1.0);
    sup = std::max(sup, (back(x) - eval_expansion(res.expansion, x)).max_abs());
  }
  CHECK(sup <= 1e-8);
}

TEST_CASE("expansion_to_density reality constraint") {
  // real wave: cos(x . xi0)
  const VecN xi0{0.0, 1.0, 0.0};
  const FieldEval phi = [&xi0](const VecN& x) { return CVec::real({std::cos(x.dot(xi0))}); };
  const ExpansionResult res = expand_wave(phi, 3, 1, 10);
  const HerglotzDensity d = expansion_to_density(res.expansion);
  CHECK(d.real_constraint);
  const SphereRule rule = sphere_rule(3, 12);
  for (size_t q = 0; q < rule.nodes.size(); ++q) {
    const CVec a = d.f(rule.nodes[q]);
    const CVec b = d.f(-1.0 * rule.nodes[q]);
    CHECK((a - b.conj()).max_abs() <= 1e-10);
  }
}

TEST_CASE("representation agreement through the kernel identity") {
  // Bessel sum vs the Herglotz density f(xi) = (2pi)^{-n/2} sum c_j e^{-i x_j . xi}
  BesselSum bs;
  bs.n = 3;
  bs.m = 1;
  bs.radius = 1.0;
  bs.terms.push_back({CVec::real({1.0}), VecN{0.5, 0.0, 0.0}});
  bs.terms.push_back({CVec::real({-0.7}), VecN{-0.3, 0.4, 0.0}});

  HerglotzDensity hd;
  hd.n = 3;
  hd.m = 1;
  const auto terms = bs.terms;
  hd.f = [terms](const VecN& xi) {
    Complex acc = 0.0;
    for (const auto& t : terms) {
      const double ph = -t.x.dot(xi);
      acc += t.c[0] * Complex(std::cos(ph), std::sin(ph));
    }
    return CVec{std::pow(2 * kPi, -1.5) * acc};
  };
  const WaveField direct{WaveSpec{bs}};
  const WaveField via_density{WaveSpec{hd}};
  std::mt19937 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const VecN x = random_ball_point(rng, 3, 1.0);
    CHECK((direct(x) - via_density(x)).max_abs() <= 1e-9);
  }
}

TEST_CASE("multiplicity") {
  CHECK(multiplicity(1, 2).d == 3);
  CHECK(multiplicity(2, 3).d == 9);
  for (int n = 2; n <= 8; ++n)
    for (int N : {0, 1, 2, 3, 5, 10, 50, 100, 200}) {
      const auto mult = multiplicity(N, n);
      // the ratio form binom(N+n-1, N) (2N+n-1)/(N+n-1) must give the same integer
      const double ratio = std::exp(std::lgamma(N + n) - std::lgamma(N + 1.0) - std::lgamma(double(n))) *
                           (2.0 * N + n - 1.0) / (N + n - 1.0);
      CHECK(std::abs(ratio - double(mult.d)) <= 1e-6 * std::max(1.0, ratio));
    }
}
