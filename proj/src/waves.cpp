#include "eigenloc/waves.hpp"

#include <cmath>

#include "eigenloc/errors.hpp"
#include "eigenloc/quadrature.hpp"
#include "eigenloc/specfun.hpp"

namespace eigenloc::waves {

namespace {
constexpr double kPi = 3.14159265358979323846;

Complex ipow(int l) {
  switch (((l % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}
}  // namespace

int spec_dim(const WaveSpec& s) {
  return std::visit([](const auto& v) { return v.n; }, s);
}

int spec_components(const WaveSpec& s) {
  return std::visit([](const auto& v) { return v.m; }, s);
}

Multiplicity multiplicity(int N, int n) {
  return {N, n, specfun::harmonic_count(n, N)};
}

CVec eval_expansion(const HarmonicExpansion& e, const VecN& x) {
  const double r = x.norm();
  CVec out(e.m);
  VecN omega(e.n);
  if (r > 1e-14) {
    omega = x.normalized();
  } else {
    omega[e.n - 1] = 1.0;  // only l = 0 contributes at the origin
  }
  for (int l = 0; l <= e.L; ++l) {
    const double jl = specfun::hyperspherical_bessel(e.n, l, r);
    if (r <= 1e-14 && l > 0) continue;
    const long long dk = specfun::harmonic_count(e.n - 1, l);
    for (int k = 1; k <= dk; ++k) {
      const double y = specfun::sph_harmonic(l, k, omega);
      out.add_scaled(jl * y, e.b[l][k - 1]);
    }
  }
  return out;
}

WaveField::WaveField(WaveSpec spec, double tol) : spec_(std::move(spec)) {
  n_ = spec_dim(spec_);
  m_ = spec_components(spec_);
  if (auto* hd = std::get_if<HerglotzDensity>(&spec_)) {
    if (!hd->f) throw ValidationError("WaveField: Herglotz density has no callable");
    // pick a rule degree by probing convergence of the integral of |f| e^{ix.xi}
    int degree = std::max(8, hd->degree_hint);
    const int max_degree = 256;
    VecN probe(n_);
    probe[0] = 1.0;  // |x| ~ 1 is the scale the pipelines use
    auto integrate = [&](int deg, std::vector<VecN>& nodes, std::vector<double>& w,
                         std::vector<CVec>& fv) {
      SphereRule rule = sphere_rule(n_, deg);
      nodes = std::move(rule.nodes);
      w = std::move(rule.weights);
      fv.clear();
      fv.reserve(nodes.size());
      for (const auto& xi : nodes) fv.push_back(hd->f(xi));
      CVec acc(m_);
      for (size_t q = 0; q < nodes.size(); ++q)
        acc.add_scaled(w[q] * Complex(std::cos(probe.dot(nodes[q])), std::sin(probe.dot(nodes[q]))), fv[q]);
      return acc;
    };
    CVec prev = integrate(degree, qnodes_, qw_, qf_);
    while (true) {
      std::vector<VecN> nodes;
      std::vector<double> w;
      std::vector<CVec> fv;
      CVec next = integrate(2 * degree, nodes, w, fv);
      const double diff = (next - prev).max_abs();
      qnodes_ = std::move(nodes);
      qw_ = std::move(w);
      qf_ = std::move(fv);
      if (diff <= tol) break;
      degree *= 2;
      prev = next;
      if (degree > max_degree)
        throw QuadratureError("WaveField: sphere quadrature did not reach the requested tolerance");
    }
  }
}

CVec WaveField::operator()(const VecN& x) const {
  CVec out(m_);
  if (const auto* bs = std::get_if<BesselSum>(&spec_)) {
    for (const auto& t : bs->terms) out.add_scaled(specfun::bessel_kernel(n_, (x - t.x).norm()), t.c);
    return out;
  }
  if (const auto* pw = std::get_if<PlaneWaveSum>(&spec_)) {
    for (const auto& t : pw->terms) {
      const double ph = t.xi.dot(x);
      out.add_scaled(Complex(std::cos(ph), std::sin(ph)), t.c);
    }
    return out;
  }
  if (const auto* he = std::get_if<HarmonicExpansion>(&spec_)) return eval_expansion(*he, x);
  for (size_t q = 0; q < qnodes_.size(); ++q) {
    const double ph = qnodes_[q].dot(x);
    out.add_scaled(qw_[q] * Complex(std::cos(ph), std::sin(ph)), qf_[q]);
  }
  return out;
}

CVec eval_wave(const WaveSpec& spec, const VecN& x) {
  return WaveField(spec)(x);
}

ResidualReport helmholtz_residual(const WaveSpec& spec, const EvaluationGrid& geometry) {
  for (int d = 0; d < geometry.n(); ++d)
    if (geometry.dims()[d] < 5) throw ValidationError("helmholtz_residual: fewer than 5 nodes per axis");
  EvaluationGrid g = geometry;
  if (g.m() != spec_components(spec))
    g = EvaluationGrid(g.n(), g.point(0, 0, 0), g.dims(), g.h(), spec_components(spec));
  WaveField field(spec);
  g.fill([&](const VecN& x) { return field(x); });

  const double h2 = g.h() * g.h();
  ResidualReport rep;
  const auto& dims = g.dims();
  for (int k = 0; k < dims[2]; ++k)
    for (int j = 0; j < dims[1]; ++j)
      for (int i = 0; i < dims[0]; ++i) {
        if (!g.interior(i, j, k)) continue;
        for (int c = 0; c < g.m(); ++c) {
          const double center = g.value(g.index(i, j, k), c);
          double lap = 0.0;
          lap += g.value(g.index(i - 1, j, k), c) + g.value(g.index(i + 1, j, k), c) - 2 * center;
          lap += g.value(g.index(i, j - 1, k), c) + g.value(g.index(i, j + 1, k), c) - 2 * center;
          if (g.n() == 3)
            lap += g.value(g.index(i, j, k - 1), c) + g.value(g.index(i, j, k + 1), c) - 2 * center;
          rep.sup = std::max(rep.sup, std::abs(lap / h2 + center));
        }
      }
  rep.h2_scale = h2 * g.max_abs();
  return rep;
}

ExpansionResult expand_wave(const FieldEval& phi, int n, int m, int L, int quad_degree) {
  if (n != 2 && n != 3) throw ValidationError("expand_wave: dimension must be 2 or 3");
  if (L < 0) throw ValidationError("expand_wave: negative cutoff");
  if (quad_degree < 0) quad_degree = 2 * L + 12;
  const SphereRule rule = sphere_rule(n, quad_degree);

  // radii spread over (0, 2); enough of them to make every j_l fit well posed
  const int nr = std::max(2 * L + 10, 16);
  std::vector<double> radii(nr);
  for (int q = 0; q < nr; ++q) radii[q] = 0.12 + (1.95 - 0.12) * (q + 0.5) / nr;

  // sphere samples of phi at every radius
  std::vector<std::vector<CVec>> samples(nr);
  for (int q = 0; q < nr; ++q) {
    samples[q].reserve(rule.nodes.size());
    for (const auto& om : rule.nodes) samples[q].push_back(phi(radii[q] * om));
  }

  HarmonicExpansion e;
  e.n = n;
  e.m = m;
  e.L = L;
  e.b.resize(L + 1);
  for (int l = 0; l <= L; ++l) {
    const long long dk = specfun::harmonic_count(n - 1, l);
    e.b[l].assign(dk, CVec(m));
    double denom = 0.0;
    for (int q = 0; q < nr; ++q) {
      const double jl = specfun::hyperspherical_bessel(n, l, radii[q]);
      denom += jl * jl;
    }
    if (denom < 1e-26)
      throw NumericalError("expand_wave: radial profile vanishes at all sample radii (degree too high)");
    for (int k = 1; k <= dk; ++k) {
      // s_lk(r_q) = int phi(r_q omega) Y_lk(omega) dsigma; then LS against j_l
      CVec acc(m);
      for (int q = 0; q < nr; ++q) {
        CVec s(m);
        for (size_t p = 0; p < rule.nodes.size(); ++p) {
          const double y = specfun::sph_harmonic(l, k, rule.nodes[p]);
          s.add_scaled(rule.weights[p] * y, samples[q][p]);
        }
        acc.add_scaled(specfun::hyperspherical_bessel(n, l, radii[q]), s);
      }
      acc *= 1.0 / denom;
      e.b[l][k - 1] = acc;
    }
  }

  // L^2(B_2) residual by radial x sphere quadrature
  double res2 = 0.0;
  std::vector<double> gx, gw;
  gauss_legendre(24, gx, gw);
  for (size_t iq = 0; iq < gx.size(); ++iq) {
    const double r = 1.0 + gx[iq];  // map [-1,1] -> [0,2]
    const double wr = gw[iq] * std::pow(r, n - 1);
    for (size_t p = 0; p < rule.nodes.size(); ++p) {
      const VecN x = r * rule.nodes[p];
      const CVec diff = phi(x) - eval_expansion(e, x);
      double a2 = 0.0;
      for (int c = 0; c < m; ++c) a2 += std::norm(diff[c]);
      res2 += wr * rule.weights[p] * a2;
    }
  }
  return {std::move(e), std::sqrt(std::max(0.0, res2))};
}

HerglotzDensity expansion_to_density(const HarmonicExpansion& e) {
  if (e.n != 2 && e.n != 3) throw ValidationError("expansion_to_density: dimension must be 2 or 3");
  const double scale = std::pow(2.0 * kPi, -0.5 * e.n);
  // a_lk = b_lk / ((2 pi)^{n/2} i^l)
  auto coeffs = std::make_shared<std::vector<std::vector<CVec>>>(e.b);
  for (int l = 0; l < int(coeffs->size()); ++l) {
    const Complex f = scale / ipow(l);
    for (auto& c : (*coeffs)[l]) c *= f;
  }
  // density is real-compatible iff all b_lk are (numerically) real
  double max_imag = 0.0;
  for (const auto& row : e.b)
    for (const auto& c : row) max_imag = std::max(max_imag, c.max_abs_imag());

  HerglotzDensity d;
  d.n = e.n;
  d.m = e.m;
  d.real_constraint = max_imag < 1e-10;
  d.degree_hint = std::max(24, 2 * e.L + 4);
  const int n = e.n, m = e.m, L = e.L;
  d.f = [coeffs, n, m, L](const VecN& xi) {
    CVec out(m);
    for (int l = 0; l <= L; ++l) {
      const long long dk = specfun::harmonic_count(n - 1, l);
      for (int k = 1; k <= dk; ++k)
        out.add_scaled(specfun::sph_harmonic(l, k, xi), (*coeffs)[l][k - 1]);
    }
    return out;
  };
  return d;
}

}  // namespace eigenloc::waves
