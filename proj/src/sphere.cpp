#include "eigenloc/sphere.hpp"

#include <cmath>

#include "eigenloc/errors.hpp"
#include "eigenloc/specfun.hpp"

namespace eigenloc::sphere {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kAntipodalTol = 1e-6;
}  // namespace

GeodesicChart make_chart(int n, const VecN& base) {
  if (base.size() != n + 1) throw ValidationError("make_chart: base must lie in R^{n+1}");
  GeodesicChart chart;
  chart.n = n;
  chart.base = base.normalized();
  // Gram-Schmidt on the coordinate axes against the base point
  for (int axis = 0; axis <= n && int(chart.frame.size()) < n; ++axis) {
    VecN e(n + 1);
    e[axis] = 1.0;
    VecN v = e - e.dot(chart.base) * chart.base;
    for (const auto& f : chart.frame) v -= v.dot(f) * f;
    if (v.norm() > 1e-8) chart.frame.push_back(v.normalized());
  }
  if (int(chart.frame.size()) != n) throw NumericalError("make_chart: frame construction failed");
  return chart;
}

VecN chart_map(const GeodesicChart& chart, const VecN& x) {
  if (x.size() != chart.n) throw ValidationError("chart_map: point dimension mismatch");
  const double r = x.norm();
  if (r >= kPi) throw ValidationError("chart_map: |x| must be < pi");
  if (r < 1e-300) return chart.base;
  VecN dir(chart.n + 1);
  for (int i = 0; i < chart.n; ++i) dir += (x[i] / r) * chart.frame[i];
  return std::cos(r) * chart.base + std::sin(r) * dir;
}

VecN chart_inverse(const GeodesicChart& chart, const VecN& p) {
  if (p.size() != chart.n + 1) throw ValidationError("chart_inverse: point dimension mismatch");
  if (std::abs(p.norm() - 1.0) > 1e-10) throw ValidationError("chart_inverse: point not on the sphere");
  const double c = std::min(1.0, std::max(-1.0, p.dot(chart.base)));
  if (c < -1.0 + kAntipodalTol * kAntipodalTol)
    throw ValidationError("chart_inverse: point is antipodal to the chart base");
  const double t = std::acos(c);  // geodesic distance
  VecN x(chart.n);
  if (t < 1e-300) return x;
  const VecN u = p - c * chart.base;
  const double s = u.norm();
  for (int i = 0; i < chart.n; ++i) x[i] = t * u.dot(chart.frame[i]) / s;
  return x;
}

SphereEigenfunction synthesize_sphere(const waves::BesselSum& bs, int N,
                                      const GeodesicChart& chart) {
  if (N <= bs.radius)
    throw ValidationError("synthesize_sphere: need N > radius of the Bessel sum");
  SphereEigenfunction psi;
  psi.N = N;
  psi.n = chart.n;
  psi.m = bs.m;
  psi.norm_constant =
      1.0 / (std::pow(2.0, 0.5 * chart.n - 1.0) * std::tgamma(0.5 * chart.n));
  for (const auto& t : bs.terms) psi.terms.push_back({t.c, chart_map(chart, (1.0 / N) * t.x)});
  return psi;
}

CVec eval_sphere(const SphereEigenfunction& psi, const VecN& p) {
  if (p.size() != psi.n + 1) throw ValidationError("eval_sphere: point dimension mismatch");
  if (std::abs(p.norm() - 1.0) > 1e-10) throw ValidationError("eval_sphere: point not on the sphere");
  CVec out(psi.m);
  for (const auto& t : psi.terms) {
    const double dot = std::min(1.0, std::max(-1.0, p.dot(t.p)));
    out.add_scaled(psi.norm_constant * specfun::gegenbauer_norm(psi.N, psi.n, dot), t.c);
  }
  return out;
}

double decay_profile(int N, int n, double rho) {
  if (!(rho > 0 && rho < kPi / 2)) throw ValidationError("decay_profile: rho must be in (0, pi/2)");
  // grid fine enough to resolve the ~pi/N oscillation of the kernel
  const int steps = std::max(64, 8 * N);
  double sup = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double th = rho + (kPi - 2 * rho) * i / steps;
    sup = std::max(sup, std::abs(specfun::gegenbauer_norm(N, n, std::cos(th))));
  }
  return sup;
}

MultiResult multi_synthesize(const std::vector<MultiTarget>& targets, int N) {
  if (targets.empty()) throw ValidationError("multi_synthesize: no targets");
  const int n = targets[0].chart.n;
  for (size_t a = 0; a < targets.size(); ++a) {
    if (targets[a].chart.n != n) throw ValidationError("multi_synthesize: mixed dimensions");
    for (size_t b = 0; b < a; ++b) {
      const VecN& pa = targets[a].chart.base;
      const VecN& pb = targets[b].chart.base;
      if ((pa - pb).norm() < kAntipodalTol)
        throw ValidationError("multi_synthesize: coincident base points");
      if ((pa + pb).norm() < kAntipodalTol)
        throw ValidationError("multi_synthesize: antipodal base points");
    }
  }

  MultiResult out;
  out.rho = kPi;
  double mass = 0.0;
  for (size_t a = 0; a < targets.size(); ++a) {
    SphereEigenfunction part = synthesize_sphere(targets[a].target, N, targets[a].chart);
    if (a == 0) {
      out.psi = part;
    } else {
      if (part.m != out.psi.m) throw ValidationError("multi_synthesize: mixed component counts");
      out.psi.terms.insert(out.psi.terms.end(), part.terms.begin(), part.terms.end());
    }
    for (const auto& t : part.terms) mass += part.norm_constant * t.c.max_abs();
    for (size_t b = 0; b < a; ++b) {
      const double c = std::min(
          1.0, std::max(-1.0, targets[a].chart.base.dot(targets[b].chart.base)));
      out.rho = std::min(out.rho, 0.5 * std::acos(c));
    }
  }
  if (targets.size() == 1) out.rho = kPi / 4;
  out.interference_bound = decay_profile(N, n, std::min(out.rho, kPi / 2 - 1e-9)) * mass;
  return out;
}

}  // namespace eigenloc::sphere
