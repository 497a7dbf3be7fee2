#include "eigenloc/torus.hpp"

#include <cmath>
#include <map>

#include "eigenloc/errors.hpp"

namespace eigenloc::torus {

namespace {

long long isqrt_exact(long long r) {
  // returns s >= 0 with s*s == r, or -1
  if (r < 0) return -1;
  long long s = llround(std::sqrt(double(r)));
  while (s > 0 && s * s > r) --s;
  while ((s + 1) * (s + 1) <= r) ++s;
  return s * s == r ? s : -1;
}

}  // namespace

VecN LatticeSphere::direction(size_t i) const {
  VecN v(n);
  for (int d = 0; d < n; ++d) v[d] = double(points[i][d]) / N;
  return v;
}

LatticeSphere enumerate_lattice(int N, int n, int cap) {
  if (n < 2 || n > 4) throw ValidationError("enumerate_lattice: dimension must be 2, 3 or 4");
  if (N < 1) throw ValidationError("enumerate_lattice: N must be >= 1");
  if (cap <= 0) cap = (n == 2) ? 100000 : (n == 3 ? 2000 : 300);
  if (N > cap) throw ValidationError("enumerate_lattice: N exceeds the configured cap");

  LatticeSphere out;
  out.N = N;
  out.n = n;
  const long long N2 = 1LL * N * N;

  if (n == 2) {
    for (long long a = -N; a <= N; ++a) {
      const long long b = isqrt_exact(N2 - a * a);
      if (b < 0) continue;
      out.points.push_back({a, b, 0, 0});
      if (b != 0) out.points.push_back({a, -b, 0, 0});
    }
    return out;
  }

  if (n == 3) {
    for (long long a = -N; a <= N; ++a)
      for (long long b = -N; b <= N; ++b) {
        const long long c = isqrt_exact(N2 - a * a - b * b);
        if (c < 0) continue;
        out.points.push_back({a, b, c, 0});
        if (c != 0) out.points.push_back({a, b, -c, 0});
      }
    return out;
  }

  for (long long a = -N; a <= N; ++a)
    for (long long b = -N; b <= N; ++b)
      for (long long c = -N; c <= N; ++c) {
        const long long d = isqrt_exact(N2 - a * a - b * b - c * c);
        if (d < 0) continue;
        out.points.push_back({a, b, c, d});
        if (d != 0) out.points.push_back({a, b, c, -d});
      }
  return out;
}

CapAssignment assign_caps(const herglotz::SphericalCapCover& cover, const LatticeSphere& lattice) {
  if (cover.n != lattice.n) throw ValidationError("assign_caps: dimension mismatch");
  CapAssignment out;
  out.lattice_index.assign(cover.cells.size(), -1);
  std::vector<double> best(cover.cells.size(), 1e300);
  for (size_t i = 0; i < lattice.points.size(); ++i) {
    const VecN xi = lattice.direction(i);
    for (size_t cell = 0; cell < cover.cells.size(); ++cell) {
      if (!cover.contains(int(cell), xi)) continue;
      const double d = (xi - cover.cells[cell].center).norm();
      if (d < best[cell]) {
        best[cell] = d;
        out.lattice_index[cell] = int(i);
      }
    }
  }
  for (size_t cell = 0; cell < cover.cells.size(); ++cell)
    if (out.lattice_index[cell] < 0) out.empty_cells.push_back(int(cell));
  return out;
}

TorusSynthesis synthesize_torus(const waves::HerglotzDensity& density,
                                const herglotz::SphericalCapCover& cover, int N) {
  if (density.n != cover.n) throw ValidationError("synthesize_torus: dimension mismatch");
  if (!density.f) throw ValidationError("synthesize_torus: density has no callable");
  TorusSynthesis out;
  if (N % 2 == 0) {
    if (cover.n < 4)
      throw ValidationError("synthesize_torus: even N rejected for n <= 3");
    out.even_warning = true;
  }

  const LatticeSphere lattice = enumerate_lattice(N, cover.n);
  const CapAssignment assignment = assign_caps(cover, lattice);
  if (!assignment.complete())
    throw EmptyCellError("synthesize_torus: cover cells without a lattice direction",
                         assignment.empty_cells);

  out.psi.N = N;
  out.psi.n = cover.n;
  out.psi.m = density.m;
  out.psi.real_valued = density.real_constraint;
  out.snapped.n = cover.n;
  out.snapped.m = density.m;

  // merge Hermitian pairs by mode key so c_{-k} = conj(c_k) holds exactly
  std::map<LatticePoint, CVec> modes;
  auto add_mode = [&](const LatticePoint& k, const CVec& c) {
    auto it = modes.find(k);
    if (it == modes.end())
      modes.emplace(k, c);
    else
      it->second += c;
  };

  for (size_t cell = 0; cell < cover.cells.size(); ++cell) {
    const int li = assignment.lattice_index[cell];
    const VecN xi = lattice.direction(li);
    CVec c = density.f(xi);
    c *= cover.cells[cell].area;
    const LatticePoint k = lattice.points[li];
    if (density.real_constraint) {
      LatticePoint mk{};
      for (int d = 0; d < cover.n; ++d) mk[d] = -k[d];
      add_mode(k, Complex(0.5) * c);
      add_mode(mk, Complex(0.5) * c.conj());
      out.snapped.terms.push_back({Complex(0.5) * c, xi});
      out.snapped.terms.push_back({Complex(0.5) * c.conj(), -1.0 * xi});
    } else {
      add_mode(k, c);
      out.snapped.terms.push_back({c, xi});
    }
  }
  for (const auto& [k, c] : modes) out.psi.modes.push_back({k, c});
  return out;
}

CVec eval_torus(const TorusEigenfunction& psi, const VecN& x) {
  if (x.size() != psi.n) throw ValidationError("eval_torus: point dimension mismatch");
  CVec out(psi.m);
  for (const auto& mode : psi.modes) {
    double ph = 0.0;
    for (int d = 0; d < psi.n; ++d) ph += mode.k[d] * x[d];
    out.add_scaled(Complex(std::cos(ph), std::sin(ph)), mode.c);
  }
  return out;
}

CVec eval_torus_laplacian(const TorusEigenfunction& psi, const VecN& x) {
  CVec out(psi.m);
  for (const auto& mode : psi.modes) {
    double ph = 0.0;
    long long k2 = 0;
    for (int d = 0; d < psi.n; ++d) {
      ph += mode.k[d] * x[d];
      k2 += mode.k[d] * mode.k[d];
    }
    out.add_scaled(-double(k2) * Complex(std::cos(ph), std::sin(ph)), mode.c);
  }
  return out;
}

Torus2Search search_torus2(int N_lo, int N_hi, const herglotz::SphericalCapCover& cover,
                           bool odd_only) {
  if (cover.n != 2) throw ValidationError("search_torus2: cover must be on the circle");
  if (N_lo < 1 || N_hi < N_lo) throw ValidationError("search_torus2: bad range");
  Torus2Search out;
  for (int N = N_lo; N <= N_hi; ++N) {
    if (odd_only && N % 2 == 0) continue;
    const LatticeSphere lattice = enumerate_lattice(N, 2);
    const CapAssignment a = assign_caps(cover, lattice);
    out.examined.push_back(N);
    out.first_empty_cell.push_back(a.complete() ? -1 : a.empty_cells.front());
    if (a.complete()) out.admissible.push_back(N);
  }
  return out;
}

}  // namespace eigenloc::torus
