#pragma once

#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include "eigenloc/grid.hpp"
#include "eigenloc/vec.hpp"

namespace eigenloc::waves {

// Monochromatic wave (solution of Delta phi + phi = 0 in R^n) as a finite
// sum of shifted radial Bessel kernels. Coefficients are real vectors in
// R^m, stored in CVec form with zero imaginary part.
struct BesselSum {
  int n = 3;
  int m = 1;
  double radius = 0.0;  // all shifts lie in the closed ball B_radius
  struct Term {
    CVec c;
    VecN x;
  };
  std::vector<Term> terms;
};

// Finite sum of unit-frequency plane waves c_k e^{i xi_k . x}.
struct PlaneWaveSum {
  int n = 3;
  int m = 1;
  struct Term {
    CVec c;
    VecN xi;  // unit vector
  };
  std::vector<Term> terms;
};

// Density f on S^{n-1} whose Fourier extension int f(xi) e^{ix.xi} dsigma
// is the wave. The callable must be defined on the whole unit sphere.
struct HerglotzDensity {
  int n = 3;
  int m = 1;
  bool real_constraint = false;  // f(-xi) = conj(f(xi))
  int degree_hint = 24;          // quadrature degree used for evaluation and serialization
  std::function<CVec(const VecN&)> f;
};

// Truncated radial-harmonic expansion
//   phi = sum_{l<=L} sum_k b_lk hyperspherical_bessel(n,l,r) Y_lk(omega),
// n in {2, 3}.
struct HarmonicExpansion {
  int n = 3;
  int m = 1;
  int L = 0;
  std::vector<std::vector<CVec>> b;  // b[l][k-1], k = 1..harmonic_count(n-1, l)
};

using WaveSpec = std::variant<BesselSum, PlaneWaveSum, HerglotzDensity, HarmonicExpansion>;

int spec_dim(const WaveSpec&);
int spec_components(const WaveSpec&);

// Dimension of the degree-N eigenspace of the Laplacian on S^n.
struct Multiplicity {
  int N = 0;
  int n = 2;
  long long d = 0;
};
Multiplicity multiplicity(int N, int n);

// Prepared pointwise evaluator. Herglotz densities are integrated with a
// sphere rule whose degree starts at degree_hint and doubles until two
// consecutive rules agree to `tol` at a probe point; failure to converge
// below the tolerance raises QuadratureError.
class WaveField {
 public:
  explicit WaveField(WaveSpec spec, double tol = 1e-10);
  CVec operator()(const VecN& x) const;
  int n() const { return n_; }
  int m() const { return m_; }

 private:
  WaveSpec spec_;
  int n_ = 3;
  int m_ = 1;
  // cached quadrature for the Herglotz case
  std::vector<VecN> qnodes_;
  std::vector<double> qw_;  // weight * f folded per component would need CVec; keep weights
  std::vector<CVec> qf_;
};

CVec eval_wave(const WaveSpec& spec, const VecN& x);
CVec eval_expansion(const HarmonicExpansion& e, const VecN& x);

// Sup over interior grid nodes of |Delta_h phi + phi| with the centered
// second-order stencil, plus the h^2 scale expected for a field of this
// size (diagnostic only).
struct ResidualReport {
  double sup = 0.0;
  double h2_scale = 0.0;
};
ResidualReport helmholtz_residual(const WaveSpec& spec, const EvaluationGrid& geometry);

// L^2(S^{n-1}) projections of phi at several radii in (0, 2), combined by
// least squares against the radial profiles. Reports the L^2(B_2) residual
// of the truncated expansion against phi.
struct ExpansionResult {
  HarmonicExpansion expansion;
  double l2_residual = 0.0;
};
ExpansionResult expand_wave(const FieldEval& phi, int n, int m, int L, int quad_degree = -1);

// Herglotz density f1 with int f1(xi) e^{ix.xi} dsigma reproducing the
// expansion exactly: f1 = sum b_lk Y_lk / ((2 pi)^{n/2} i^l).
HerglotzDensity expansion_to_density(const HarmonicExpansion& e);

}  // namespace eigenloc::waves
