#pragma once

#include <vector>

#include "eigenloc/vec.hpp"
#include "eigenloc/waves.hpp"

namespace eigenloc::sphere {

// Normal geodesic coordinates at a base point of S^n in R^{n+1}:
// chart_map(x) = cos|x| p0 + sin|x| (frame x)/|x|.
struct GeodesicChart {
  int n = 3;
  VecN base;                 // unit vector in R^{n+1}
  std::vector<VecN> frame;   // orthonormal tangent frame at base
  double radius = 3.14159265358979323846;
};

GeodesicChart make_chart(int n, const VecN& base);

VecN chart_map(const GeodesicChart& chart, const VecN& x);
// exact left inverse; rejects the antipode of the base point
VecN chart_inverse(const GeodesicChart& chart, const VecN& p);

// Degree-N eigenfunction of the Laplacian on S^n with eigenvalue N(N+n-1),
// written as a sum of zonal ultraspherical kernels C^n_N(p . p_j):
//    psi(p) = norm_constant * sum_j c_j C^n_N(p . p_j).
// Parity psi(-p) = (-1)^N psi(p) holds identically.
struct SphereEigenfunction {
  int N = 0;
  int n = 3;
  int m = 1;
  double norm_constant = 1.0;  // 1/(2^{n/2-1} Gamma(n/2))
  struct Term {
    CVec c;  // real coefficients
    VecN p;  // point on S^n
  };
  std::vector<Term> terms;
  double eigenvalue() const { return double(N) * (N + n - 1); }
};

// psi(p) = norm * sum_j c_j C^n_N(p . p_j) with p_j = chart_map(x_j / N);
// requires N > radius(bs) so all p_j stay in the chart.
SphereEigenfunction synthesize_sphere(const waves::BesselSum& bs, int N,
                                      const GeodesicChart& chart);

CVec eval_sphere(const SphereEigenfunction& psi, const VecN& p);

// sup over theta in [rho, pi - rho] of |C^n_N(cos theta)|; the uniform
// bound behind multi-point localization (decays like 1/N).
double decay_profile(int N, int n, double rho);

struct MultiTarget {
  GeodesicChart chart;
  waves::BesselSum target;
};

struct MultiResult {
  SphereEigenfunction psi;
  double rho = 0.0;                  // half the minimum pairwise distance
  double interference_bound = 0.0;   // decay_profile * total coefficient mass
};

// Sum of the single-target syntheses. Base points must be pairwise
// distinct and non-antipodal.
MultiResult multi_synthesize(const std::vector<MultiTarget>& targets, int N);

}  // namespace eigenloc::sphere
