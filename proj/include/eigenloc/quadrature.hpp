#pragma once

#include <vector>

#include "eigenloc/vec.hpp"

namespace eigenloc {

// Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int q, std::vector<double>& nodes, std::vector<double>& weights);

// Quadrature rule on the unit sphere S^{n-1} in R^n, for the area measure.
// For n = 2 (circle) and n = 3 it integrates spherical harmonics exactly up
// to the stated degree; for n = 4 the rule is a smooth product rule of
// comparable resolution without an exactness guarantee.
struct SphereRule {
  int n = 3;
  int degree = 0;
  std::vector<VecN> nodes;
  std::vector<double> weights;
};

SphereRule sphere_rule(int n, int degree);

// Surface area of S^{n-1}: 2 pi^{n/2} / Gamma(n/2).
double sphere_area(int n);

// Volume of the ball of radius R in R^n.
double ball_volume(int n, double R);

}  // namespace eigenloc
