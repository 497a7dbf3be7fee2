#pragma once

#include <utility>

#include "eigenloc/vec.hpp"

namespace eigenloc::specfun {

// Bessel function of the first kind J_nu(t), t >= 0. Orders are restricted
// to the half-integers and integers nu = n/2 - 1, n >= 2, plus the shifted
// orders l + n/2 - 1 needed for radial expansions. Half-integer orders go
// through the spherical Bessel closed forms, integer orders through the
// power series for small t and Miller's normalized backward recurrence
// otherwise.
double bessel_j(double nu, double t);

// Spherical Bessel function j_l(t) = sqrt(pi/(2t)) J_{l+1/2}(t).
double sph_bessel(int l, double t);

// J_{n/2-1}(r) / r^{n/2-1} with the removable singularity at r = 0 filled
// by the series limit 1/(2^{n/2-1} Gamma(n/2)).
double bessel_kernel(int n, double r);

// Radial profile of the degree-l mode in R^n: J_{l+n/2-1}(r)/r^{n/2-1},
// normalized so that int_{S^{n-1}} e^{ix.xi} Y_lk(xi) dsigma
//   = (2 pi)^{n/2} i^l hyperspherical_bessel(n,l,r) Y_lk(x/r).
// Reduces to bessel_kernel for l = 0.
double hyperspherical_bessel(int n, int l, double r);

// Symmetric Jacobi polynomial P_N^{(alpha,alpha)}(t), |t| <= 1, by the
// three-term recurrence in N. The recurrence runs in extended precision;
// endpoint values grow like binom(N+alpha, N).
double jacobi_poly(int N, double alpha, double t);

// Ultraspherical kernel C^n_N(t) = [Gamma(N+1)Gamma(n/2)/Gamma(N+n/2)]
// P_N^{(n/2-1,n/2-1)}(t), normalized so C^n_N(1) = 1. The gamma ratio is
// computed in log space.
double gegenbauer_norm(int N, int n, double t);

// The two sides of the Darboux/Mehler-Heine limit at argument t:
//   first  = N^{1-n/2} P_N^{(n/2-1,n/2-1)}(cos(t/N))
//   second = 2^{n/2-1} bessel_kernel(n, t)
// They agree up to O(1/N) uniformly on compact t-ranges.
std::pair<double, double> mehler_heine_pair(int N, int n, double t);

// Number of degree-l Laplace eigenfunctions (spherical harmonics) on the
// sphere S^dim: binom(l+dim, dim) - binom(l+dim-2, dim).
long long harmonic_count(int dim, int l);

// Real orthonormal spherical harmonic Y_{lk}(omega) with respect to the
// area measure; omega is a unit vector in R^2 (circle) or R^3 (2-sphere),
// 1 <= k <= harmonic_count(dim, l).
double sph_harmonic(int l, int k, const VecN& omega);

}  // namespace eigenloc::specfun
