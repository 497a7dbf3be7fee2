#pragma once

#include <array>
#include <vector>

#include "eigenloc/vec.hpp"
#include "eigenloc/waves.hpp"

namespace eigenloc::herglotz {

// One cell of a zonal partition of S^{n-1}. Cells are intervals in the
// zonal coordinates (see cap_coordinates): an angle for n = 2, a polar
// band x azimuth interval for n = 3, and an extra leading polar interval
// for n = 4. `center` is the coordinate midpoint of the cell and `rep`
// the representative used for discretization, an interior point placed a
// quarter of the way through each interval so that the quadrature error
// stays genuinely first order in the cell diameter.
struct CapCell {
  VecN center;
  VecN rep;
  double area = 0.0;
  double diam_bound = 0.0;
  int levels = 1;
  std::array<std::array<double, 2>, 3> zonal{};  // [level][lo, hi]
};

// zonal coordinates of a unit vector: n=2 -> {azimuth}; n=3 -> {polar,
// azimuth}; n=4 -> {leading polar, polar, azimuth}
std::vector<double> cap_coordinates(int n, const VecN& xi);

struct SphericalCapCover {
  int n = 3;
  double eps = 0.0;
  std::vector<CapCell> cells;

  double total_area() const;
  bool contains(int cell, const VecN& xi) const;
  // index of the cell containing xi (every unit vector lies in exactly one
  // cell up to boundary ties, resolved toward the lower interval)
  int locate(const VecN& xi) const;
};

// Equal-area-style zonal partition with cell diameters <= eps (Euclidean
// diameter; the geodesic bound is enforced in construction).
SphericalCapCover build_cap_cover(int n, double eps, long long max_cells = 1000000);

// Cell of a polar cover of the ball B_R: radial shell x cap cell, plus one
// central ball cell. Volumes are closed form.
struct BallCell {
  VecN point;  // representative used for discretization
  double volume = 0.0;
  double diam_bound = 0.0;
};

struct BallCellCover {
  int n = 3;
  double R = 0.0;
  double delta = 0.0;
  std::vector<BallCell> cells;
  double total_volume() const;
};

BallCellCover build_ball_cover(int n, double R, double delta, long long max_cells = 4000000);

// Smooth radial bump: chi(s) = 1 for |s-1| < a, 0 for |s-1| > b, glued by
// the exp(-1/t) smooth step in between.
struct BumpProfile {
  double a = 0.25;
  double b = 0.5;
  double operator()(double s) const;
};

// One plane wave per cell with c_k = f(xi_k) |U_k|, xi_k the cell
// representative. Densities with the reality constraint are Hermitian
// symmetrized (each term split into a conjugate pair) so the wave is real.
waves::PlaneWaveSum discretize_density(const waves::HerglotzDensity& f,
                                       const SphericalCapCover& cover);

// Fourier transform ghat(x) = (2 pi)^{-n} int chi(|xi|) f2(xi/|xi|)
// e^{i x.xi} dxi, evaluated by tensor quadrature over the supporting
// annulus. f2 values at the angular nodes are cached at construction.
class FourierField {
 public:
  FourierField(const waves::HerglotzDensity& f2, BumpProfile bump, int radial_points,
               int angular_degree);
  CVec operator()(const VecN& x) const;
  int n() const { return n_; }
  int m() const { return m_; }
  // estimate of int_{R^n \ B_R} |ghat| by shell quadrature out to 3R
  double tail_mass(double R) const;

 private:
  int n_ = 3;
  int m_ = 1;
  std::function<CVec(const VecN&)> f2_;  // kept for rules at other resolutions
  BumpProfile bump_;
  int radial_points_ = 48;
  std::vector<double> s_;   // radial nodes
  std::vector<double> sw_;  // radial weights including chi(s) s^{n-1}
  std::vector<VecN> omega_;
  std::vector<double> ow_;
  std::vector<CVec> fv_;
};

// When tail_target > 0 the estimated mass outside B_{tail_radius} is
// checked against it; an unreachable bound raises NumericalError.
FourierField extend_and_transform(const waves::HerglotzDensity& f2, const BumpProfile& bump,
                                  int radial_points = 48, int angular_degree = 40,
                                  double tail_target = 0.0, double tail_radius = 0.0);

// c_j = (2 pi)^{n/2} ghat(x_j) |U_j| over a polar cover of B_R. The
// coefficients of a reality-constrained density are real up to quadrature
// noise; the real part is kept and the largest discarded imaginary part
// reported through the returned diagnostics.
struct FourierDiscretization {
  waves::BesselSum sum;
  double max_imag_discarded = 0.0;
};
FourierDiscretization discretize_fourier(const FourierField& ghat, double R, double delta2);

// Full pipeline of the Bessel-sum approximation: expansion -> density ->
// bump extension -> Fourier-side discretization.
waves::BesselSum bessel_approximate(const waves::HarmonicExpansion& target,
                                    const BumpProfile& bump, double R, double delta2);

}  // namespace eigenloc::herglotz
