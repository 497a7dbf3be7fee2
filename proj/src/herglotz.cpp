#include "eigenloc/herglotz.hpp"

#include <cmath>

#include "eigenloc/errors.hpp"
#include "eigenloc/quadrature.hpp"

namespace eigenloc::herglotz {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

double wrap_azimuth(double phi) {
  phi = std::fmod(phi, kTwoPi);
  return phi < 0 ? phi + kTwoPi : phi;
}

VecN point_from_coords(int n, const std::vector<double>& c) {
  if (n == 2) return VecN{std::cos(c[0]), std::sin(c[0])};
  if (n == 3)
    return VecN{std::sin(c[0]) * std::cos(c[1]), std::sin(c[0]) * std::sin(c[1]), std::cos(c[0])};
  const double schi = std::sin(c[0]);
  return VecN{std::cos(c[0]), schi * std::sin(c[1]) * std::cos(c[2]),
              schi * std::sin(c[1]) * std::sin(c[2]), schi * std::cos(c[1])};
}

}  // namespace

std::vector<double> cap_coordinates(int n, const VecN& xi) {
  if (n == 2) return {wrap_azimuth(std::atan2(xi[1], xi[0]))};
  if (n == 3) {
    const double th = std::acos(std::min(1.0, std::max(-1.0, xi[2])));
    return {th, wrap_azimuth(std::atan2(xi[1], xi[0]))};
  }
  if (n == 4) {
    const double chi = std::acos(std::min(1.0, std::max(-1.0, xi[0])));
    const double s = std::sin(chi);
    if (s < 1e-14) return {chi, 0.0, 0.0};
    const VecN sub{xi[1] / s, xi[2] / s, xi[3] / s};
    auto c = cap_coordinates(3, sub);
    return {chi, c[0], c[1]};
  }
  throw ValidationError("cap_coordinates: dimension must be 2, 3 or 4");
}

double SphericalCapCover::total_area() const {
  double a = 0.0;
  for (const auto& c : cells) a += c.area;
  return a;
}

bool SphericalCapCover::contains(int cell, const VecN& xi) const {
  const auto& cc = cells[cell];
  const auto coords = cap_coordinates(n, xi);
  for (int lv = 0; lv < cc.levels; ++lv) {
    if (coords[lv] < cc.zonal[lv][0] - 1e-12 || coords[lv] > cc.zonal[lv][1] + 1e-12) return false;
  }
  return true;
}

int SphericalCapCover::locate(const VecN& xi) const {
  for (int i = 0; i < int(cells.size()); ++i)
    if (contains(i, xi)) return i;
  return -1;
}

namespace {

// polar bands of width <= eps/2, azimuth sectors sized so the parallel arc
// stays <= eps/2; the over-pole path bounds single-sector polar bands
SphericalCapCover build_cover_s2(double eps, long long max_cells) {
  SphericalCapCover cover;
  cover.n = 3;
  cover.eps = eps;
  const int nb = std::max(1, int(std::ceil(kPi / (eps / 2.0))));
  const double dth = kPi / nb;
  for (int i = 0; i < nb; ++i) {
    const double th0 = i * dth, th1 = (i + 1) * dth;
    double smax = std::max(std::sin(th0), std::sin(th1));
    if (th0 < kPi / 2 && th1 > kPi / 2) smax = 1.0;
    const int K = std::max(1, int(std::ceil(kTwoPi * smax / (eps / 2.0))));
    const double dphi = kTwoPi / K;
    if ((long long)cover.cells.size() + K > max_cells)
      throw ValidationError("build_cap_cover: cell count over limit; eps too small");
    for (int k = 0; k < K; ++k) {
      CapCell cell;
      cell.levels = 2;
      cell.zonal[0] = {th0, th1};
      cell.zonal[1] = {k * dphi, (k + 1) * dphi};
      cell.area = (std::cos(th0) - std::cos(th1)) * dphi;
      double diam = dth + smax * dphi;
      if (K == 1) diam = 2.0 * std::min(th1, kPi - th0);
      cell.diam_bound = std::min(diam, 2.0);
      cell.center = point_from_coords(3, {0.5 * (th0 + th1), (k + 0.5) * dphi});
      cell.rep = point_from_coords(3, {th0 + 0.25 * dth, (k + 0.25) * dphi});
      cover.cells.push_back(cell);
    }
  }
  return cover;
}

}  // namespace

SphericalCapCover build_cap_cover(int n, double eps, long long max_cells) {
  if (eps <= 0 || eps > kTwoPi) throw ValidationError("build_cap_cover: eps out of range");
  SphericalCapCover cover;
  cover.n = n;
  cover.eps = eps;

  if (n == 2) {
    const int M = std::max(1, int(std::ceil(kTwoPi / eps)));
    if (M > max_cells) throw ValidationError("build_cap_cover: cell count over limit; eps too small");
    const double d = kTwoPi / M;
    for (int k = 0; k < M; ++k) {
      CapCell cell;
      cell.levels = 1;
      cell.zonal[0] = {k * d, (k + 1) * d};
      cell.area = d;
      cell.diam_bound = std::min(d, 2.0);  // chord <= arc length
      cell.center = point_from_coords(2, {(k + 0.5) * d});
      cell.rep = point_from_coords(2, {(k + 0.25) * d});
      cover.cells.push_back(cell);
    }
    return cover;
  }

  if (n == 3) return build_cover_s2(eps, max_cells);

  if (n == 4) {
    const int nc = std::max(1, int(std::ceil(kPi / (eps / 2.0))));
    const double dchi = kPi / nc;
    const SphericalCapCover sub = build_cover_s2(eps / 2.0, max_cells);
    for (int i = 0; i < nc; ++i) {
      const double chi0 = i * dchi, chi1 = (i + 1) * dchi;
      // int sin^2 over the band
      const double band =
          0.5 * (chi1 - chi0) - 0.25 * (std::sin(2 * chi1) - std::sin(2 * chi0));
      if ((long long)(cover.cells.size() + sub.cells.size()) > max_cells)
        throw ValidationError("build_cap_cover: cell count over limit; eps too small");
      for (const auto& sc : sub.cells) {
        CapCell cell;
        cell.levels = 3;
        cell.zonal[0] = {chi0, chi1};
        cell.zonal[1] = sc.zonal[0];
        cell.zonal[2] = sc.zonal[1];
        cell.area = band * sc.area;
        cell.diam_bound = std::min(dchi + sc.diam_bound, 2.0);
        cell.center = point_from_coords(
            4, {0.5 * (chi0 + chi1), 0.5 * (sc.zonal[0][0] + sc.zonal[0][1]),
                0.5 * (sc.zonal[1][0] + sc.zonal[1][1])});
        cell.rep = point_from_coords(
            4, {chi0 + 0.25 * dchi, sc.zonal[0][0] + 0.25 * (sc.zonal[0][1] - sc.zonal[0][0]),
                sc.zonal[1][0] + 0.25 * (sc.zonal[1][1] - sc.zonal[1][0])});
        cover.cells.push_back(cell);
      }
    }
    return cover;
  }

  throw ValidationError("build_cap_cover: dimension must be 2, 3 or 4");
}

double BallCellCover::total_volume() const {
  double v = 0.0;
  for (const auto& c : cells) v += c.volume;
  return v;
}

BallCellCover build_ball_cover(int n, double R, double delta, long long max_cells) {
  if (R <= 0) throw ValidationError("build_ball_cover: radius must be positive");
  if (delta <= 0) throw ValidationError("build_ball_cover: delta must be positive");
  BallCellCover cover;
  cover.n = n;
  cover.R = R;
  cover.delta = delta;

  const int nr = std::max(1, int(std::ceil(R / (delta / 2.0))));
  const double dr = R / nr;

  BallCell center;
  center.point = VecN(n);
  center.volume = ball_volume(n, dr);
  center.diam_bound = 2.0 * dr;
  cover.cells.push_back(center);
  if (nr == 1) return cover;

  const SphericalCapCover caps = build_cap_cover(n, std::min(delta / (2.0 * R), 2.0), max_cells);
  for (int i = 1; i < nr; ++i) {
    const double r0 = i * dr, r1 = (i + 1) * dr;
    const double shell = (std::pow(r1, n) - std::pow(r0, n)) / n;
    if ((long long)(cover.cells.size() + caps.cells.size()) > max_cells)
      throw ValidationError("build_ball_cover: cell count over limit; delta too small");
    for (const auto& cc : caps.cells) {
      BallCell cell;
      cell.point = (r0 + 0.25 * dr) * cc.rep;
      cell.volume = shell * cc.area;
      cell.diam_bound = dr + r1 * cc.diam_bound;
      cover.cells.push_back(cell);
    }
  }
  return cover;
}

double BumpProfile::operator()(double s) const {
  if (!(0.0 < a && a < b && b < 1.0)) throw ValidationError("BumpProfile: need 0 < a < b < 1");
  const double u = std::abs(s - 1.0);
  if (u <= a) return 1.0;
  if (u >= b) return 0.0;
  auto sigma = [](double t) { return t <= 0.0 ? 0.0 : std::exp(-1.0 / t); };
  const double t = (b - u) / (b - a);
  return sigma(t) / (sigma(t) + sigma(1.0 - t));
}

waves::PlaneWaveSum discretize_density(const waves::HerglotzDensity& f,
                                       const SphericalCapCover& cover) {
  if (f.n != cover.n) throw ValidationError("discretize_density: dimension mismatch");
  if (!f.f) throw ValidationError("discretize_density: density has no callable");
  waves::PlaneWaveSum out;
  out.n = f.n;
  out.m = f.m;
  for (const auto& cell : cover.cells) {
    CVec c = f.f(cell.rep);
    c *= cell.area;
    if (f.real_constraint) {
      waves::PlaneWaveSum::Term t1{0.5 * c, cell.rep};
      waves::PlaneWaveSum::Term t2{Complex(0.5) * c.conj(), -1.0 * cell.rep};
      out.terms.push_back(std::move(t1));
      out.terms.push_back(std::move(t2));
    } else {
      out.terms.push_back({c, cell.rep});
    }
  }
  return out;
}

FourierField::FourierField(const waves::HerglotzDensity& f2, BumpProfile bump, int radial_points,
                           int angular_degree) {
  if (f2.n != 2 && f2.n != 3)
    throw ValidationError("FourierField: dimension must be 2 or 3");
  if (!f2.f) throw ValidationError("FourierField: density has no callable");
  n_ = f2.n;
  m_ = f2.m;
  f2_ = f2.f;
  bump_ = bump;
  radial_points_ = radial_points;
  // the angular rule must resolve e^{i s x.omega}; degree covers |x| up to
  // roughly (angular_degree - 16) / (1 + bump.b). Radially, Gauss-Legendre
  // keeps the oscillation e^{isr} accurate out to r of order the node count.
  const double lo = 1.0 - bump.b, hi = 1.0 + bump.b;
  const int q = std::max(radial_points, 48);
  std::vector<double> gx, gw;
  gauss_legendre(q, gx, gw);
  const double fourier_norm = std::pow(kTwoPi, -double(n_));
  for (int i = 0; i < q; ++i) {
    const double s = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gx[i];
    const double w = 0.5 * (hi - lo) * gw[i];
    s_.push_back(s);
    sw_.push_back(w * bump(s) * std::pow(s, n_ - 1) * fourier_norm);
  }
  SphereRule rule = sphere_rule(n_, angular_degree);
  omega_ = std::move(rule.nodes);
  ow_ = std::move(rule.weights);
  fv_.reserve(omega_.size());
  for (const auto& om : omega_) fv_.push_back(f2.f(om));
}

CVec FourierField::operator()(const VecN& x) const {
  CVec out(m_);
  for (size_t a = 0; a < omega_.size(); ++a) {
    const double p0 = x.dot(omega_[a]);
    Complex radial(0.0);
    for (size_t i = 0; i < s_.size(); ++i) {
      const double ph = s_[i] * p0;
      radial += sw_[i] * Complex(std::cos(ph), std::sin(ph));
    }
    out.add_scaled(ow_[a] * radial, fv_[a]);
  }
  return out;
}

double FourierField::tail_mass(double R) const {
  if (R <= 0) throw ValidationError("tail_mass: radius must be positive");
  // |ghat| over R < |x| < 3R; the evaluator needs an angular rule sized for
  // the outermost radius
  waves::HerglotzDensity d;
  d.n = n_;
  d.m = m_;
  d.f = f2_;
  const int degree = int((1.0 + bump_.b) * 3.0 * R) + 24;
  const int radial = std::max(radial_points_, int(0.7 * bump_.b * 3.0 * R) + 32);
  const FourierField field(d, bump_, radial, degree);

  const SphereRule rule = sphere_rule(n_, 16);
  const int shells = 24;
  const double dr = 2.0 * R / shells;
  double mass = 0.0;
  for (int i = 0; i <= shells; ++i) {
    const double r = R + i * dr;
    const double wr = dr * ((i == 0 || i == shells) ? 0.5 : 1.0) * std::pow(r, n_ - 1);
    for (size_t a = 0; a < rule.nodes.size(); ++a) {
      const CVec v = field(r * rule.nodes[a]);
      double mag = 0.0;
      for (int c = 0; c < m_; ++c) mag += std::norm(v[c]);
      mass += wr * rule.weights[a] * std::sqrt(mag);
    }
  }
  return mass;
}

FourierField extend_and_transform(const waves::HerglotzDensity& f2, const BumpProfile& bump,
                                  int radial_points, int angular_degree, double tail_target,
                                  double tail_radius) {
  FourierField field(f2, bump, radial_points, angular_degree);
  if (tail_target > 0.0) {
    if (tail_radius <= 0.0)
      throw ValidationError("extend_and_transform: tail target needs a tail radius");
    const double tail = field.tail_mass(tail_radius);
    if (tail > tail_target)
      throw NumericalError("extend_and_transform: estimated tail mass " + std::to_string(tail) +
                           " exceeds the requested bound");
  }
  return field;
}

FourierDiscretization discretize_fourier(const FourierField& ghat, double R, double delta2) {
  const BallCellCover cover = build_ball_cover(ghat.n(), R, delta2);
  FourierDiscretization out;
  out.sum.n = ghat.n();
  out.sum.m = ghat.m();
  out.sum.radius = R;
  const double scale = std::pow(kTwoPi, 0.5 * ghat.n());
  for (const auto& cell : cover.cells) {
    CVec c = ghat(cell.point);
    c *= scale * cell.volume;
    CVec creal(c.size());
    for (int i = 0; i < c.size(); ++i) {
      out.max_imag_discarded = std::max(out.max_imag_discarded, std::abs(c[i].imag()));
      creal[i] = c[i].real();
    }
    out.sum.terms.push_back({creal, cell.point});
  }
  return out;
}

waves::BesselSum bessel_approximate(const waves::HarmonicExpansion& target,
                                    const BumpProfile& bump, double R, double delta2) {
  const waves::HerglotzDensity density = waves::expansion_to_density(target);
  const FourierField ghat = extend_and_transform(density, bump);
  return discretize_fourier(ghat, R, delta2).sum;
}

}  // namespace eigenloc::herglotz
