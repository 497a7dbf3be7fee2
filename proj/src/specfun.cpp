#include "eigenloc/specfun.hpp"

#include <cmath>
#include <vector>

#include "eigenloc/errors.hpp"

namespace eigenloc::specfun {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Power series sum_k (-1)^k (t/2)^{nu+2k} / (k! Gamma(nu+k+1)). Safe while
// the terms do not grow much beyond the result; callers restrict the range.
double bessel_series(double nu, double t) {
  const double x = 0.5 * t;
  double term = std::exp(nu * std::log(x) - std::lgamma(nu + 1.0));
  if (t == 0.0) term = (nu == 0.0) ? 1.0 : 0.0;
  double sum = term;
  for (int k = 1; k <= 400; ++k) {
    term *= -x * x / (k * (nu + k));
    sum += term;
    if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
  }
  return sum;
}

// Miller's backward recurrence for integer orders, normalized with
// J_0 + 2 J_2 + 2 J_4 + ... = 1. Valid for t > 0; used when the series
// would cancel badly (t large relative to the order).
double bessel_miller_int(int nu, double t) {
  const int top = std::max(nu, int(t)) + 18 + int(2.0 * std::sqrt(std::max(nu, int(t)) + 1.0));
  const int start = top + (top % 2);  // even start keeps the norm bookkeeping simple
  double fp = 0.0;                    // J_{k+1} (unnormalized)
  double fc = 1e-30;                  // J_k
  double norm = 0.0;
  double target = 0.0;
  for (int k = start; k >= 1; --k) {
    double fm = (2.0 * k / t) * fc - fp;
    fp = fc;
    fc = fm;
    if (k - 1 == nu) target = fc;
    if ((k - 1) % 2 == 0) norm += (k - 1 == 0) ? fc : 2.0 * fc;
    if (std::abs(fc) > 1e250) {  // rescale to avoid overflow
      fc *= 1e-250;
      fp *= 1e-250;
      norm *= 1e-250;
      target *= 1e-250;
    }
  }
  return target / norm;
}

double sph_bessel_series(int l, double t) {
  // j_l(t) = t^l / (2l+1)!! * sum_k (-1)^k (t^2/2)^k / (k! (2l+3)(2l+5)...(2l+2k+1))
  double dfact = 1.0;
  for (int i = 3; i <= 2 * l + 1; i += 2) dfact *= i;
  double term = std::pow(t, l) / dfact;
  double sum = term;
  for (int k = 1; k <= 200; ++k) {
    term *= -0.5 * t * t / (k * (2.0 * l + 2.0 * k + 1.0));
    sum += term;
    if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
  }
  return sum;
}

}  // namespace

double sph_bessel(int l, double t) {
  if (l < 0) throw ValidationError("sph_bessel: negative order");
  if (t < 0) throw ValidationError("sph_bessel: negative argument");
  if (t < 0.5 || t < 0.6 * l) return sph_bessel_series(l, t);
  const double j0 = std::sin(t) / t;
  if (l == 0) return j0;
  const double j1 = j0 / t - std::cos(t) / t;
  if (l == 1) return j1;
  if (t >= l) {
    // upward recurrence is stable in the oscillatory regime
    double jm = j0, jc = j1;
    for (int k = 1; k < l; ++k) {
      double jn = (2.0 * k + 1.0) / t * jc - jm;
      jm = jc;
      jc = jn;
    }
    return jc;
  }
  // downward recurrence, normalized against j_0 or j_1
  const int start = l + 16 + int(t);
  double fp = 0.0, fc = 1e-30, flv = 0.0;
  double f1 = 0.0, f0 = 0.0;
  for (int k = start; k >= 1; --k) {
    double fm = (2.0 * k + 1.0) / t * fc - fp;
    fp = fc;
    fc = fm;
    if (k - 1 == l) flv = fc;
    if (k - 1 == 1) f1 = fc;
    if (k - 1 == 0) f0 = fc;
    if (std::abs(fc) > 1e250) {
      fc *= 1e-250;
      fp *= 1e-250;
      flv *= 1e-250;
      f1 *= 1e-250;
    }
  }
  if (std::abs(j0) > 0.1 / t) return flv * (j0 / f0);
  return flv * (j1 / f1);
}

double bessel_j(double nu, double t) {
  if (t < 0) throw ValidationError("bessel_j: negative argument");
  if (nu < 0) throw ValidationError("bessel_j: negative order");
  const double twice = 2.0 * nu;
  const long long tw = std::llround(twice);
  if (std::abs(twice - tw) > 1e-12) throw ValidationError("bessel_j: order must be integer or half-integer");
  if (tw % 2 != 0) {
    // half-integer order: J_{l+1/2}(t) = sqrt(2t/pi) j_l(t)
    const int l = int((tw - 1) / 2);
    if (t == 0.0) return 0.0;
    return std::sqrt(2.0 * t / kPi) * sph_bessel(l, t);
  }
  const int m = int(tw / 2);
  if (t == 0.0) return m == 0 ? 1.0 : 0.0;
  if (t < 12.0 || t < 1.5 * m) return bessel_series(m, t);
  return bessel_miller_int(m, t);
}

double bessel_kernel(int n, double r) {
  return hyperspherical_bessel(n, 0, r);
}

double hyperspherical_bessel(int n, int l, double r) {
  if (n < 2) throw ValidationError("hyperspherical_bessel: dimension must be >= 2");
  if (l < 0) throw ValidationError("hyperspherical_bessel: negative degree");
  if (r < 0) throw ValidationError("hyperspherical_bessel: negative radius");
  const double ex = 0.5 * n - 1.0;  // power of r divided out
  if (r < 0.1) {
    // series for J_{l+ex}(r)/r^{ex}: sum_k (-1)^k r^{l+2k} / (2^{l+2k+ex} k! Gamma(k+l+ex+1))
    double term = std::pow(r, l) * std::exp(-(l + ex) * std::log(2.0) - std::lgamma(l + ex + 1.0));
    double sum = term;
    for (int k = 1; k <= 60; ++k) {
      term *= -0.25 * r * r / (k * (k + l + ex));
      sum += term;
      if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
    }
    return sum;
  }
  return bessel_j(l + ex, r) / std::pow(r, ex);
}

double jacobi_poly(int N, double alpha, double t) {
  if (N < 0) throw ValidationError("jacobi_poly: negative degree");
  if (alpha <= -1.0) throw ValidationError("jacobi_poly: alpha must be > -1");
  if (std::abs(t) > 1.0 + 1e-12) throw ValidationError("jacobi_poly: |t| > 1");
  t = std::min(1.0, std::max(-1.0, t));
  if (N == 0) return 1.0;
  const long double a = alpha;
  const long double x = t;
  long double pm = 1.0L;
  long double pc = (a + 1.0L) * x;
  for (int k = 2; k <= N; ++k) {
    // 2k(k+2a)(2k+2a-2) P_k = (2k+2a-1)[(2k+2a)(2k+2a-2) t] P_{k-1}
    //                         - 2(k+a-1)^2 (2k+2a) P_{k-2}, with alpha = beta
    long double pn = ((2.0L * k + 2.0L * a - 1.0L) * (k + a) * x * pc -
                      (k + a - 1.0L) * (k + a) * pm) /
                     (k * (k + 2.0L * a));
    pm = pc;
    pc = pn;
  }
  return double(pc);
}

double gegenbauer_norm(int N, int n, double t) {
  if (n < 2) throw ValidationError("gegenbauer_norm: dimension must be >= 2");
  const long double lg =
      std::lgamma((long double)(N + 1.0L)) + std::lgamma(0.5L * n) - std::lgamma(N + 0.5L * n);
  return double(std::exp(lg) * (long double)jacobi_poly(N, 0.5 * n - 1.0, t));
}

std::pair<double, double> mehler_heine_pair(int N, int n, double t) {
  if (N < 1) throw ValidationError("mehler_heine_pair: N must be >= 1");
  if (t < 0) throw ValidationError("mehler_heine_pair: negative t");
  const double alpha = 0.5 * n - 1.0;
  const double lhs = std::pow(double(N), -alpha) * jacobi_poly(N, alpha, std::cos(t / N));
  const double rhs = std::pow(2.0, alpha) * bessel_kernel(n, t);
  return {lhs, rhs};
}

long long harmonic_count(int dim, int l) {
  if (dim < 1) throw ValidationError("harmonic_count: dimension must be >= 1");
  if (l < 0) throw ValidationError("harmonic_count: negative degree");
  auto binom = [](long long a, long long b) {
    if (b < 0 || b > a) return 0LL;
    b = std::min(b, a - b);
    long long r = 1;
    for (long long i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  return binom(l + dim, dim) - binom(l + dim - 2, dim);
}

namespace {

// Associated Legendre P_l^m(x) with Condon-Shortley phase.
double assoc_legendre(int l, int m, double x) {
  double pmm = 1.0;
  if (m > 0) {
    const double somx2 = std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x)));
    double fact = 1.0;
    for (int i = 1; i <= m; ++i) {
      pmm *= -fact * somx2;
      fact += 2.0;
    }
  }
  if (l == m) return pmm;
  double pmmp1 = x * (2.0 * m + 1.0) * pmm;
  if (l == m + 1) return pmmp1;
  double pll = 0.0;
  for (int ll = m + 2; ll <= l; ++ll) {
    pll = (x * (2.0 * ll - 1.0) * pmmp1 - (ll + m - 1.0) * pmm) / (ll - m);
    pmm = pmmp1;
    pmmp1 = pll;
  }
  return pll;
}

}  // namespace

double sph_harmonic(int l, int k, const VecN& omega) {
  const int dim = omega.size() - 1;  // sphere dimension
  if (dim != 1 && dim != 2) throw ValidationError("sph_harmonic: omega must lie in R^2 or R^3");
  if (std::abs(omega.norm() - 1.0) > 1e-12) throw ValidationError("sph_harmonic: omega is not a unit vector");
  if (l < 0 || k < 1 || k > harmonic_count(dim, l)) throw ValidationError("sph_harmonic: index out of range");

  if (dim == 1) {
    const double th = std::atan2(omega[1], omega[0]);
    if (l == 0) return 1.0 / std::sqrt(2.0 * kPi);
    return (k == 1 ? std::cos(l * th) : std::sin(l * th)) / std::sqrt(kPi);
  }

  const double ct = omega[2];
  const double phi = std::atan2(omega[1], omega[0]);
  if (k == 1) return std::sqrt((2.0 * l + 1.0) / (4.0 * kPi)) * assoc_legendre(l, 0, ct);
  const int m = k / 2;
  const bool use_cos = (k % 2 == 0);
  double ratio = 1.0;  // (l-m)!/(l+m)!
  for (int i = l - m + 1; i <= l + m; ++i) ratio /= i;
  const double norm = std::sqrt((2.0 * l + 1.0) / (2.0 * kPi) * ratio);
  return norm * assoc_legendre(l, m, ct) * (use_cos ? std::cos(m * phi) : std::sin(m * phi));
}

}  // namespace eigenloc::specfun
