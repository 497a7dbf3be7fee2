#include "eigenloc/quadrature.hpp"

#include <cmath>

#include "eigenloc/errors.hpp"

namespace eigenloc {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void gauss_legendre(int q, std::vector<double>& nodes, std::vector<double>& weights) {
  if (q < 1) throw ValidationError("gauss_legendre: need at least one node");
  nodes.assign(q, 0.0);
  weights.assign(q, 0.0);
  const int half = (q + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton iteration on P_q from the Chebyshev-like initial guess
    double x = std::cos(kPi * (i + 0.75) / (q + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= q; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = q * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[q - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[q - 1 - i] = w;
  }
}

double sphere_area(int n) {
  return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

double ball_volume(int n, double R) {
  return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0) * std::pow(R, n);
}

SphereRule sphere_rule(int n, int degree) {
  if (degree < 0) throw ValidationError("sphere_rule: negative degree");
  degree = std::max(degree, 2);
  SphereRule rule;
  rule.n = n;
  rule.degree = degree;

  if (n == 2) {
    const int q = degree + 1;
    const double w = 2.0 * kPi / q;
    for (int i = 0; i < q; ++i) {
      const double th = 2.0 * kPi * i / q;
      rule.nodes.push_back(VecN{std::cos(th), std::sin(th)});
      rule.weights.push_back(w);
    }
    return rule;
  }

  if (n == 3) {
    // Gauss-Legendre in cos(theta) x uniform azimuth
    const int qt = (degree + 2) / 2;
    const int qp = degree + 1;
    std::vector<double> xs, ws;
    gauss_legendre(qt, xs, ws);
    const double wphi = 2.0 * kPi / qp;
    for (int i = 0; i < qt; ++i) {
      const double ct = xs[i];
      const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      for (int j = 0; j < qp; ++j) {
        const double ph = 2.0 * kPi * j / qp;
        rule.nodes.push_back(VecN{st * std::cos(ph), st * std::sin(ph), ct});
        rule.weights.push_back(ws[i] * wphi);
      }
    }
    return rule;
  }

  if (n == 4) {
    // polar angle chi from the first axis, cross sections are 2-spheres
    const int qc = degree + 4;
    std::vector<double> xs, ws;
    gauss_legendre(qc, xs, ws);
    SphereRule sub = sphere_rule(3, degree);
    for (int i = 0; i < qc; ++i) {
      const double chi = 0.5 * kPi * (xs[i] + 1.0);
      const double jac = 0.5 * kPi * std::sin(chi) * std::sin(chi);
      for (size_t j = 0; j < sub.nodes.size(); ++j) {
        VecN p{std::cos(chi), 0.0, 0.0, 0.0};
        for (int d = 0; d < 3; ++d) p[d + 1] = std::sin(chi) * sub.nodes[j][d];
        rule.nodes.push_back(p);
        rule.weights.push_back(ws[i] * jac * sub.weights[j]);
      }
    }
    return rule;
  }

  throw ValidationError("sphere_rule: dimension must be 2, 3 or 4");
}

}  // namespace eigenloc
