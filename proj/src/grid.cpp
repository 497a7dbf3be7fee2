#include "eigenloc/grid.hpp"

#include <cmath>

#include "eigenloc/errors.hpp"

namespace eigenloc {

EvaluationGrid::EvaluationGrid(int n, const VecN& lo, std::array<int, 3> dims, double h, int m)
    : n_(n), m_(m), h_(h), lo_(lo), dims_(dims) {
  if (n != 2 && n != 3) throw ValidationError("EvaluationGrid: dimension must be 2 or 3");
  if (h <= 0) throw ValidationError("EvaluationGrid: step must be positive");
  if (n == 2) dims_[2] = 1;
  for (int d = 0; d < n_; ++d)
    if (dims_[d] < 2) throw ValidationError("EvaluationGrid: need at least 2 nodes per axis");
  count_ = size_t(dims_[0]) * dims_[1] * dims_[2];
  values_.assign(count_ * m_, 0.0);
}

EvaluationGrid EvaluationGrid::ball(int n, double radius, double h, int m) {
  if (radius <= 0) throw ValidationError("EvaluationGrid: radius must be positive");
  const int half = int(std::floor(radius / h + 1e-12));
  const int nn = 2 * half + 1;
  VecN lo(n);
  for (int d = 0; d < n; ++d) lo[d] = -half * h;
  EvaluationGrid g(n, lo, {nn, nn, nn}, h, m);
  g.mask_radius_ = radius;
  g.mask_.assign(g.count_, 0);
  for (int k = 0; k < g.dims_[2]; ++k)
    for (int j = 0; j < g.dims_[1]; ++j)
      for (int i = 0; i < g.dims_[0]; ++i) {
        if (g.point(i, j, k).norm() <= radius + 1e-12) g.mask_[g.index(i, j, k)] = 1;
      }
  return g;
}

EvaluationGrid EvaluationGrid::box(int n, const VecN& lo, const VecN& hi, double h, int m) {
  std::array<int, 3> dims{1, 1, 1};
  for (int d = 0; d < n; ++d) dims[d] = int(std::floor((hi[d] - lo[d]) / h + 1e-9)) + 1;
  return EvaluationGrid(n, lo, dims, h, m);
}

VecN EvaluationGrid::point(int i, int j, int k) const {
  VecN p(n_);
  p[0] = lo_[0] + i * h_;
  p[1] = lo_[1] + j * h_;
  if (n_ == 3) p[2] = lo_[2] + k * h_;
  return p;
}

bool EvaluationGrid::interior(int i, int j, int k, int pad) const {
  if (i < pad || i >= dims_[0] - pad || j < pad || j >= dims_[1] - pad) return false;
  if (n_ == 3 && (k < pad || k >= dims_[2] - pad)) return false;
  if (mask_.empty()) return true;
  for (int dk = (n_ == 3 ? -pad : 0); dk <= (n_ == 3 ? pad : 0); ++dk)
    for (int dj = -pad; dj <= pad; ++dj)
      for (int di = -pad; di <= pad; ++di)
        if (!inside(index(i + di, j + dj, k + dk))) return false;
  return true;
}

double EvaluationGrid::fill(const FieldEval& f) {
  double max_imag = 0.0;
  for (int k = 0; k < dims_[2]; ++k)
    for (int j = 0; j < dims_[1]; ++j)
      for (int i = 0; i < dims_[0]; ++i) {
        const size_t idx = index(i, j, k);
        if (!inside(idx)) continue;
        const CVec v = f(point(i, j, k));
        if (v.size() != m_) throw ValidationError("EvaluationGrid::fill: component count mismatch");
        for (int c = 0; c < m_; ++c) value(idx, c) = v[c].real();
        max_imag = std::max(max_imag, v.max_abs_imag());
      }
  return max_imag;
}

double EvaluationGrid::max_abs(int comp) const {
  double v = 0.0;
  for (size_t idx = 0; idx < count_; ++idx)
    if (inside(idx)) v = std::max(v, std::abs(value(idx, comp)));
  return v;
}

}  // namespace eigenloc
