#pragma once

#include <array>
#include <functional>
#include <vector>

#include "eigenloc/vec.hpp"

namespace eigenloc {

using FieldEval = std::function<CVec(const VecN&)>;

// Uniform grid over an axis-aligned box in R^n (n = 2 or 3), optionally
// masked to a ball. Stores m real components per node; imaginary parts of
// the filled field are tracked as a diagnostic.
class EvaluationGrid {
 public:
  EvaluationGrid() = default;

  // box [lo, lo + h*(dims-1)] per axis
  EvaluationGrid(int n, const VecN& lo, std::array<int, 3> dims, double h, int m);

  // bounding box of the ball of the given radius, nodes outside masked out
  static EvaluationGrid ball(int n, double radius, double h, int m = 1);
  static EvaluationGrid box(int n, const VecN& lo, const VecN& hi, double h, int m = 1);

  int n() const { return n_; }
  int m() const { return m_; }
  double h() const { return h_; }
  const std::array<int, 3>& dims() const { return dims_; }
  size_t node_count() const { return count_; }

  size_t index(int i, int j, int k = 0) const {
    return (size_t(k) * dims_[1] + j) * dims_[0] + i;
  }
  VecN point(int i, int j, int k = 0) const;
  bool inside(size_t idx) const { return mask_.empty() || mask_[idx] != 0; }
  bool inside(int i, int j, int k = 0) const { return inside(index(i, j, k)); }

  // full stencil of radius `pad` around the node stays inside the mask
  bool interior(int i, int j, int k, int pad = 1) const;

  double value(size_t idx, int comp = 0) const { return values_[idx * m_ + comp]; }
  double& value(size_t idx, int comp = 0) { return values_[idx * m_ + comp]; }

  // evaluate the field at every unmasked node; returns max |Im| seen
  double fill(const FieldEval& f);

  double max_abs(int comp = 0) const;

 private:
  int n_ = 3;
  int m_ = 1;
  double h_ = 0.0;
  VecN lo_;
  std::array<int, 3> dims_{1, 1, 1};
  size_t count_ = 0;
  double mask_radius_ = -1.0;
  std::vector<double> values_;
  std::vector<uint8_t> mask_;
};

}  // namespace eigenloc
