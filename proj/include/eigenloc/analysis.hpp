#pragma once

#include <array>
#include <vector>

#include "eigenloc/grid.hpp"
#include "eigenloc/vec.hpp"

namespace eigenloc::analysis {

// Max over multi-indices |alpha| <= r of the sup norm of the centered
// finite-difference derivative of (target - field) over interior nodes.
double cr_error(const FieldEval& target, const FieldEval& field, const EvaluationGrid& geometry,
                int r);

// Connected component of a zero set extracted from grid data: a
// triangulated surface (n = 3, m = 1), a polyline contour (n = 2), or a
// traced curve (joint zero set, n = 3, m = 2).
struct NodalComponent {
  int n = 3;
  bool is_surface = false;
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<int, 3>> faces;     // surfaces
  std::vector<std::array<int, 2>> segments;  // curves
  int chi = 0;        // V - E + F on the stored complex
  bool closed = false;
  int genus = -1;     // closed orientable surfaces only
  double margin = -1.0;  // set by stability_margin
};

// Zero-level extraction with linear interpolation: marching squares for
// n = 2, marching cubes for n = 3 (m = 1), and triangle-wise curve tracing
// of the second component on the isosurface of the first for m = 2, n = 3.
// A zero sitting exactly on a grid node shifts the isovalue by
// 1e-12 * max|field|.
std::vector<NodalComponent> nodal_extract(const EvaluationGrid& grid);

// Minimum over component vertices of the smallest singular value of the
// m x n finite-difference Jacobian of the field. Stores the result in the
// component and returns it. A zero margin is a valid outcome.
double stability_margin(const FieldEval& field, NodalComponent& component, double step);

struct NodalMatch {
  int reference = -1;
  int found = -1;       // -1: no match
  int chi_ref = 0;
  int chi_found = 0;
  double hausdorff = -1.0;
  double margin = -1.0; // margin of the found component under the checked field
  bool matched = false;
};

struct NodalReport {
  std::vector<NodalMatch> matches;
  int components_found = 0;
  bool all_matched = false;
};

// Extracts the nodal components of the (rescaled) field on the grid
// geometry and matches them against the reference components by topology
// (chi, closedness) and Hausdorff proximity of vertex clouds. Mismatches
// are reported, not thrown.
NodalReport localized_nodal_check(const FieldEval& field, const EvaluationGrid& geometry,
                                  const std::vector<NodalComponent>& reference,
                                  double match_tol = -1.0, double gradient_step = -1.0);

// symmetric Hausdorff distance between vertex clouds (strided subsample
// above `cap` points per cloud)
double hausdorff_distance(const std::vector<std::array<double, 3>>& a,
                          const std::vector<std::array<double, 3>>& b, size_t cap = 2000);

}  // namespace eigenloc::analysis
