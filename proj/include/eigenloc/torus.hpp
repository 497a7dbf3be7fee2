#pragma once

#include <array>
#include <optional>
#include <vector>

#include "eigenloc/herglotz.hpp"
#include "eigenloc/vec.hpp"
#include "eigenloc/waves.hpp"

namespace eigenloc::torus {

using LatticePoint = std::array<long long, 4>;  // first n entries used

// Integer points with |k|^2 = N^2, enumerated exactly. Closed under k -> -k.
struct LatticeSphere {
  int N = 1;
  int n = 3;
  std::vector<LatticePoint> points;
  VecN direction(size_t i) const;  // k/N on S^{n-1}
};

LatticeSphere enumerate_lattice(int N, int n, int cap = 0);

// For every cover cell, the lattice direction lying in the cell that is
// closest to the cell center; -1 where the cell is empty.
struct CapAssignment {
  std::vector<int> lattice_index;  // per cell, index into LatticeSphere::points
  std::vector<int> empty_cells;
  bool complete() const { return empty_cells.empty(); }
};

CapAssignment assign_caps(const herglotz::SphericalCapCover& cover, const LatticeSphere& lattice);

// Eigenfunction of the Laplacian on T^n = (R/2piZ)^n with eigenvalue N^2:
// psi(x) = sum_k c_k e^{i k.x} with every |k| = N. When real_valued is set
// the modes carry Hermitian symmetry c_{-k} = conj(c_k).
struct TorusEigenfunction {
  int N = 1;
  int n = 3;
  int m = 1;
  bool real_valued = false;
  struct Mode {
    LatticePoint k;
    CVec c;
  };
  std::vector<Mode> modes;
  double eigenvalue() const { return double(N) * N; }
};

// Discretize the density over the cover with the cell representatives
// snapped to lattice directions (c_k = f(k/N) |U_k|), then periodize:
// the rescaled eigenfunction psi(x/N) equals the snapped plane-wave sum
// identically. Throws EmptyCellError when the assignment is partial.
// Even N is rejected for n = 3 (and n = 2); for n >= 4 it is allowed and
// reported through the `even_warning` flag.
struct TorusSynthesis {
  TorusEigenfunction psi;
  waves::PlaneWaveSum snapped;  // the generating plane-wave sum
  bool even_warning = false;
};
TorusSynthesis synthesize_torus(const waves::HerglotzDensity& density,
                                const herglotz::SphericalCapCover& cover, int N);

CVec eval_torus(const TorusEigenfunction& psi, const VecN& x);

// Mode-wise Laplacian: sum (-|k|^2) c_k e^{ik.x}; equals -N^2 psi exactly.
CVec eval_torus_laplacian(const TorusEigenfunction& psi, const VecN& x);

// All N in [lo, hi] whose lattice circle meets every cell of the cover
// (n = 2). Empty result is a valid answer.
struct Torus2Search {
  std::vector<int> admissible;
  std::vector<int> examined;
  std::vector<int> first_empty_cell;  // per examined N, -1 when admissible
};
Torus2Search search_torus2(int N_lo, int N_hi, const herglotz::SphericalCapCover& cover,
                           bool odd_only = true);

}  // namespace eigenloc::torus
