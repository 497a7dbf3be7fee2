#include "eigenloc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_map>

#include "eigenloc/errors.hpp"

namespace eigenloc::analysis {

namespace {

#include "mc_tables.inl"

// cube corner offsets, Lorensen-Cline order
const int kCorner[8][3] = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                           {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};

// cube edge -> (base corner offset, axis); the base is the lower end of
// the grid edge, so shared edges get identical keys from every cube
struct EdgeRef {
  int di, dj, dk, axis;
};
const EdgeRef kCubeEdge[12] = {
    {0, 0, 0, 0},  // e0:  (0,0,0)-(1,0,0)
    {1, 0, 0, 1},  // e1:  (1,0,0)-(1,1,0)
    {0, 1, 0, 0},  // e2:  (0,1,0)-(1,1,0)
    {0, 0, 0, 1},  // e3:  (0,0,0)-(0,1,0)
    {0, 0, 1, 0},  // e4
    {1, 0, 1, 1},  // e5
    {0, 1, 1, 0},  // e6
    {0, 0, 1, 1},  // e7
    {0, 0, 0, 2},  // e8
    {1, 0, 0, 2},  // e9
    {1, 1, 0, 2},  // e10
    {0, 1, 0, 2},  // e11
};

struct DisjointSet {
  std::vector<int> parent;
  explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

double pick_isovalue(const EvaluationGrid& g, int comp) {
  bool exact_zero = false;
  for (size_t idx = 0; idx < g.node_count(); ++idx)
    if (g.inside(idx) && g.value(idx, comp) == 0.0) {
      exact_zero = true;
      break;
    }
  return exact_zero ? 1e-12 * g.max_abs(comp) : 0.0;
}

struct Mesh {
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<int, 3>> faces;
};

Mesh marching_cubes(const EvaluationGrid& g, int comp, double iso) {
  Mesh mesh;
  std::unordered_map<size_t, int> vertex_of_edge;
  const auto& dims = g.dims();

  auto edge_vertex = [&](int i, int j, int k, int axis) {
    const size_t base = g.index(i, j, k);
    const size_t key = base * 3 + axis;
    auto it = vertex_of_edge.find(key);
    if (it != vertex_of_edge.end()) return it->second;
    const double fa = g.value(base, comp);
    const size_t nb = g.index(i + (axis == 0), j + (axis == 1), k + (axis == 2));
    const double fb = g.value(nb, comp);
    const double t = (iso - fa) / (fb - fa);
    VecN pa = g.point(i, j, k);
    std::array<double, 3> v{pa[0], pa[1], pa[2]};
    v[axis] += t * g.h();
    const int id = int(mesh.vertices.size());
    mesh.vertices.push_back(v);
    vertex_of_edge.emplace(key, id);
    return id;
  };

  for (int k = 0; k + 1 < dims[2]; ++k)
    for (int j = 0; j + 1 < dims[1]; ++j)
      for (int i = 0; i + 1 < dims[0]; ++i) {
        bool ok = true;
        int caseidx = 0;
        for (int c = 0; c < 8 && ok; ++c) {
          const int ii = i + kCorner[c][0], jj = j + kCorner[c][1], kk = k + kCorner[c][2];
          if (!g.inside(ii, jj, kk)) {
            ok = false;
            break;
          }
          if (g.value(g.index(ii, jj, kk), comp) <= iso) caseidx |= 1 << c;
        }
        if (!ok || caseidx == 0 || caseidx == 255) continue;
        const signed char* tri = kCaseTriangles[caseidx];
        for (int t = 0; tri[t] != -1; t += 3) {
          std::array<int, 3> f;
          for (int v = 0; v < 3; ++v) {
            const EdgeRef& e = kCubeEdge[tri[t + v]];
            f[v] = edge_vertex(i + e.di, j + e.dj, k + e.dk, e.axis);
          }
          if (f[0] != f[1] && f[1] != f[2] && f[0] != f[2]) mesh.faces.push_back(f);
        }
      }
  return mesh;
}

std::vector<NodalComponent> split_surface(const Mesh& mesh) {
  DisjointSet ds(int(mesh.vertices.size()));
  for (const auto& f : mesh.faces) {
    ds.unite(f[0], f[1]);
    ds.unite(f[1], f[2]);
  }
  std::map<int, int> comp_of_root;
  std::vector<NodalComponent> comps;
  std::vector<std::unordered_map<int, int>> remap;
  for (const auto& f : mesh.faces) {
    const int root = ds.find(f[0]);
    auto [it, fresh] = comp_of_root.emplace(root, int(comps.size()));
    if (fresh) {
      comps.emplace_back();
      comps.back().n = 3;
      comps.back().is_surface = true;
      remap.emplace_back();
    }
    NodalComponent& c = comps[it->second];
    auto& rm = remap[it->second];
    std::array<int, 3> nf;
    for (int v = 0; v < 3; ++v) {
      auto [vit, vfresh] = rm.emplace(f[v], int(c.vertices.size()));
      if (vfresh) c.vertices.push_back(mesh.vertices[f[v]]);
      nf[v] = vit->second;
    }
    c.faces.push_back(nf);
  }
  for (auto& c : comps) {
    std::map<std::pair<int, int>, int> edge_count;
    for (const auto& f : c.faces)
      for (int v = 0; v < 3; ++v) {
        const int a = f[v], b = f[(v + 1) % 3];
        ++edge_count[{std::min(a, b), std::max(a, b)}];
      }
    const int V = int(c.vertices.size());
    const int E = int(edge_count.size());
    const int F = int(c.faces.size());
    c.chi = V - E + F;
    c.closed = std::all_of(edge_count.begin(), edge_count.end(),
                           [](const auto& kv) { return kv.second == 2; });
    c.genus = c.closed ? (2 - c.chi) / 2 : -1;
  }
  return comps;
}

std::vector<NodalComponent> split_curves(const std::vector<std::array<double, 3>>& vertices,
                                         const std::vector<std::array<int, 2>>& segments, int n) {
  DisjointSet ds(int(vertices.size()));
  for (const auto& s : segments) ds.unite(s[0], s[1]);
  std::map<int, int> comp_of_root;
  std::vector<NodalComponent> comps;
  std::vector<std::unordered_map<int, int>> remap;
  for (const auto& s : segments) {
    const int root = ds.find(s[0]);
    auto [it, fresh] = comp_of_root.emplace(root, int(comps.size()));
    if (fresh) {
      comps.emplace_back();
      comps.back().n = n;
      comps.back().is_surface = false;
      remap.emplace_back();
    }
    NodalComponent& c = comps[it->second];
    auto& rm = remap[it->second];
    std::array<int, 2> ns;
    for (int v = 0; v < 2; ++v) {
      auto [vit, vfresh] = rm.emplace(s[v], int(c.vertices.size()));
      if (vfresh) c.vertices.push_back(vertices[s[v]]);
      ns[v] = vit->second;
    }
    c.segments.push_back(ns);
  }
  for (auto& c : comps) {
    std::vector<int> degree(c.vertices.size(), 0);
    for (const auto& s : c.segments) {
      ++degree[s[0]];
      ++degree[s[1]];
    }
    c.chi = int(c.vertices.size()) - int(c.segments.size());
    c.closed = std::all_of(degree.begin(), degree.end(), [](int d) { return d == 2; });
    c.genus = -1;
  }
  return comps;
}

std::vector<NodalComponent> marching_squares(const EvaluationGrid& g, int comp, double iso) {
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<int, 2>> segments;
  std::unordered_map<size_t, int> vertex_of_edge;
  const auto& dims = g.dims();

  auto edge_vertex = [&](int i, int j, int axis) {
    const size_t base = g.index(i, j, 0);
    const size_t key = base * 2 + axis;
    auto it = vertex_of_edge.find(key);
    if (it != vertex_of_edge.end()) return it->second;
    const double fa = g.value(base, comp);
    const double fb = g.value(g.index(i + (axis == 0), j + (axis == 1), 0), comp);
    const double t = (iso - fa) / (fb - fa);
    VecN pa = g.point(i, j, 0);
    std::array<double, 3> v{pa[0], pa[1], 0.0};
    v[axis] += t * g.h();
    const int id = int(vertices.size());
    vertices.push_back(v);
    vertex_of_edge.emplace(key, id);
    return id;
  };

  // cell edges: 0 bottom, 1 right, 2 top, 3 left
  auto cell_edge_vertex = [&](int i, int j, int e) {
    switch (e) {
      case 0: return edge_vertex(i, j, 0);
      case 1: return edge_vertex(i + 1, j, 1);
      case 2: return edge_vertex(i, j + 1, 0);
      default: return edge_vertex(i, j, 1);
    }
  };

  for (int j = 0; j + 1 < dims[1]; ++j)
    for (int i = 0; i + 1 < dims[0]; ++i) {
      const int ci[4][2] = {{i, j}, {i + 1, j}, {i + 1, j + 1}, {i, j + 1}};
      bool ok = true;
      int caseidx = 0;
      double center = 0.0;
      for (int c = 0; c < 4; ++c) {
        if (!g.inside(ci[c][0], ci[c][1], 0)) {
          ok = false;
          break;
        }
        const double v = g.value(g.index(ci[c][0], ci[c][1], 0), comp);
        center += 0.25 * v;
        if (v <= iso) caseidx |= 1 << c;
      }
      if (!ok || caseidx == 0 || caseidx == 15) continue;
      // segment endpoints per case; saddles resolved by the center average
      static const int kSegs[16][4] = {
          {-1, -1, -1, -1}, {3, 0, -1, -1}, {0, 1, -1, -1}, {3, 1, -1, -1},
          {1, 2, -1, -1},   {9, 9, 9, 9},   {0, 2, -1, -1}, {3, 2, -1, -1},
          {2, 3, -1, -1},   {0, 2, -1, -1}, {9, 9, 9, 9},   {1, 2, -1, -1},
          {1, 3, -1, -1},   {0, 1, -1, -1}, {3, 0, -1, -1}, {-1, -1, -1, -1}};
      int segs[4] = {kSegs[caseidx][0], kSegs[caseidx][1], kSegs[caseidx][2], kSegs[caseidx][3]};
      if (caseidx == 5) {  // corners 0 and 2 inside
        if (center <= iso) {
          segs[0] = 0; segs[1] = 1; segs[2] = 2; segs[3] = 3;
        } else {
          segs[0] = 3; segs[1] = 0; segs[2] = 1; segs[3] = 2;
        }
      } else if (caseidx == 10) {  // corners 1 and 3 inside
        if (center <= iso) {
          segs[0] = 3; segs[1] = 0; segs[2] = 1; segs[3] = 2;
        } else {
          segs[0] = 0; segs[1] = 1; segs[2] = 2; segs[3] = 3;
        }
      }
      for (int s = 0; s + 1 < 4 && segs[s] >= 0; s += 2)
        segments.push_back({cell_edge_vertex(i, j, segs[s]), cell_edge_vertex(i, j, segs[s + 1])});
    }
  return split_curves(vertices, segments, 2);
}

// trilinear interpolation of grid component `comp`
double interp(const EvaluationGrid& g, int comp, const std::array<double, 3>& p) {
  const VecN lo = g.point(0, 0, 0);
  double fx = (p[0] - lo[0]) / g.h(), fy = (p[1] - lo[1]) / g.h(), fz = (p[2] - lo[2]) / g.h();
  const auto& dims = g.dims();
  int i = std::clamp(int(fx), 0, dims[0] - 2);
  int j = std::clamp(int(fy), 0, dims[1] - 2);
  int k = std::clamp(int(fz), 0, dims[2] - 2);
  fx -= i; fy -= j; fz -= k;
  double v = 0.0;
  for (int c = 0; c < 8; ++c) {
    const double w = (kCorner[c][0] ? fx : 1 - fx) * (kCorner[c][1] ? fy : 1 - fy) *
                     (kCorner[c][2] ? fz : 1 - fz);
    v += w * g.value(g.index(i + kCorner[c][0], j + kCorner[c][1], k + kCorner[c][2]), comp);
  }
  return v;
}

// zero curve of the second grid component on the isosurface of the first
std::vector<NodalComponent> joint_curves(const EvaluationGrid& g) {
  const double iso1 = pick_isovalue(g, 0);
  const Mesh surf = marching_cubes(g, 0, iso1);
  std::vector<double> f2(surf.vertices.size());
  for (size_t v = 0; v < surf.vertices.size(); ++v) f2[v] = interp(g, 1, surf.vertices[v]);
  double iso2 = 0.0;
  double scale = 0.0;
  bool exact = false;
  for (double v : f2) {
    scale = std::max(scale, std::abs(v));
    if (v == 0.0) exact = true;
  }
  if (exact) iso2 = 1e-12 * scale;

  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<int, 2>> segments;
  std::map<std::pair<int, int>, int> vertex_of_edge;
  auto cross_vertex = [&](int a, int b) {
    const auto key = std::make_pair(std::min(a, b), std::max(a, b));
    auto it = vertex_of_edge.find(key);
    if (it != vertex_of_edge.end()) return it->second;
    const double fa = f2[key.first], fb = f2[key.second];
    const double t = (iso2 - fa) / (fb - fa);
    std::array<double, 3> v;
    for (int d = 0; d < 3; ++d)
      v[d] = surf.vertices[key.first][d] + t * (surf.vertices[key.second][d] - surf.vertices[key.first][d]);
    const int id = int(vertices.size());
    vertices.push_back(v);
    vertex_of_edge.emplace(key, id);
    return id;
  };
  for (const auto& f : surf.faces) {
    int cross[3], nc = 0;
    for (int e = 0; e < 3; ++e) {
      const int a = f[e], b = f[(e + 1) % 3];
      if ((f2[a] <= iso2) != (f2[b] <= iso2)) cross[nc++] = e;
    }
    if (nc == 2) {
      const int e0 = cross[0], e1 = cross[1];
      segments.push_back({cross_vertex(f[e0], f[(e0 + 1) % 3]), cross_vertex(f[e1], f[(e1 + 1) % 3])});
    }
  }
  return split_curves(vertices, segments, 3);
}

}  // namespace

double cr_error(const FieldEval& target, const FieldEval& field, const EvaluationGrid& geometry,
                int r) {
  if (r < 0 || r > 2) throw ValidationError("cr_error: derivative order must be 0, 1 or 2");
  for (int d = 0; d < geometry.n(); ++d)
    if (r > 0 && geometry.dims()[d] < 5)
      throw ValidationError("cr_error: grid too coarse for the requested order");

  EvaluationGrid diff = geometry;
  diff.fill([&](const VecN& x) { return target(x) - field(x); });

  const int n = diff.n();
  const double h = diff.h();
  const auto& dims = diff.dims();
  double err = 0.0;
  for (int k = 0; k < dims[2]; ++k)
    for (int j = 0; j < dims[1]; ++j)
      for (int i = 0; i < dims[0]; ++i) {
        if (r == 0) {
          if (!diff.inside(i, j, k)) continue;
        } else if (!diff.interior(i, j, k)) {
          continue;
        }
        for (int c = 0; c < diff.m(); ++c) {
          auto at = [&](int di, int dj, int dk) {
            return diff.value(diff.index(i + di, j + dj, k + dk), c);
          };
          err = std::max(err, std::abs(at(0, 0, 0)));
          if (r >= 1) {
            err = std::max(err, std::abs(at(1, 0, 0) - at(-1, 0, 0)) / (2 * h));
            err = std::max(err, std::abs(at(0, 1, 0) - at(0, -1, 0)) / (2 * h));
            if (n == 3) err = std::max(err, std::abs(at(0, 0, 1) - at(0, 0, -1)) / (2 * h));
          }
          if (r >= 2) {
            const double c0 = at(0, 0, 0);
            err = std::max(err, std::abs(at(1, 0, 0) - 2 * c0 + at(-1, 0, 0)) / (h * h));
            err = std::max(err, std::abs(at(0, 1, 0) - 2 * c0 + at(0, -1, 0)) / (h * h));
            err = std::max(err, std::abs(at(1, 1, 0) - at(1, -1, 0) - at(-1, 1, 0) + at(-1, -1, 0)) /
                                    (4 * h * h));
            if (n == 3) {
              err = std::max(err, std::abs(at(0, 0, 1) - 2 * c0 + at(0, 0, -1)) / (h * h));
              err = std::max(err,
                             std::abs(at(1, 0, 1) - at(1, 0, -1) - at(-1, 0, 1) + at(-1, 0, -1)) /
                                 (4 * h * h));
              err = std::max(err,
                             std::abs(at(0, 1, 1) - at(0, 1, -1) - at(0, -1, 1) + at(0, -1, -1)) /
                                 (4 * h * h));
            }
          }
        }
      }
  return err;
}

std::vector<NodalComponent> nodal_extract(const EvaluationGrid& grid) {
  if (grid.m() == 1) {
    const double iso = pick_isovalue(grid, 0);
    if (grid.n() == 3) return split_surface(marching_cubes(grid, 0, iso));
    if (grid.n() == 2) return marching_squares(grid, 0, iso);
    throw ValidationError("nodal_extract: dimension must be 2 or 3");
  }
  if (grid.m() == 2 && grid.n() == 3) return joint_curves(grid);
  throw ValidationError("nodal_extract: unsupported (m, n) combination");
}

double stability_margin(const FieldEval& field, NodalComponent& component, double step) {
  if (step <= 0) throw ValidationError("stability_margin: step must be positive");
  double margin = component.vertices.empty() ? 0.0 : 1e300;
  for (const auto& v : component.vertices) {
    // m x n Jacobian by central differences
    VecN x(component.n);
    for (int d = 0; d < component.n; ++d) x[d] = v[d];
    const int m = field(x).size();
    double J[CVec::kMaxComp][3] = {};
    for (int d = 0; d < component.n; ++d) {
      VecN xp = x, xm = x;
      xp[d] += step;
      xm[d] -= step;
      const CVec fp = field(xp), fm = field(xm);
      for (int c = 0; c < m; ++c) J[c][d] = (fp[c].real() - fm[c].real()) / (2 * step);
    }
    double sigma = 0.0;
    if (m == 1) {
      double g2 = 0.0;
      for (int d = 0; d < component.n; ++d) g2 += J[0][d] * J[0][d];
      sigma = std::sqrt(g2);
    } else if (m == 2) {
      double a = 0, b = 0, cc = 0;
      for (int d = 0; d < component.n; ++d) {
        a += J[0][d] * J[0][d];
        b += J[0][d] * J[1][d];
        cc += J[1][d] * J[1][d];
      }
      const double mid = 0.5 * (a + cc);
      const double disc = std::sqrt(std::max(0.0, 0.25 * (a - cc) * (a - cc) + b * b));
      sigma = std::sqrt(std::max(0.0, mid - disc));
    } else {
      throw ValidationError("stability_margin: only m <= 2 supported");
    }
    margin = std::min(margin, sigma);
  }
  component.margin = margin;
  return margin;
}

double hausdorff_distance(const std::vector<std::array<double, 3>>& a,
                          const std::vector<std::array<double, 3>>& b, size_t cap) {
  if (a.empty() || b.empty()) return -1.0;
  auto subsample = [cap](const std::vector<std::array<double, 3>>& v) {
    std::vector<std::array<double, 3>> out;
    const size_t stride = std::max<size_t>(1, v.size() / cap);
    for (size_t i = 0; i < v.size(); i += stride) out.push_back(v[i]);
    return out;
  };
  const auto sa = subsample(a), sb = subsample(b);
  auto one_sided = [](const auto& from, const auto& to) {
    double worst = 0.0;
    for (const auto& p : from) {
      double best = 1e300;
      for (const auto& q : to) {
        const double dx = p[0] - q[0], dy = p[1] - q[1], dz = p[2] - q[2];
        best = std::min(best, dx * dx + dy * dy + dz * dz);
      }
      worst = std::max(worst, best);
    }
    return std::sqrt(worst);
  };
  return std::max(one_sided(sa, sb), one_sided(sb, sa));
}

NodalReport localized_nodal_check(const FieldEval& field, const EvaluationGrid& geometry,
                                  const std::vector<NodalComponent>& reference, double match_tol,
                                  double gradient_step) {
  if (match_tol <= 0) match_tol = 6.0 * geometry.h();
  if (gradient_step <= 0) gradient_step = geometry.h();

  EvaluationGrid g = geometry;
  g.fill(field);
  std::vector<NodalComponent> found = nodal_extract(g);

  NodalReport report;
  report.components_found = int(found.size());
  std::vector<bool> used(found.size(), false);
  for (size_t r = 0; r < reference.size(); ++r) {
    NodalMatch m;
    m.reference = int(r);
    m.chi_ref = reference[r].chi;
    double best = 1e300;
    for (size_t f = 0; f < found.size(); ++f) {
      if (used[f]) continue;
      if (found[f].chi != reference[r].chi || found[f].closed != reference[r].closed) continue;
      const double hd = hausdorff_distance(reference[r].vertices, found[f].vertices);
      if (hd >= 0 && hd < best) {
        best = hd;
        m.found = int(f);
      }
    }
    if (m.found >= 0 && best <= match_tol) {
      used[m.found] = true;
      m.matched = true;
      m.hausdorff = best;
      m.chi_found = found[m.found].chi;
      m.margin = stability_margin(field, found[m.found], gradient_step);
    }
    report.matches.push_back(m);
  }
  report.all_matched =
      !report.matches.empty() &&
      std::all_of(report.matches.begin(), report.matches.end(),
                  [](const NodalMatch& m) { return m.matched; });
  return report;
}

}  // namespace eigenloc::analysis
