#include "eigenloc/json_io.hpp"

#include <fstream>
#include <memory>
#include <sstream>

#include "eigenloc/errors.hpp"
#include "eigenloc/quadrature.hpp"
#include "eigenloc/specfun.hpp"

namespace eigenloc::io {

namespace {

json vec_to_json(const VecN& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

VecN vec_from_json(const json& a) {
  VecN v(int(a.size()));
  for (int i = 0; i < v.size(); ++i) v[i] = a[i].get<double>();
  return v;
}

json cvec_re(const CVec& c) {
  json a = json::array();
  for (int i = 0; i < c.size(); ++i) a.push_back(c[i].real());
  return a;
}

json cvec_im(const CVec& c) {
  json a = json::array();
  for (int i = 0; i < c.size(); ++i) a.push_back(c[i].imag());
  return a;
}

CVec cvec_from_json(const json& re, const json& im) {
  CVec c(int(re.size()));
  for (int i = 0; i < c.size(); ++i)
    c[i] = Complex(re[i].get<double>(), im.is_null() ? 0.0 : im[i].get<double>());
  return c;
}

// density reconstructed from product-grid samples by projection onto
// harmonics of degree <= degree/2 (exact for band-limited densities)
waves::HerglotzDensity density_from_samples(int n, int m, bool real_constraint, int degree,
                                            const std::vector<CVec>& samples) {
  const SphereRule rule = sphere_rule(n, degree);
  if (samples.size() != rule.nodes.size())
    throw ValidationError("herglotz_grid: sample count does not match the rule for this degree");
  const int L = degree / 2;
  auto coeffs = std::make_shared<std::vector<std::vector<CVec>>>();
  coeffs->resize(L + 1);
  for (int l = 0; l <= L; ++l) {
    const long long dk = specfun::harmonic_count(n - 1, l);
    (*coeffs)[l].assign(dk, CVec(m));
    for (int k = 1; k <= dk; ++k) {
      CVec acc(m);
      for (size_t q = 0; q < rule.nodes.size(); ++q)
        acc.add_scaled(rule.weights[q] * specfun::sph_harmonic(l, k, rule.nodes[q]), samples[q]);
      (*coeffs)[l][k - 1] = acc;
    }
  }
  waves::HerglotzDensity d;
  d.n = n;
  d.m = m;
  d.real_constraint = real_constraint;
  d.degree_hint = degree;
  d.f = [coeffs, n, m, L](const VecN& xi) {
    CVec out(m);
    for (int l = 0; l <= L; ++l) {
      const long long dk = specfun::harmonic_count(n - 1, l);
      for (int k = 1; k <= dk; ++k)
        out.add_scaled(specfun::sph_harmonic(l, k, xi), (*coeffs)[l][k - 1]);
    }
    return out;
  };
  return d;
}

}  // namespace

json to_json(const waves::WaveSpec& spec) {
  json j;
  if (const auto* bs = std::get_if<waves::BesselSum>(&spec)) {
    j["kind"] = "bessel_sum";
    j["n"] = bs->n;
    j["m"] = bs->m;
    j["radius"] = bs->radius;
    json terms = json::array();
    for (const auto& t : bs->terms) terms.push_back({{"c", cvec_re(t.c)}, {"x", vec_to_json(t.x)}});
    j["terms"] = terms;
    return j;
  }
  if (const auto* pw = std::get_if<waves::PlaneWaveSum>(&spec)) {
    j["kind"] = "plane_wave_sum";
    j["n"] = pw->n;
    j["m"] = pw->m;
    json terms = json::array();
    for (const auto& t : pw->terms)
      terms.push_back({{"c_re", cvec_re(t.c)}, {"c_im", cvec_im(t.c)}, {"xi", vec_to_json(t.xi)}});
    j["terms"] = terms;
    return j;
  }
  if (const auto* hd = std::get_if<waves::HerglotzDensity>(&spec)) {
    if (!hd->f) throw ValidationError("to_json: Herglotz density has no callable");
    j["kind"] = "herglotz_grid";
    j["n"] = hd->n;
    j["m"] = hd->m;
    j["real_constraint"] = hd->real_constraint;
    j["degree"] = hd->degree_hint;
    const SphereRule rule = sphere_rule(hd->n, hd->degree_hint);
    json re = json::array(), im = json::array();
    for (const auto& node : rule.nodes) {
      const CVec v = hd->f(node);
      re.push_back(cvec_re(v));
      im.push_back(cvec_im(v));
    }
    j["values_re"] = re;
    j["values_im"] = im;
    return j;
  }
  const auto& he = std::get<waves::HarmonicExpansion>(spec);
  j["kind"] = "harmonic_expansion";
  j["n"] = he.n;
  j["m"] = he.m;
  j["L"] = he.L;
  json rows = json::array();
  for (int l = 0; l <= he.L; ++l) {
    json row = json::array();
    for (const auto& c : he.b[l]) row.push_back({{"re", cvec_re(c)}, {"im", cvec_im(c)}});
    rows.push_back(row);
  }
  j["b"] = rows;
  return j;
}

waves::WaveSpec wave_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const int n = j.at("n").get<int>();
  const int m = j.at("m").get<int>();
  if (kind == "bessel_sum") {
    waves::BesselSum bs;
    bs.n = n;
    bs.m = m;
    bs.radius = j.at("radius").get<double>();
    for (const auto& t : j.at("terms"))
      bs.terms.push_back({cvec_from_json(t.at("c"), json()), vec_from_json(t.at("x"))});
    return bs;
  }
  if (kind == "plane_wave_sum") {
    waves::PlaneWaveSum pw;
    pw.n = n;
    pw.m = m;
    for (const auto& t : j.at("terms"))
      pw.terms.push_back({cvec_from_json(t.at("c_re"), t.at("c_im")), vec_from_json(t.at("xi"))});
    return pw;
  }
  if (kind == "herglotz_grid") {
    const int degree = j.at("degree").get<int>();
    const auto& re = j.at("values_re");
    const auto& im = j.at("values_im");
    std::vector<CVec> samples;
    for (size_t q = 0; q < re.size(); ++q) samples.push_back(cvec_from_json(re[q], im[q]));
    return density_from_samples(n, m, j.at("real_constraint").get<bool>(), degree, samples);
  }
  if (kind == "harmonic_expansion") {
    waves::HarmonicExpansion he;
    he.n = n;
    he.m = m;
    he.L = j.at("L").get<int>();
    for (const auto& row : j.at("b")) {
      std::vector<CVec> r;
      for (const auto& c : row) r.push_back(cvec_from_json(c.at("re"), c.at("im")));
      he.b.push_back(std::move(r));
    }
    if (int(he.b.size()) != he.L + 1) throw ValidationError("harmonic_expansion: row count != L+1");
    return he;
  }
  throw ValidationError("wave_from_json: unknown kind '" + kind + "'");
}

json to_json(const herglotz::SphericalCapCover& cover) {
  json j;
  j["n"] = cover.n;
  j["eps"] = cover.eps;
  json cells = json::array();
  for (const auto& c : cover.cells) {
    json zonal = json::array();
    for (int lv = 0; lv < c.levels; ++lv) zonal.push_back({c.zonal[lv][0], c.zonal[lv][1]});
    cells.push_back({{"center", vec_to_json(c.center)},
                     {"rep", vec_to_json(c.rep)},
                     {"area", c.area},
                     {"diameter", c.diam_bound},
                     {"zonal", zonal}});
  }
  j["cells"] = cells;
  return j;
}

herglotz::SphericalCapCover cover_from_json(const json& j) {
  herglotz::SphericalCapCover cover;
  cover.n = j.at("n").get<int>();
  cover.eps = j.at("eps").get<double>();
  for (const auto& cj : j.at("cells")) {
    herglotz::CapCell c;
    c.center = vec_from_json(cj.at("center"));
    c.rep = vec_from_json(cj.at("rep"));
    c.area = cj.at("area").get<double>();
    c.diam_bound = cj.at("diameter").get<double>();
    const auto& zonal = cj.at("zonal");
    c.levels = int(zonal.size());
    for (int lv = 0; lv < c.levels; ++lv)
      c.zonal[lv] = {zonal[lv][0].get<double>(), zonal[lv][1].get<double>()};
    cover.cells.push_back(c);
  }
  return cover;
}

json to_json(const sphere::SphereEigenfunction& psi) {
  json j;
  j["N"] = psi.N;
  j["n"] = psi.n;
  j["m"] = psi.m;
  j["norm_constant"] = psi.norm_constant;
  j["eigenvalue"] = psi.eigenvalue();
  json terms = json::array();
  for (const auto& t : psi.terms) terms.push_back({{"c", cvec_re(t.c)}, {"p", vec_to_json(t.p)}});
  j["terms"] = terms;
  return j;
}

sphere::SphereEigenfunction sphere_eigenfunction_from_json(const json& j) {
  sphere::SphereEigenfunction psi;
  psi.N = j.at("N").get<int>();
  psi.n = j.at("n").get<int>();
  psi.m = j.at("m").get<int>();
  psi.norm_constant = j.at("norm_constant").get<double>();
  for (const auto& t : j.at("terms"))
    psi.terms.push_back({cvec_from_json(t.at("c"), json()), vec_from_json(t.at("p"))});
  return psi;
}

json to_json(const torus::TorusEigenfunction& psi) {
  json j;
  j["N"] = psi.N;
  j["n"] = psi.n;
  j["m"] = psi.m;
  j["real_valued"] = psi.real_valued;
  j["eigenvalue"] = psi.eigenvalue();
  json modes = json::array();
  for (const auto& mode : psi.modes) {
    json k = json::array();
    for (int d = 0; d < psi.n; ++d) k.push_back(mode.k[d]);
    modes.push_back({{"k", k}, {"c_re", cvec_re(mode.c)}, {"c_im", cvec_im(mode.c)}});
  }
  j["modes"] = modes;
  return j;
}

torus::TorusEigenfunction torus_eigenfunction_from_json(const json& j) {
  torus::TorusEigenfunction psi;
  psi.N = j.at("N").get<int>();
  psi.n = j.at("n").get<int>();
  psi.m = j.at("m").get<int>();
  psi.real_valued = j.at("real_valued").get<bool>();
  for (const auto& mj : j.at("modes")) {
    torus::TorusEigenfunction::Mode mode{};
    const auto& k = mj.at("k");
    for (int d = 0; d < psi.n; ++d) mode.k[d] = k[d].get<long long>();
    mode.c = cvec_from_json(mj.at("c_re"), mj.at("c_im"));
    psi.modes.push_back(mode);
  }
  return psi;
}

json to_json(const torus::LatticeSphere& lattice) {
  json j;
  j["N"] = lattice.N;
  j["n"] = lattice.n;
  json pts = json::array();
  for (const auto& p : lattice.points) {
    json row = json::array();
    for (int d = 0; d < lattice.n; ++d) row.push_back(p[d]);
    pts.push_back(row);
  }
  j["points"] = pts;
  return j;
}

json to_json(const analysis::NodalReport& report) {
  json j;
  j["all_matched"] = report.all_matched;
  j["components_found"] = report.components_found;
  json ms = json::array();
  for (const auto& m : report.matches)
    ms.push_back({{"reference", m.reference},
                  {"found", m.found},
                  {"matched", m.matched},
                  {"chi_ref", m.chi_ref},
                  {"chi_found", m.chi_found},
                  {"hausdorff", m.hausdorff},
                  {"margin", m.margin}});
  j["matches"] = ms;
  return j;
}

namespace {
void append_num(std::ostringstream& os, double v) {
  char buf[32];
  snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}
}  // namespace

std::string lattice_csv(const torus::LatticeSphere& lattice) {
  std::ostringstream os;
  for (int d = 0; d < lattice.n; ++d) os << (d ? "," : "") << "k" << (d + 1);
  os << "\n";
  for (const auto& p : lattice.points) {
    for (int d = 0; d < lattice.n; ++d) os << (d ? "," : "") << p[d];
    os << "\n";
  }
  return os.str();
}

std::string cap_count_csv(const herglotz::SphericalCapCover& cover,
                          const torus::LatticeSphere& lattice) {
  std::vector<int> counts(cover.cells.size(), 0);
  for (size_t i = 0; i < lattice.points.size(); ++i) {
    const int cell = cover.locate(lattice.direction(i));
    if (cell >= 0) ++counts[cell];
  }
  std::ostringstream os;
  os << "cell,area,directions\n";
  for (size_t i = 0; i < counts.size(); ++i) {
    os << i << ",";
    append_num(os, cover.cells[i].area);
    os << "," << counts[i] << "\n";
  }
  return os.str();
}

std::string grid_csv(const EvaluationGrid& grid) {
  std::ostringstream os;
  for (int d = 0; d < grid.n(); ++d) os << (d ? "," : "") << "x" << (d + 1);
  for (int c = 0; c < grid.m(); ++c) os << ",psi" << (c + 1);
  os << "\n";
  const auto& dims = grid.dims();
  for (int k = 0; k < dims[2]; ++k)
    for (int j = 0; j < dims[1]; ++j)
      for (int i = 0; i < dims[0]; ++i) {
        if (!grid.inside(i, j, k)) continue;
        const VecN p = grid.point(i, j, k);
        for (int d = 0; d < grid.n(); ++d) {
          if (d) os << ",";
          append_num(os, p[d]);
        }
        for (int c = 0; c < grid.m(); ++c) {
          os << ",";
          append_num(os, grid.value(grid.index(i, j, k), c));
        }
        os << "\n";
      }
  return os.str();
}

std::string component_obj(const analysis::NodalComponent& comp) {
  std::ostringstream os;
  for (const auto& v : comp.vertices) {
    os << "v";
    for (int d = 0; d < 3; ++d) {
      os << " ";
      append_num(os, v[d]);
    }
    os << "\n";
  }
  for (const auto& f : comp.faces) os << "f " << f[0] + 1 << " " << f[1] + 1 << " " << f[2] + 1 << "\n";
  for (const auto& s : comp.segments) os << "l " << s[0] + 1 << " " << s[1] + 1 << "\n";
  return os.str();
}

std::string component_csv(const analysis::NodalComponent& comp) {
  std::ostringstream os;
  os << "x1,x2,x3\n";
  for (const auto& v : comp.vertices) {
    for (int d = 0; d < 3; ++d) {
      if (d) os << ",";
      append_num(os, v[d]);
    }
    os << "\n";
  }
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open for writing: " + path);
  out << content;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open: " + path);
  json j;
  in >> j;
  return j;
}

}  // namespace eigenloc::io
