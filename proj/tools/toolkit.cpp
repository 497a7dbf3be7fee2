// Batch front-end: every subcommand reads a JSON config (flags override
// single fields), writes its artifacts plus a manifest echoing the
// effective config, and uses exit codes 0 (ok), 2 (validation error),
// 3 (numerical failure).

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>

#include "eigenloc/analysis.hpp"
#include "eigenloc/errors.hpp"
#include "eigenloc/herglotz.hpp"
#include "eigenloc/json_io.hpp"
#include "eigenloc/quadrature.hpp"
#include "eigenloc/sphere.hpp"
#include "eigenloc/torus.hpp"
#include "eigenloc/waves.hpp"

namespace fs = std::filesystem;
using namespace eigenloc;
using eigenloc::io::json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Options {
  std::string config_path;
  std::string out_dir = "out";
  std::optional<int> N;
  std::optional<double> eps;
  std::optional<double> h;
  std::optional<double> R;
  std::optional<double> delta2;
};

json load_config(const Options& opt) {
  json cfg = json::object();
  if (!opt.config_path.empty()) cfg = io::read_json_file(opt.config_path);
  if (opt.N) cfg["N"] = *opt.N;
  if (opt.eps) cfg["cover"]["eps"] = *opt.eps;
  if (opt.h) cfg["grid"]["h"] = *opt.h;
  if (opt.R) cfg["fourier"]["R"] = *opt.R;
  if (opt.delta2) cfg["fourier"]["delta2"] = *opt.delta2;
  if (!cfg.contains("out")) cfg["out"] = opt.out_dir;
  if (opt.out_dir != "out") cfg["out"] = opt.out_dir;
  return cfg;
}

fs::path prepare_out(const json& cfg) {
  fs::path dir = cfg.at("out").get<std::string>();
  fs::create_directories(dir);
  return dir;
}

void write_manifest(const fs::path& dir, const std::string& command, const json& cfg) {
  json manifest;
  manifest["command"] = command;
  manifest["config"] = cfg;
  manifest["version"] = kVersion;
  io::write_file((dir / "manifest.json").string(), manifest.dump(2) + "\n");
}

int require_int(const json& cfg, const std::string& key) {
  if (!cfg.contains(key)) throw ValidationError("config: missing field '" + key + "'");
  return cfg.at(key).get<int>();
}

double require_double(const json& cfg, const char* group, const char* key) {
  if (!cfg.contains(group) || !cfg.at(group).contains(key))
    throw ValidationError(std::string("config: missing field '") + group + "." + key + "'");
  return cfg.at(group).at(key).get<double>();
}

waves::WaveSpec load_target(const json& cfg) {
  if (!cfg.contains("target")) throw ValidationError("config: missing 'target'");
  const json& t = cfg.at("target");
  if (t.is_string()) return io::wave_from_json(io::read_json_file(t.get<std::string>()));
  return io::wave_from_json(t);
}

waves::HerglotzDensity target_density(const waves::WaveSpec& spec) {
  if (const auto* hd = std::get_if<waves::HerglotzDensity>(&spec)) return *hd;
  if (const auto* he = std::get_if<waves::HarmonicExpansion>(&spec))
    return waves::expansion_to_density(*he);
  throw ValidationError("target: need a herglotz_grid or harmonic_expansion for this command");
}

sphere::GeodesicChart default_chart(int n) {
  VecN base(n + 1);
  base[n] = 1.0;
  return sphere::make_chart(n, base);
}

// rescaled eigenfunction evaluator psi(Psi^{-1}(x/N)) for either manifold
FieldEval rescaled_sphere(const sphere::SphereEigenfunction& psi,
                          const sphere::GeodesicChart& chart) {
  const int N = psi.N;
  return [psi, chart, N](const VecN& x) {
    return sphere::eval_sphere(psi, sphere::chart_map(chart, (1.0 / N) * x));
  };
}

FieldEval rescaled_torus(const torus::TorusEigenfunction& psi) {
  const int N = psi.N;
  return [psi, N](const VecN& x) { return torus::eval_torus(psi, (1.0 / N) * x); };
}

int cmd_lattice(const json& cfg) {
  const fs::path dir = prepare_out(cfg);
  const int n = require_int(cfg, "n");
  const int N = require_int(cfg, "N");
  const torus::LatticeSphere lattice = torus::enumerate_lattice(N, n);
  io::write_file((dir / "lattice.csv").string(), io::lattice_csv(lattice));
  io::write_file((dir / "lattice.json").string(), io::to_json(lattice).dump(2) + "\n");
  if (cfg.contains("cover")) {
    const auto cover = herglotz::build_cap_cover(n, cfg.at("cover").at("eps").get<double>());
    io::write_file((dir / "cap_counts.csv").string(), io::cap_count_csv(cover, lattice));
  }
  write_manifest(dir, "lattice", cfg);
  std::cout << "lattice: N=" << N << " n=" << n << " points=" << lattice.points.size() << "\n";
  return 0;
}

int cmd_cover(const json& cfg) {
  const fs::path dir = prepare_out(cfg);
  const int n = require_int(cfg, "n");
  const double eps = require_double(cfg, "cover", "eps");
  const auto cover = herglotz::build_cap_cover(n, eps);
  io::write_file((dir / "cover.json").string(), io::to_json(cover).dump(2) + "\n");
  write_manifest(dir, "cover", cfg);
  std::cout << "cover: n=" << n << " eps=" << eps << " cells=" << cover.cells.size()
            << " total_area=" << cover.total_area() << "\n";
  return 0;
}

int cmd_approximate(const json& cfg) {
  const fs::path dir = prepare_out(cfg);
  const waves::WaveSpec target = load_target(cfg);
  const waves::HerglotzDensity density = target_density(target);
  const waves::WaveField oracle{waves::WaveSpec{density}};

  json report;
  std::mt19937 rng(cfg.value("seed", 12345));
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  auto sample_ball = [&]() {
    VecN x(density.n);
    do {
      for (int d = 0; d < density.n; ++d) x[d] = unif(rng);
    } while (x.norm() > 1.0);
    return x;
  };
  auto sup_error = [&](const waves::WaveSpec& approx) {
    const waves::WaveField f{approx};
    double sup = 0.0;
    for (int s = 0; s < 200; ++s) {
      const VecN x = sample_ball();
      sup = std::max(sup, (f(x) - oracle(x)).max_abs());
    }
    return sup;
  };

  if (cfg.contains("cover")) {
    const auto cover =
        herglotz::build_cap_cover(density.n, cfg.at("cover").at("eps").get<double>());
    const waves::PlaneWaveSum pw = herglotz::discretize_density(density, cover);
    io::write_file((dir / "plane_wave_sum.json").string(),
                   io::to_json(waves::WaveSpec{pw}).dump(2) + "\n");
    report["plane_wave"]["terms"] = pw.terms.size();
    report["plane_wave"]["sup_error_B"] = sup_error(waves::WaveSpec{pw});
    report["plane_wave"]["eps"] = cover.eps;
  }
  if (cfg.contains("fourier")) {
    const double R = require_double(cfg, "fourier", "R");
    const double delta2 = require_double(cfg, "fourier", "delta2");
    herglotz::BumpProfile bump;
    if (cfg.at("fourier").contains("bump_a")) bump.a = cfg.at("fourier").at("bump_a").get<double>();
    if (cfg.at("fourier").contains("bump_b")) bump.b = cfg.at("fourier").at("bump_b").get<double>();
    const auto ghat = herglotz::extend_and_transform(density, bump);
    const auto disc = herglotz::discretize_fourier(ghat, R, delta2);
    io::write_file((dir / "bessel_sum.json").string(),
                   io::to_json(waves::WaveSpec{disc.sum}).dump(2) + "\n");
    report["bessel"]["terms"] = disc.sum.terms.size();
    report["bessel"]["sup_error_B"] = sup_error(waves::WaveSpec{disc.sum});
    report["bessel"]["tail_mass"] = ghat.tail_mass(R);
    report["bessel"]["max_imag_discarded"] = disc.max_imag_discarded;
  }
  if (report.empty())
    throw ValidationError("approximate: config needs a 'cover' and/or 'fourier' block");
  io::write_file((dir / "report.json").string(), report.dump(2) + "\n");
  write_manifest(dir, "approximate", cfg);
  std::cout << "approximate: " << report.dump() << "\n";
  return 0;
}

int cmd_synthesize(const json& cfg) {
  const fs::path dir = prepare_out(cfg);
  const std::string manifold = cfg.value("manifold", "sphere");
  const int N = require_int(cfg, "N");
  const waves::WaveSpec target = load_target(cfg);

  FieldEval rescaled;
  int n = 0;
  if (manifold == "sphere") {
    const auto* bs = std::get_if<waves::BesselSum>(&target);
    if (!bs) throw ValidationError("synthesize: sphere target must be a bessel_sum");
    n = bs->n;
    const auto chart = default_chart(n);
    const auto psi = sphere::synthesize_sphere(*bs, N, chart);
    io::write_file((dir / "eigenfunction.json").string(), io::to_json(psi).dump(2) + "\n");
    rescaled = rescaled_sphere(psi, chart);
    std::cout << "synthesize: sphere N=" << N << " eigenvalue=" << psi.eigenvalue()
              << " terms=" << psi.terms.size() << "\n";
  } else if (manifold == "torus") {
    const waves::HerglotzDensity density = target_density(target);
    n = density.n;
    const auto cover = herglotz::build_cap_cover(n, require_double(cfg, "cover", "eps"));
    const auto syn = torus::synthesize_torus(density, cover, N);
    io::write_file((dir / "eigenfunction.json").string(), io::to_json(syn.psi).dump(2) + "\n");
    rescaled = rescaled_torus(syn.psi);
    if (syn.even_warning) std::cout << "warning: even N\n";
    std::cout << "synthesize: torus N=" << N << " eigenvalue=" << syn.psi.eigenvalue()
              << " modes=" << syn.psi.modes.size() << "\n";
  } else {
    throw ValidationError("synthesize: manifold must be 'sphere' or 'torus'");
  }

  if (cfg.contains("grid")) {
    const double h = require_double(cfg, "grid", "h");
    const double radius = cfg.at("grid").value("radius", 1.0);
    EvaluationGrid g = EvaluationGrid::ball(n, radius, h, spec_components(target));
    g.fill(rescaled);
    io::write_file((dir / "rescaled_field.csv").string(), io::grid_csv(g));
  }
  write_manifest(dir, "synthesize", cfg);
  return 0;
}

int cmd_error_scan(const json& cfg) {
  const fs::path dir = prepare_out(cfg);
  const std::string manifold = cfg.value("manifold", "sphere");
  if (!cfg.contains("N_list")) throw ValidationError("error-scan: config needs N_list");
  const std::vector<int> Ns = cfg.at("N_list").get<std::vector<int>>();
  const int r = cfg.value("r", 0);
  const double h = cfg.contains("grid") ? cfg.at("grid").value("h", 0.05) : 0.05;
  const double radius = cfg.contains("grid") ? cfg.at("grid").value("radius", 1.0) : 1.0;

  const waves::WaveSpec target = load_target(cfg);
  const waves::WaveField phi{target};
  const int n = spec_dim(target);
  const EvaluationGrid geom = EvaluationGrid::ball(n, radius, h, spec_components(target));

  std::ostringstream os;
  os << "N";
  for (int k = 0; k <= r; ++k) os << ",error_r" << k;
  os << "\n";
  for (int N : Ns) {
    FieldEval rescaled;
    if (manifold == "sphere") {
      const auto* bs = std::get_if<waves::BesselSum>(&target);
      if (!bs) throw ValidationError("error-scan: sphere target must be a bessel_sum");
      const auto chart = default_chart(n);
      rescaled = rescaled_sphere(sphere::synthesize_sphere(*bs, N, chart), chart);
    } else {
      const waves::HerglotzDensity density = target_density(target);
      const auto cover = herglotz::build_cap_cover(n, require_double(cfg, "cover", "eps"));
      rescaled = rescaled_torus(torus::synthesize_torus(density, cover, N).psi);
    }
    os << N;
    for (int k = 0; k <= r; ++k)
      os << "," << analysis::cr_error([&phi](const VecN& x) { return phi(x); }, rescaled, geom, k);
    os << "\n";
    std::cout << "error-scan: N=" << N << " done\n";
  }
  io::write_file((dir / "error_scan.csv").string(), os.str());
  write_manifest(dir, "error-scan", cfg);
  return 0;
}

int cmd_verify(const json& cfg) {
  const fs::path dir = prepare_out(cfg);
  const std::string manifold = cfg.value("manifold", "sphere");
  const int N = require_int(cfg, "N");
  const waves::WaveSpec target = load_target(cfg);
  std::mt19937 rng(cfg.value("seed", 12345));
  std::uniform_real_distribution<double> unif(-1.0, 1.0);

  json results;
  bool all_pass = true;
  auto record = [&](const std::string& name, double value, double bound) {
    const bool pass = value <= bound;
    all_pass = all_pass && pass;
    results[name] = {{"value", value}, {"bound", bound}, {"pass", pass}};
    std::cout << (pass ? "PASS " : "FAIL ") << name << ": " << value << " (bound " << bound
              << ")\n";
  };

  if (manifold == "sphere") {
    const auto* bs = std::get_if<waves::BesselSum>(&target);
    if (!bs) throw ValidationError("verify: sphere target must be a bessel_sum");
    const int n = bs->n;
    const auto chart = default_chart(n);
    const auto psi = sphere::synthesize_sphere(*bs, N, chart);
    double parity = 0.0;
    double scale = 0.0;
    for (int s = 0; s < 200; ++s) {
      VecN p(n + 1);
      for (int d = 0; d <= n; ++d) p[d] = unif(rng);
      if (p.norm() < 1e-6) continue;
      p = p.normalized();
      const CVec a = sphere::eval_sphere(psi, p);
      const CVec b = sphere::eval_sphere(psi, -1.0 * p);
      scale = std::max(scale, a.max_abs());
      parity = std::max(parity, (a - Complex(psi.N % 2 ? -1.0 : 1.0) * b).max_abs());
    }
    record("parity_identity", parity, 1e-10 * std::max(1.0, scale));
    const double h = cfg.contains("grid") ? cfg.at("grid").value("h", 0.05) : 0.05;
    EvaluationGrid g = EvaluationGrid::ball(n, 1.0, h, psi.m);
    g.fill(rescaled_sphere(psi, chart));
    // Delta_h + 1 residual of the rescaled field: O(h^2) + O(1/N)
    double sup = 0.0;
    const auto& dims = g.dims();
    for (int k = 0; k < dims[2]; ++k)
      for (int j = 0; j < dims[1]; ++j)
        for (int i = 0; i < dims[0]; ++i) {
          if (!g.interior(i, j, k)) continue;
          const double c0 = g.value(g.index(i, j, k), 0);
          double lap = -2.0 * n * c0;
          lap += g.value(g.index(i - 1, j, k), 0) + g.value(g.index(i + 1, j, k), 0);
          lap += g.value(g.index(i, j - 1, k), 0) + g.value(g.index(i, j + 1, k), 0);
          if (n == 3)
            lap += g.value(g.index(i, j, k - 1), 0) + g.value(g.index(i, j, k + 1), 0);
          sup = std::max(sup, std::abs(lap / (h * h) + c0));
        }
    record("rescaled_helmholtz_residual", sup,
           100.0 * (h * h + 1.0 / N) * std::max(1.0, g.max_abs()));
  } else if (manifold == "torus") {
    const waves::HerglotzDensity density = target_density(target);
    const int n = density.n;
    const auto cover = herglotz::build_cap_cover(n, require_double(cfg, "cover", "eps"));
    const auto syn = torus::synthesize_torus(density, cover, N);
    double realness = 0.0, identity = 0.0, laplace = 0.0, periodic = 0.0, scale = 1.0;
    const waves::WaveField snapped{waves::WaveSpec{syn.snapped}};
    for (int s = 0; s < 100; ++s) {
      VecN x(n);
      for (int d = 0; d < n; ++d) x[d] = unif(rng);
      const CVec v = torus::eval_torus(syn.psi, (1.0 / N) * x);
      scale = std::max(scale, v.max_abs());
      realness = std::max(realness, v.max_abs_imag());
      identity = std::max(identity, (v - snapped(x)).max_abs());
      VecN shifted = x;
      for (int d = 0; d < n; ++d) shifted[d] = x[d] + 2.0 * 3.14159265358979323846 * N * (d + 1);
      periodic = std::max(
          periodic, (torus::eval_torus(syn.psi, (1.0 / N) * shifted) - v).max_abs());
      const CVec lap = torus::eval_torus_laplacian(syn.psi, (1.0 / N) * x);
      laplace = std::max(
          laplace, (lap + Complex(syn.psi.eigenvalue()) * torus::eval_torus(syn.psi, (1.0 / N) * x))
                       .max_abs());
    }
    if (syn.psi.real_valued) record("hermitian_realness", realness, 1e-12 * scale);
    record("rescaling_identity", identity, 1e-12 * scale);
    record("periodicity", periodic, 1e-9 * scale * N);
    record("eigen_equation", laplace, 1e-10 * scale * syn.psi.eigenvalue());
  } else {
    throw ValidationError("verify: manifold must be 'sphere' or 'torus'");
  }

  io::write_file((dir / "verify.json").string(), results.dump(2) + "\n");
  write_manifest(dir, "verify", cfg);
  if (!all_pass) throw NumericalError("verify: some checks failed");
  return 0;
}

int cmd_nodal(const json& cfg) {
  const fs::path dir = prepare_out(cfg);
  const std::string manifold = cfg.value("manifold", "sphere");
  const int N = require_int(cfg, "N");
  const waves::WaveSpec target = load_target(cfg);
  const int n = spec_dim(target);
  const double h = require_double(cfg, "grid", "h");
  const double radius = cfg.at("grid").value("radius", 1.0);

  const EvaluationGrid geom = EvaluationGrid::ball(n, radius, h, spec_components(target));
  const waves::WaveField phi{target};
  EvaluationGrid ref_grid = geom;
  ref_grid.fill([&phi](const VecN& x) { return phi(x); });
  std::vector<analysis::NodalComponent> reference = analysis::nodal_extract(ref_grid);
  for (auto& comp : reference)
    analysis::stability_margin([&phi](const VecN& x) { return phi(x); }, comp, h);

  FieldEval rescaled;
  if (manifold == "sphere") {
    const auto* bs = std::get_if<waves::BesselSum>(&target);
    if (!bs) throw ValidationError("nodal: sphere target must be a bessel_sum");
    const auto chart = default_chart(n);
    rescaled = rescaled_sphere(sphere::synthesize_sphere(*bs, N, chart), chart);
  } else if (manifold == "torus") {
    const waves::HerglotzDensity density = target_density(target);
    const auto cover = herglotz::build_cap_cover(n, require_double(cfg, "cover", "eps"));
    rescaled = rescaled_torus(torus::synthesize_torus(density, cover, N).psi);
  } else {
    throw ValidationError("nodal: manifold must be 'sphere' or 'torus'");
  }

  const analysis::NodalReport report = analysis::localized_nodal_check(rescaled, geom, reference);
  json rj = io::to_json(report);
  json refs = json::array();
  for (size_t i = 0; i < reference.size(); ++i)
    refs.push_back({{"chi", reference[i].chi},
                    {"closed", reference[i].closed},
                    {"genus", reference[i].genus},
                    {"margin", reference[i].margin},
                    {"vertices", reference[i].vertices.size()}});
  rj["reference_components"] = refs;
  io::write_file((dir / "nodal_report.json").string(), rj.dump(2) + "\n");
  for (size_t i = 0; i < reference.size(); ++i)
    io::write_file((dir / ("reference_" + std::to_string(i) + ".obj")).string(),
                   io::component_obj(reference[i]));
  write_manifest(dir, "nodal", cfg);
  std::cout << "nodal: matched=" << report.all_matched
            << " components_found=" << report.components_found << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"high-degree Laplace eigenfunctions with prescribed local behavior"};
  app.require_subcommand(1);

  Options opt;
  std::string command;
  for (const char* name :
       {"lattice", "cover", "approximate", "synthesize", "error-scan", "verify", "nodal"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", opt.config_path, "JSON config file");
    sub->add_option("--out", opt.out_dir, "output directory");
    sub->add_option("--N", opt.N, "override N");
    sub->add_option("--eps", opt.eps, "override cover.eps");
    sub->add_option("--h", opt.h, "override grid.h");
    sub->add_option("--R", opt.R, "override fourier.R");
    sub->add_option("--delta2", opt.delta2, "override fourier.delta2");
    sub->callback([&command, name]() { command = name; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const json cfg = load_config(opt);
    if (command == "lattice") return cmd_lattice(cfg);
    if (command == "cover") return cmd_cover(cfg);
    if (command == "approximate") return cmd_approximate(cfg);
    if (command == "synthesize") return cmd_synthesize(cfg);
    if (command == "error-scan") return cmd_error_scan(cfg);
    if (command == "verify") return cmd_verify(cfg);
    if (command == "nodal") return cmd_nodal(cfg);
    throw ValidationError("unknown command");
  } catch (const ValidationError& e) {
    json err{{"error", {{"type", "validation"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    json err{{"error", {{"type", "numerical"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 3;
  } catch (const std::exception& e) {
    json err{{"error", {{"type", "numerical"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 3;
  }
}
