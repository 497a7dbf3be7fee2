#pragma once

#include <string>

#include <json.hpp>

#include "eigenloc/analysis.hpp"
#include "eigenloc/herglotz.hpp"
#include "eigenloc/sphere.hpp"
#include "eigenloc/torus.hpp"
#include "eigenloc/waves.hpp"

// JSON, CSV and OBJ forms of the toolkit types. Field layouts are described
// in docs/formats.md; they are stable and byte-deterministic for fixed
// inputs (object keys are emitted sorted, no timestamps).
namespace eigenloc::io {

using nlohmann::json;

json to_json(const waves::WaveSpec& spec);
waves::WaveSpec wave_from_json(const json& j);

json to_json(const herglotz::SphericalCapCover& cover);
herglotz::SphericalCapCover cover_from_json(const json& j);

json to_json(const sphere::SphereEigenfunction& psi);
sphere::SphereEigenfunction sphere_eigenfunction_from_json(const json& j);

json to_json(const torus::TorusEigenfunction& psi);
torus::TorusEigenfunction torus_eigenfunction_from_json(const json& j);

json to_json(const torus::LatticeSphere& lattice);
json to_json(const analysis::NodalReport& report);

std::string lattice_csv(const torus::LatticeSphere& lattice);
std::string cap_count_csv(const herglotz::SphericalCapCover& cover,
                          const torus::LatticeSphere& lattice);
std::string grid_csv(const EvaluationGrid& grid);
std::string component_obj(const analysis::NodalComponent& comp);
std::string component_csv(const analysis::NodalComponent& comp);

void write_file(const std::string& path, const std::string& content);
json read_json_file(const std::string& path);

}  // namespace eigenloc::io
