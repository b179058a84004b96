#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "maglap/exact.hpp"
#include "maglap/generators.hpp"
#include "maglap/kpm.hpp"
#include "maglap/som.hpp"

namespace maglap::io {

/// Shortest 17-significant-digit decimal form, stable across runs.
std::string format_double(double value);

std::uint64_t fnv1a64(std::string_view bytes);

// Heat grids: CSV has temperatures across the header row and one charge per
// data row; JSON carries the same values plus kind/graph metadata.
void write_heat_grid_csv(std::ostream& out, const HeatGrid& grid);
void write_heat_grid_json(std::ostream& out, const HeatGrid& grid);
HeatGrid read_heat_grid_json(std::istream& in);
HeatGrid read_heat_grid_json_file(const std::string& path);

void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum);

void write_density_csv(std::ostream& out, const kpm::SpectralDensity& density);
void write_density_json(std::ostream& out, const kpm::SpectralDensity& density,
                        const kpm::KpmConfig& config, const kpm::AffineMap& map,
                        std::int64_t node_count);

void write_som_json(std::ostream& out, const som::SomGrid& som);
void write_u_matrix_csv(std::ostream& out, const som::SomGrid& som);
void write_label_map_csv(std::ostream& out, const som::SomGrid& som);

/// Serialized GeneratorSpec sidecar for generated graphs.
void write_generator_spec_json(std::ostream& out, const GeneratorSpec& spec);

}  // namespace maglap::io
