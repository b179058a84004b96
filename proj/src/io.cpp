#include "maglap/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "maglap/errors.hpp"

namespace maglap::io {

using nlohmann::json;

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x00000100000001B3ULL;
    }
    return hash;
}

void write_heat_grid_csv(std::ostream& out, const HeatGrid& grid) {
    out << "q/T";
    for (double t : grid.temperatures) out << ',' << format_double(t);
    out << '\n';
    for (std::size_t qi = 0; qi < grid.charges.size(); ++qi) {
        out << format_double(grid.charges[qi]);
        for (std::size_t ti = 0; ti < grid.temperatures.size(); ++ti)
            out << ',' << format_double(grid.at(qi, ti));
        out << '\n';
    }
}

namespace {

json heat_grid_to_json(const HeatGrid& grid) {
    json rows = json::array();
    for (std::size_t qi = 0; qi < grid.charges.size(); ++qi) {
        json row = json::array();
        for (std::size_t ti = 0; ti < grid.temperatures.size(); ++ti)
            row.push_back(grid.at(qi, ti));
        rows.push_back(std::move(row));
    }
    return json{{"charges", grid.charges},
                {"temperatures", grid.temperatures},
                {"values", std::move(rows)},
                {"kind", grid.kind},
                {"graph_id", grid.graph_id}};
}

}  // namespace

void write_heat_grid_json(std::ostream& out, const HeatGrid& grid) {
    out << heat_grid_to_json(grid).dump(2) << '\n';
}

HeatGrid read_heat_grid_json(std::istream& in) {
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed heat-grid JSON: ") + e.what());
    }
    HeatGrid grid;
    try {
        grid.charges = j.at("charges").get<std::vector<double>>();
        grid.temperatures = j.at("temperatures").get<std::vector<double>>();
        grid.kind = j.value("kind", "normalized");
        grid.graph_id = j.value("graph_id", "");
        const auto& rows = j.at("values");
        if (rows.size() != grid.charges.size())
            throw ValidationError("heat-grid JSON row count does not match charges");
        grid.values.reserve(grid.charges.size() * grid.temperatures.size());
        for (const auto& row : rows) {
            if (row.size() != grid.temperatures.size())
                throw ValidationError("heat-grid JSON column count does not match temperatures");
            for (const auto& v : row) grid.values.push_back(v.get<double>());
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed heat-grid JSON: ") + e.what());
    }
    return grid;
}

HeatGrid read_heat_grid_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    return read_heat_grid_json(in);
}

void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum) {
    out << "lambda\n";
    for (Eigen::Index l = 0; l < spectrum.eigenvalues.size(); ++l)
        out << format_double(spectrum.eigenvalues(l)) << '\n';
}

void write_density_csv(std::ostream& out, const kpm::SpectralDensity& density) {
    out << "lambda,weight\n";
    for (std::size_t i = 0; i < density.size(); ++i)
        out << format_double(density.support[i]) << ',' << format_double(density.weights[i])
            << '\n';
}

void write_density_json(std::ostream& out, const kpm::SpectralDensity& density,
                        const kpm::KpmConfig& config, const kpm::AffineMap& map,
                        std::int64_t node_count) {
    const json j{{"support", density.support},
                 {"weights", density.weights},
                 {"node_count", node_count},
                 {"affine", {{"scale", map.scale}, {"shift", map.shift}}},
                 {"config",
                  {{"num_moments", config.num_moments},
                   {"num_random_vectors", config.num_random_vectors},
                   {"grid_points", config.resolved_grid_points()},
                   {"kernel", kpm::to_string(config.kernel)},
                   {"seed", config.seed},
                   {"safety_margin", config.safety_margin},
                   {"exact_trace", config.exact_trace},
                   {"probe_distribution", "unit-modulus complex phases"}}}};
    out << j.dump(2) << '\n';
}

void write_som_json(std::ostream& out, const som::SomGrid& som) {
    const json j{{"width", som.width},
                 {"height", som.height},
                 {"dim", som.dim},
                 {"codebook", som.codebook},
                 {"labels", som.labels},
                 {"training",
                  {{"epochs", som.config.epochs},
                   {"learning_rate_start", som.config.learning_rate_start},
                   {"learning_rate_end", som.config.learning_rate_end},
                   {"radius_start", som.config.radius_start},
                   {"radius_end", som.config.radius_end},
                   {"seed", som.config.seed},
                   {"batch", som.config.batch}}}};
    out << j.dump(2) << '\n';
}

void write_u_matrix_csv(std::ostream& out, const som::SomGrid& som) {
    const auto u = som::u_matrix(som);
    for (int y = 0; y < som.height; ++y) {
        for (int x = 0; x < som.width; ++x) {
            if (x) out << ',';
            out << format_double(u[static_cast<std::size_t>(y * som.width + x)]);
        }
        out << '\n';
    }
}

void write_label_map_csv(std::ostream& out, const som::SomGrid& som) {
    if (som.labels.empty()) throw ValidationError("SOM has no labels; run labeling first");
    for (int y = 0; y < som.height; ++y) {
        for (int x = 0; x < som.width; ++x) {
            if (x) out << ',';
            out << som.labels[static_cast<std::size_t>(y * som.width + x)];
        }
        out << '\n';
    }
}

void write_generator_spec_json(std::ostream& out, const GeneratorSpec& spec) {
    const json j{{"family", spec.family}, {"parameters", spec.parameters}, {"seed", spec.seed}};
    out << j.dump(2) << '\n';
}

}  // namespace maglap::io
