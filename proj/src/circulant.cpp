#include "maglap/circulant.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "maglap/errors.hpp"
#include "maglap/generators.hpp"

namespace maglap::circulant {

namespace {

void require_block_spec(NodeId n_blocks, NodeId block_size) {
    if (n_blocks < 3) throw ValidationError("n_blocks must be at least 3");
    if (block_size < 2) throw ValidationError("block_size must be at least 2");
}

}  // namespace

Eigen::MatrixXcd block_reduced_matrix(const Eigen::MatrixXcd& h_in, const Eigen::MatrixXcd& h_out,
                                      NodeId u, NodeId n_blocks) {
    if (h_in.rows() != h_in.cols() || h_out.rows() != h_out.cols() ||
        h_in.rows() != h_out.rows())
        throw ValidationError("block matrices must be square and equally sized");
    if (u < 0 || u >= n_blocks) throw ValidationError("block index out of range");
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(u) /
                         static_cast<double>(n_blocks);
    const std::complex<double> rho{std::cos(angle), std::sin(angle)};
    return h_in + rho * h_out + std::conj(rho) * h_out.adjoint();
}

Eigen::MatrixXcd uniform_block_in(NodeId block_size) {
    const double d = 2.0 * block_size - 1.0;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Constant(block_size, block_size, -1.0 / d);
    h.diagonal().setConstant(1.0);
    return h;
}

Eigen::MatrixXcd uniform_block_out(NodeId block_size, double charge) {
    const double d = 2.0 * block_size - 1.0;
    const double angle = 2.0 * std::numbers::pi * charge;
    const std::complex<double> phase{std::cos(angle), std::sin(angle)};
    return Eigen::MatrixXcd::Constant(block_size, block_size, -phase / (2.0 * d));
}

std::vector<double> uniform_modular_eigenvalues(NodeId n_blocks, NodeId block_size, double charge) {
    require_block_spec(n_blocks, block_size);
    const double d = 2.0 * block_size - 1.0;
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(n_blocks) * static_cast<std::size_t>(block_size));
    for (NodeId u = 0; u < n_blocks; ++u) {
        const double angle =
            2.0 * std::numbers::pi *
            (static_cast<double>(u) / static_cast<double>(n_blocks) - charge);
        values.push_back(static_cast<double>(block_size) * (1.0 - std::cos(angle)) / d);
        for (NodeId v = 1; v < block_size; ++v) values.push_back(1.0 + 1.0 / d);
    }
    std::sort(values.begin(), values.end());
    return values;
}

HeatGrid oracle_heat_grid(NodeId n_blocks, NodeId block_size, const std::vector<double>& charges,
                          const std::vector<double>& temperatures) {
    require_block_spec(n_blocks, block_size);
    if (charges.empty() || temperatures.empty()) throw ValidationError("grids must be non-empty");
    HeatGrid grid;
    grid.charges = charges;
    grid.temperatures = temperatures;
    grid.kind = "normalized";
    grid.graph_id = "uniform-" + std::to_string(n_blocks) + "x" + std::to_string(block_size);
    grid.values.assign(charges.size() * temperatures.size(), 0.0);
    for (std::size_t qi = 0; qi < charges.size(); ++qi) {
        const Spectrum spectrum =
            Spectrum::from_values(uniform_modular_eigenvalues(n_blocks, block_size, charges[qi]));
        for (std::size_t ti = 0; ti < temperatures.size(); ++ti)
            grid.at(qi, ti) = specific_heat(spectrum, temperatures[ti]);
    }
    return grid;
}

DirectedGraph random_intrablock_graph(NodeId n_blocks, NodeId block_size, double p_within,
                                      std::uint64_t seed) {
    if (!(p_within > 0.0 && p_within <= 1.0))
        throw ValidationError("p_within must lie in (0, 1]");
    return cyclic_sbm(n_blocks, block_size, p_within, 1.0, seed);
}

HeatGrid random_intrablock_experiment(NodeId n_blocks, NodeId block_size, double p_within,
                                      const std::vector<double>& charges,
                                      const std::vector<double>& temperatures, std::uint64_t seed,
                                      unsigned threads) {
    const DirectedGraph g = random_intrablock_graph(n_blocks, block_size, p_within, seed);
    const DirectedGraph component = largest_weakly_connected_component(g).graph;
    HeatGrid grid = heat_grid(component, charges, temperatures, OperatorKind::normalized,
                              kDefaultDenseLimit, threads);
    grid.graph_id = "random-intrablock-" + std::to_string(n_blocks) + "x" +
                    std::to_string(block_size);
    return grid;
}

}  // namespace maglap::circulant
