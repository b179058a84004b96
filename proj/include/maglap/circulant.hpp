#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "maglap/exact.hpp"
#include "maglap/graph.hpp"

namespace maglap::circulant {

/// Cyclic block layout of the uniform modular model.
struct BlockSpec {
    NodeId n_blocks = 3;   // N_f >= 3
    NodeId block_size = 2; // N_c >= 2
    double charge = 0.0;

    NodeId half_blocks() const { return n_blocks % 2 ? (n_blocks + 1) / 2 : n_blocks / 2; }
    NodeId half_nodes() const { return block_size % 2 ? (block_size + 1) / 2 : block_size / 2; }
    double degree() const { return 2.0 * block_size - 1.0; }
};

/// Reduced block for cyclic coupling: H_in + rho_u H_out + conj(rho_u) H_out^dagger
/// with rho_u = exp(2 pi i u / n_blocks).
Eigen::MatrixXcd block_reduced_matrix(const Eigen::MatrixXcd& h_in, const Eigen::MatrixXcd& h_out,
                                      NodeId u, NodeId n_blocks);

/// Intra- and inter-block tiles of the normalized magnetic Laplacian of the
/// uniform modular model at a given charge.
Eigen::MatrixXcd uniform_block_in(NodeId block_size);
Eigen::MatrixXcd uniform_block_out(NodeId block_size, double charge);

/// Full closed-form spectrum (sorted ascending, size n_blocks * block_size):
/// per block index u one eigenvalue N_c (1 - cos(2 pi (u/N_f - q))) / d plus
/// the level 1 + 1/d with multiplicity N_c - 1, where d = 2 N_c - 1.
std::vector<double> uniform_modular_eigenvalues(NodeId n_blocks, NodeId block_size, double charge);

/// Specific-heat grid from the closed-form eigenvalues.
HeatGrid oracle_heat_grid(NodeId n_blocks, NodeId block_size, const std::vector<double>& charges,
                          const std::vector<double>& temperatures);

/// Randomized-intrablock variant: ordered within-block pairs kept with
/// probability p_within, forward coupling complete.
DirectedGraph random_intrablock_graph(NodeId n_blocks, NodeId block_size, double p_within,
                                      std::uint64_t seed);

/// Exact heat grid of the randomized-intrablock variant; breaks the petal
/// symmetry that the uniform model shows.
HeatGrid random_intrablock_experiment(NodeId n_blocks, NodeId block_size, double p_within,
                                      const std::vector<double>& charges,
                                      const std::vector<double>& temperatures, std::uint64_t seed,
                                      unsigned threads = 0);

}  // namespace maglap::circulant
