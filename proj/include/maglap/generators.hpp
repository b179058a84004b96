#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "maglap/graph.hpp"

namespace maglap {

/// Each ordered pair (u, v), u != v, gets a directed edge independently with
/// probability p. Gap sampling keeps generation O(edges).
DirectedGraph erdos_renyi_directed(NodeId n, double p, std::uint64_t seed);

/// Growth model seeded with an (m+1)-node directed clique; every later node
/// emits m directed edges to distinct existing targets chosen with
/// probability proportional to in-degree + 1.
DirectedGraph barabasi_albert_directed(NodeId n, NodeId m, std::uint64_t seed);

struct ScaleFreeParams {
    double alpha = 0.41;      // new node -> existing, target by in-degree
    double beta = 0.54;       // existing -> existing
    double gamma = 0.05;      // existing by out-degree -> new node
    double delta_in = 0.2;
    double delta_out = 0.0;
};

/// Three-event preferential-attachment digraph process, grown from a directed
/// 3-cycle until n nodes exist. Duplicate edges and self-loops are re-drawn.
DirectedGraph bollobas_scale_free(NodeId n, const ScaleFreeParams& params, std::uint64_t seed);

/// Directed ring lattice (k/2 successors each way), then each edge's target
/// rewired with probability beta_rewire to a uniform non-duplicate target.
/// Out-degrees stay exactly k.
DirectedGraph watts_strogatz_directed(NodeId n, NodeId k, double beta_rewire, std::uint64_t seed);

/// Stochastic block model with n_blocks equal blocks of block_size nodes:
/// within each block every ordered pair gets an edge w.p. p_within; every
/// node of block i points to every node of block i+1 (cyclically) w.p.
/// p_forward. Node j belongs to block j / block_size. Each block and each
/// block boundary consumes its own child random stream.
DirectedGraph cyclic_sbm(NodeId n_blocks, NodeId block_size, double p_within, double p_forward,
                         std::uint64_t seed);

/// Deterministic limit of the cyclic SBM: complete undirected blocks
/// (both directed edges per pair) plus complete directed forward coupling.
/// Every node ends with symmetrized strength 2 * block_size - 1.
DirectedGraph uniform_modular(NodeId n_blocks, NodeId block_size);

/// Family tag plus raw parameter record, as accepted by the CLI and stored in
/// generated-output sidecars.
struct GeneratorSpec {
    std::string family;  // er | ba | sf | ws | sbm | uniform
    std::map<std::string, double> parameters;
    std::uint64_t seed = 0;
};

DirectedGraph generate(const GeneratorSpec& spec);

}  // namespace maglap
