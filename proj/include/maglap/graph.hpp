#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace maglap {

using NodeId = std::int32_t;

struct Edge {
    NodeId source = 0;
    NodeId target = 0;
    double weight = 1.0;
};

/// Directed weighted graph over dense integer node ids. Immutable after
/// construction. No self-loops, at most one edge per ordered pair, weights
/// strictly positive and finite; violations throw ValidationError.
class DirectedGraph {
public:
    DirectedGraph() = default;
    DirectedGraph(NodeId node_count, std::vector<Edge> edges);

    NodeId node_count() const { return node_count_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }
    double total_weight() const;

private:
    NodeId node_count_ = 0;
    std::vector<Edge> edges_;
};

/// One record per unordered pair {u, v} with u < v.
/// weight = (w(u,v) + w(v,u)) / 2, flow = w(u,v) - w(v,u).
struct SymmetricPair {
    NodeId u = 0;
    NodeId v = 0;
    double weight = 0.0;
    double flow = 0.0;
};

/// Symmetrized view of a directed graph: symmetric weights, antisymmetric
/// flows, and node strengths d_u = sum_v w_s(u, v).
class SymmetrizedGraph {
public:
    SymmetrizedGraph() = default;
    SymmetrizedGraph(NodeId node_count, std::vector<SymmetricPair> pairs);

    NodeId node_count() const { return node_count_; }
    const std::vector<SymmetricPair>& pairs() const { return pairs_; }
    const std::vector<double>& degrees() const { return degrees_; }

private:
    NodeId node_count_ = 0;
    std::vector<SymmetricPair> pairs_;  // sorted by (u, v)
    std::vector<double> degrees_;
};

SymmetrizedGraph symmetrize(const DirectedGraph& g);

struct ComponentResult {
    DirectedGraph graph;
    std::vector<NodeId> old_to_new;  // -1 for nodes outside the component
    std::vector<NodeId> new_to_old;
};

/// Induced subgraph on the largest weakly connected node set, indices
/// compacted preserving order. Ties broken toward the component containing
/// the smallest original index. Throws ValidationError on an empty graph.
ComponentResult largest_weakly_connected_component(const DirectedGraph& g);

bool is_weakly_connected(const DirectedGraph& g);

/// Relabels nodes: edge (u, v, w) becomes (perm[u], perm[v], w).
DirectedGraph permute_nodes(const DirectedGraph& g, const std::vector<NodeId>& perm);

/// Parses the edge-list format: one "u v" or "u v w" per line, '#' comments,
/// optional "#nodes N" header, LF or CRLF. Node count is 1 + max index unless
/// the header says otherwise.
DirectedGraph load_edge_list(std::istream& in);
DirectedGraph load_edge_list_file(const std::string& path);

struct LabeledGraph {
    DirectedGraph graph;
    std::vector<std::string> labels;  // labels[i] is the original token of node i
};

/// Same line format but node tokens are arbitrary strings, assigned dense
/// indices in order of first appearance.
LabeledGraph load_labeled_edge_list(std::istream& in);

void write_edge_list(std::ostream& out, const DirectedGraph& g);
void write_edge_list_file(const std::string& path, const DirectedGraph& g);

}  // namespace maglap
