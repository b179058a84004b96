#include "maglap/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "maglap/errors.hpp"

namespace maglap {

namespace {

std::uint64_t pair_key(NodeId u, NodeId v) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
}

}  // namespace

DirectedGraph::DirectedGraph(NodeId node_count, std::vector<Edge> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
    if (node_count_ < 0) throw ValidationError("node count must be non-negative");
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(edges_.size() * 2);
    for (const Edge& e : edges_) {
        if (e.source < 0 || e.source >= node_count_ || e.target < 0 || e.target >= node_count_)
            throw ValidationError("edge (" + std::to_string(e.source) + ", " +
                                  std::to_string(e.target) + ") out of range for " +
                                  std::to_string(node_count_) + " nodes");
        if (e.source == e.target)
            throw ValidationError("self-loop at node " + std::to_string(e.source));
        if (!(e.weight > 0.0) || !std::isfinite(e.weight))
            throw ValidationError("non-positive or non-finite weight on edge (" +
                                  std::to_string(e.source) + ", " + std::to_string(e.target) + ")");
        if (!seen.insert(pair_key(e.source, e.target)).second)
            throw ValidationError("duplicate edge (" + std::to_string(e.source) + ", " +
                                  std::to_string(e.target) + ")");
    }
}

double DirectedGraph::total_weight() const {
    double sum = 0.0;
    for (const Edge& e : edges_) sum += e.weight;
    return sum;
}

SymmetrizedGraph::SymmetrizedGraph(NodeId node_count, std::vector<SymmetricPair> pairs)
    : node_count_(node_count), pairs_(std::move(pairs)) {
    std::sort(pairs_.begin(), pairs_.end(),
              [](const SymmetricPair& a, const SymmetricPair& b) {
                  return a.u != b.u ? a.u < b.u : a.v < b.v;
              });
    degrees_.assign(static_cast<std::size_t>(node_count_), 0.0);
    for (const SymmetricPair& p : pairs_) {
        degrees_[static_cast<std::size_t>(p.u)] += p.weight;
        degrees_[static_cast<std::size_t>(p.v)] += p.weight;
    }
}

SymmetrizedGraph symmetrize(const DirectedGraph& g) {
    // Accumulate w(u,v) and w(v,u) per unordered pair keyed on (min, max).
    std::unordered_map<std::uint64_t, std::pair<double, double>> acc;
    acc.reserve(g.edge_count() * 2);
    for (const Edge& e : g.edges()) {
        const bool forward = e.source < e.target;
        const NodeId u = forward ? e.source : e.target;
        const NodeId v = forward ? e.target : e.source;
        auto& slot = acc[pair_key(u, v)];
        (forward ? slot.first : slot.second) += e.weight;
    }
    std::vector<SymmetricPair> pairs;
    pairs.reserve(acc.size());
    for (const auto& [key, w] : acc) {
        SymmetricPair p;
        p.u = static_cast<NodeId>(key >> 32);
        p.v = static_cast<NodeId>(key & 0xFFFFFFFFu);
        p.weight = (w.first + w.second) / 2.0;
        p.flow = w.first - w.second;
        pairs.push_back(p);
    }
    return SymmetrizedGraph(g.node_count(), std::move(pairs));
}

namespace {

std::vector<std::vector<NodeId>> undirected_adjacency(const DirectedGraph& g) {
    std::vector<std::vector<NodeId>> adj(static_cast<std::size_t>(g.node_count()));
    for (const Edge& e : g.edges()) {
        adj[static_cast<std::size_t>(e.source)].push_back(e.target);
        adj[static_cast<std::size_t>(e.target)].push_back(e.source);
    }
    return adj;
}

}  // namespace

ComponentResult largest_weakly_connected_component(const DirectedGraph& g) {
    const NodeId n = g.node_count();
    if (n == 0) throw ValidationError("empty graph has no components");
    const auto adj = undirected_adjacency(g);

    std::vector<NodeId> component(static_cast<std::size_t>(n), -1);
    NodeId best_root = 0;
    std::size_t best_size = 0;
    NodeId num_components = 0;
    std::vector<NodeId> stack;
    for (NodeId root = 0; root < n; ++root) {
        if (component[static_cast<std::size_t>(root)] >= 0) continue;
        std::size_t size = 0;
        stack.push_back(root);
        component[static_cast<std::size_t>(root)] = num_components;
        while (!stack.empty()) {
            const NodeId u = stack.back();
            stack.pop_back();
            ++size;
            for (NodeId v : adj[static_cast<std::size_t>(u)]) {
                if (component[static_cast<std::size_t>(v)] < 0) {
                    component[static_cast<std::size_t>(v)] = num_components;
                    stack.push_back(v);
                }
            }
        }
        // Strict > keeps the earliest (smallest min index) component on ties.
        if (size > best_size) {
            best_size = size;
            best_root = num_components;
        }
        ++num_components;
    }

    ComponentResult result;
    result.old_to_new.assign(static_cast<std::size_t>(n), -1);
    for (NodeId u = 0; u < n; ++u) {
        if (component[static_cast<std::size_t>(u)] == best_root) {
            result.old_to_new[static_cast<std::size_t>(u)] =
                static_cast<NodeId>(result.new_to_old.size());
            result.new_to_old.push_back(u);
        }
    }
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
        const NodeId su = result.old_to_new[static_cast<std::size_t>(e.source)];
        const NodeId sv = result.old_to_new[static_cast<std::size_t>(e.target)];
        if (su >= 0 && sv >= 0) edges.push_back({su, sv, e.weight});
    }
    result.graph = DirectedGraph(static_cast<NodeId>(result.new_to_old.size()), std::move(edges));
    return result;
}

bool is_weakly_connected(const DirectedGraph& g) {
    if (g.node_count() == 0) return false;
    return largest_weakly_connected_component(g).graph.node_count() == g.node_count();
}

DirectedGraph permute_nodes(const DirectedGraph& g, const std::vector<NodeId>& perm) {
    const NodeId n = g.node_count();
    if (perm.size() != static_cast<std::size_t>(n))
        throw ValidationError("permutation size does not match node count");
    std::vector<bool> hit(static_cast<std::size_t>(n), false);
    for (NodeId p : perm) {
        if (p < 0 || p >= n || hit[static_cast<std::size_t>(p)])
            throw ValidationError("node map is not a bijection");
        hit[static_cast<std::size_t>(p)] = true;
    }
    std::vector<Edge> edges;
    edges.reserve(g.edge_count());
    for (const Edge& e : g.edges())
        edges.push_back({perm[static_cast<std::size_t>(e.source)],
                         perm[static_cast<std::size_t>(e.target)], e.weight});
    return DirectedGraph(n, std::move(edges));
}

namespace {

struct ParsedLine {
    std::vector<std::string> tokens;
};

void split_tokens(const std::string& line, std::vector<std::string>& tokens) {
    tokens.clear();
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) tokens.emplace_back(line.substr(i, j - i));
        i = j;
    }
}

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
    throw ValidationError("line " + std::to_string(line_no) + ": " + what);
}

bool parse_node_index(const std::string& tok, NodeId& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last && out >= 0;
}

double parse_weight(const std::string& tok, std::size_t line_no) {
    try {
        std::size_t pos = 0;
        const double w = std::stod(tok, &pos);
        if (pos != tok.size()) parse_fail(line_no, "malformed weight '" + tok + "'");
        return w;
    } catch (const std::invalid_argument&) {
        parse_fail(line_no, "malformed weight '" + tok + "'");
    } catch (const std::out_of_range&) {
        parse_fail(line_no, "weight out of range '" + tok + "'");
    }
}

template <typename NodeFn>
DirectedGraph parse_edge_lines(std::istream& in, NodeFn&& node_of_token) {
    std::vector<Edge> edges;
    std::string line;
    std::vector<std::string> tokens;
    std::size_t line_no = 0;
    NodeId max_index = -1;
    long long header_nodes = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        split_tokens(line, tokens);
        if (tokens.empty()) continue;
        if (tokens[0][0] == '#') {
            if (tokens[0] == "#nodes" && tokens.size() >= 2) {
                if (header_nodes >= 0) parse_fail(line_no, "duplicate #nodes header");
                try {
                    header_nodes = std::stoll(tokens[1]);
                } catch (...) {
                    parse_fail(line_no, "malformed #nodes header");
                }
                if (header_nodes < 0) parse_fail(line_no, "malformed #nodes header");
            }
            continue;
        }
        if (tokens.size() != 2 && tokens.size() != 3)
            parse_fail(line_no, "expected 'u v' or 'u v w', got " +
                                std::to_string(tokens.size()) + " fields");
        const NodeId u = node_of_token(tokens[0], line_no);
        const NodeId v = node_of_token(tokens[1], line_no);
        const double w = tokens.size() == 3 ? parse_weight(tokens[2], line_no) : 1.0;
        if (u == v) parse_fail(line_no, "self-loop at node '" + tokens[0] + "'");
        if (!(w > 0.0) || !std::isfinite(w))
            parse_fail(line_no, "non-positive or non-finite weight");
        edges.push_back({u, v, w});
        max_index = std::max(max_index, std::max(u, v));
    }
    NodeId node_count = max_index + 1;
    if (header_nodes >= 0) {
        if (header_nodes < static_cast<long long>(node_count))
            throw ValidationError("#nodes header smaller than max node index + 1");
        if (header_nodes > INT32_MAX) throw ValidationError("#nodes header too large");
        node_count = static_cast<NodeId>(header_nodes);
    }
    return DirectedGraph(node_count, std::move(edges));  // duplicate check happens here
}

}  // namespace

DirectedGraph load_edge_list(std::istream& in) {
    return parse_edge_lines(in, [](const std::string& tok, std::size_t line_no) {
        NodeId id;
        if (!parse_node_index(tok, id)) parse_fail(line_no, "malformed node index '" + tok + "'");
        return id;
    });
}

DirectedGraph load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    return load_edge_list(in);
}

LabeledGraph load_labeled_edge_list(std::istream& in) {
    LabeledGraph result;
    std::unordered_map<std::string, NodeId> index_of;
    auto node_of_token = [&](const std::string& tok, std::size_t) {
        auto [it, inserted] = index_of.try_emplace(tok, static_cast<NodeId>(result.labels.size()));
        if (inserted) result.labels.push_back(tok);
        return it->second;
    };
    result.graph = parse_edge_lines(in, node_of_token);
    return result;
}

void write_edge_list(std::ostream& out, const DirectedGraph& g) {
    out << "#nodes " << g.node_count() << "\n";
    char buf[64];
    for (const Edge& e : g.edges()) {
        if (e.weight == 1.0) {
            out << e.source << ' ' << e.target << '\n';
        } else {
            std::snprintf(buf, sizeof(buf), "%.17g", e.weight);
            out << e.source << ' ' << e.target << ' ' << buf << '\n';
        }
    }
}

void write_edge_list_file(const std::string& path, const DirectedGraph& g) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write '" + path + "'");
    write_edge_list(out, g);
}

}  // namespace maglap
