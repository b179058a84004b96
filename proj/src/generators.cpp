#include "maglap/generators.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "maglap/errors.hpp"
#include "maglap/rng.hpp"

namespace maglap {

namespace {

std::uint64_t ordered_key(NodeId u, NodeId v) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
}

void require(bool cond, const std::string& what) {
    if (!cond) throw ValidationError(what);
}

void require_probability(double p, const std::string& name) {
    require(p >= 0.0 && p <= 1.0 && std::isfinite(p), name + " must lie in [0, 1]");
}

/// Bernoulli(p) sweep over `slots` consecutive indices via geometric gaps;
/// calls emit(slot) for each success.
template <typename Emit>
void bernoulli_skip(std::uint64_t slots, double p, Rng& rng, Emit&& emit) {
    if (p <= 0.0 || slots == 0) return;
    if (p >= 1.0) {
        for (std::uint64_t s = 0; s < slots; ++s) emit(s);
        return;
    }
    const double log1mp = std::log1p(-p);
    std::uint64_t s = 0;
    while (true) {
        const double u = rng.next_double();
        const double gap = std::floor(std::log1p(-u) / log1mp);
        if (gap >= static_cast<double>(slots - s)) break;
        s += static_cast<std::uint64_t>(gap);
        emit(s);
        if (++s >= slots) break;
    }
}

}  // namespace

DirectedGraph erdos_renyi_directed(NodeId n, double p, std::uint64_t seed) {
    require(n >= 1, "n must be at least 1");
    require_probability(p, "p");
    std::vector<Edge> edges;
    if (n > 1) {
        edges.reserve(static_cast<std::size_t>(p * static_cast<double>(n) * (n - 1) * 1.05) + 16);
        Rng rng(seed);
        const std::uint64_t row = static_cast<std::uint64_t>(n) - 1;
        bernoulli_skip(static_cast<std::uint64_t>(n) * row, p, rng, [&](std::uint64_t s) {
            const NodeId u = static_cast<NodeId>(s / row);
            const NodeId r = static_cast<NodeId>(s % row);
            const NodeId v = r < u ? r : r + 1;
            edges.push_back({u, v, 1.0});
        });
    }
    return DirectedGraph(n, std::move(edges));
}

DirectedGraph barabasi_albert_directed(NodeId n, NodeId m, std::uint64_t seed) {
    require(m >= 1, "m must be at least 1");
    require(n > m, "n must exceed m");
    Rng rng(seed);
    std::vector<Edge> edges;
    // One entry per node at creation (the +1) plus one per received edge, so a
    // uniform pick from `attachment` is a draw proportional to in-degree + 1.
    std::vector<NodeId> attachment;
    const NodeId core = m + 1;
    for (NodeId u = 0; u < core; ++u) attachment.push_back(u);
    for (NodeId u = 0; u < core; ++u)
        for (NodeId v = 0; v < core; ++v)
            if (u != v) {
                edges.push_back({u, v, 1.0});
                attachment.push_back(v);
            }
    std::vector<NodeId> chosen;
    for (NodeId t = core; t < n; ++t) {
        chosen.clear();
        while (static_cast<NodeId>(chosen.size()) < m) {
            const NodeId cand = attachment[rng.next_below(attachment.size())];
            if (std::find(chosen.begin(), chosen.end(), cand) == chosen.end())
                chosen.push_back(cand);
        }
        for (NodeId v : chosen) {
            edges.push_back({t, v, 1.0});
            attachment.push_back(v);
        }
        attachment.push_back(t);
    }
    return DirectedGraph(n, std::move(edges));
}

DirectedGraph bollobas_scale_free(NodeId n, const ScaleFreeParams& params, std::uint64_t seed) {
    require(n >= 3, "n must be at least 3 (growth starts from a 3-cycle)");
    require(params.alpha >= 0 && params.beta >= 0 && params.gamma >= 0,
            "event probabilities must be non-negative");
    require(std::abs(params.alpha + params.beta + params.gamma - 1.0) <= 1e-12,
            "alpha + beta + gamma must sum to 1");
    require(params.delta_in >= 0 && params.delta_out >= 0, "delta_in, delta_out must be >= 0");

    Rng rng(seed);
    std::vector<Edge> edges{{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}};
    std::vector<double> in_deg{1, 1, 1}, out_deg{1, 1, 1};
    std::unordered_set<std::uint64_t> present{ordered_key(0, 1), ordered_key(1, 2),
                                              ordered_key(2, 0)};
    NodeId nodes = 3;

    auto pick = [&](const std::vector<double>& deg, double delta) {
        const double total =
            static_cast<double>(edges.size()) + delta * static_cast<double>(nodes);
        double x = rng.next_double() * total;
        for (NodeId i = 0; i < nodes; ++i) {
            x -= deg[static_cast<std::size_t>(i)] + delta;
            if (x < 0) return i;
        }
        return static_cast<NodeId>(nodes - 1);
    };
    auto add_edge = [&](NodeId u, NodeId v) {
        edges.push_back({u, v, 1.0});
        present.insert(ordered_key(u, v));
        out_deg[static_cast<std::size_t>(u)] += 1;
        in_deg[static_cast<std::size_t>(v)] += 1;
    };
    auto grow = [&](NodeId& fresh) {
        fresh = nodes++;
        in_deg.push_back(0);
        out_deg.push_back(0);
    };

    while (nodes < n) {
        const double x = rng.next_double();
        if (x < params.alpha) {
            const NodeId w = pick(in_deg, params.delta_in);
            NodeId v;
            grow(v);
            add_edge(v, w);
        } else if (x < params.alpha + params.beta) {
            bool placed = false;
            for (int attempt = 0; attempt < 200 && !placed; ++attempt) {
                const NodeId v = pick(out_deg, params.delta_out);
                const NodeId w = pick(in_deg, params.delta_in);
                if (v != w && !present.count(ordered_key(v, w))) {
                    add_edge(v, w);
                    placed = true;
                }
            }
            if (!placed) {
                // Saturated neighbourhoods; grow instead so the process cannot stall.
                const NodeId w = pick(in_deg, params.delta_in);
                NodeId v;
                grow(v);
                add_edge(v, w);
            }
        } else {
            const NodeId v = pick(out_deg, params.delta_out);
            NodeId w;
            grow(w);
            add_edge(v, w);
        }
    }
    return DirectedGraph(n, std::move(edges));
}

DirectedGraph watts_strogatz_directed(NodeId n, NodeId k, double beta_rewire, std::uint64_t seed) {
    require(k >= 2, "k must be at least 2");
    require(k % 2 == 0, "k must be even");
    require(n > k, "n must exceed k");
    require_probability(beta_rewire, "beta");

    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(k));
    std::vector<std::unordered_set<NodeId>> targets(static_cast<std::size_t>(n));
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = 1; j <= k / 2; ++j) {
            const NodeId fwd = static_cast<NodeId>((i + j) % n);
            const NodeId bwd = static_cast<NodeId>((i - j + n) % n);
            edges.push_back({i, fwd, 1.0});
            targets[static_cast<std::size_t>(i)].insert(fwd);
            edges.push_back({i, bwd, 1.0});
            targets[static_cast<std::size_t>(i)].insert(bwd);
        }
    }
    Rng rng(seed);
    for (Edge& e : edges) {
        if (rng.next_double() >= beta_rewire) continue;
        auto& row = targets[static_cast<std::size_t>(e.source)];
        if (row.size() >= static_cast<std::size_t>(n) - 1) continue;  // saturated row
        NodeId t;
        do {
            t = static_cast<NodeId>(rng.next_below(static_cast<std::uint64_t>(n)));
        } while (t == e.source || row.count(t));
        row.erase(e.target);
        row.insert(t);
        e.target = t;
    }
    return DirectedGraph(n, std::move(edges));
}

DirectedGraph cyclic_sbm(NodeId n_blocks, NodeId block_size, double p_within, double p_forward,
                         std::uint64_t seed) {
    require(n_blocks >= 3, "n_blocks must be at least 3");
    require(block_size >= 2, "block_size must be at least 2");
    require_probability(p_within, "p_within");
    require_probability(p_forward, "p_forward");

    const NodeId nc = block_size;
    std::vector<Edge> edges;
    for (NodeId b = 0; b < n_blocks; ++b) {
        Rng rng(split_seed(seed, static_cast<std::uint64_t>(b)));
        const NodeId base = b * nc;
        const std::uint64_t row = static_cast<std::uint64_t>(nc) - 1;
        bernoulli_skip(static_cast<std::uint64_t>(nc) * row, p_within, rng, [&](std::uint64_t s) {
            const NodeId u = static_cast<NodeId>(s / row);
            const NodeId r = static_cast<NodeId>(s % row);
            const NodeId v = r < u ? r : r + 1;
            edges.push_back({base + u, base + v, 1.0});
        });
    }
    for (NodeId b = 0; b < n_blocks; ++b) {
        Rng rng(split_seed(seed, static_cast<std::uint64_t>(n_blocks + b)));
        const NodeId base = b * nc;
        const NodeId next = ((b + 1) % n_blocks) * nc;
        bernoulli_skip(static_cast<std::uint64_t>(nc) * static_cast<std::uint64_t>(nc), p_forward,
                       rng, [&](std::uint64_t s) {
                           const NodeId u = static_cast<NodeId>(s / static_cast<std::uint64_t>(nc));
                           const NodeId v = static_cast<NodeId>(s % static_cast<std::uint64_t>(nc));
                           edges.push_back({base + u, next + v, 1.0});
                       });
    }
    return DirectedGraph(n_blocks * nc, std::move(edges));
}

DirectedGraph uniform_modular(NodeId n_blocks, NodeId block_size) {
    require(n_blocks >= 3, "n_blocks must be at least 3");
    require(block_size >= 2, "block_size must be at least 2");
    const NodeId nc = block_size;
    std::vector<Edge> edges;
    for (NodeId b = 0; b < n_blocks; ++b) {
        const NodeId base = b * nc;
        for (NodeId u = 0; u < nc; ++u)
            for (NodeId v = u + 1; v < nc; ++v) {
                edges.push_back({base + u, base + v, 1.0});
                edges.push_back({base + v, base + u, 1.0});
            }
    }
    for (NodeId b = 0; b < n_blocks; ++b) {
        const NodeId base = b * nc;
        const NodeId next = ((b + 1) % n_blocks) * nc;
        for (NodeId u = 0; u < nc; ++u)
            for (NodeId v = 0; v < nc; ++v) edges.push_back({base + u, next + v, 1.0});
    }
    return DirectedGraph(n_blocks * nc, std::move(edges));
}

namespace {

double param(const GeneratorSpec& spec, const std::string& key) {
    const auto it = spec.parameters.find(key);
    if (it == spec.parameters.end())
        throw ValidationError("missing parameter '" + key + "' for family " + spec.family);
    return it->second;
}

double param_or(const GeneratorSpec& spec, const std::string& key, double fallback) {
    const auto it = spec.parameters.find(key);
    return it == spec.parameters.end() ? fallback : it->second;
}

NodeId int_param(const GeneratorSpec& spec, const std::string& key) {
    const double v = param(spec, key);
    const NodeId i = static_cast<NodeId>(std::llround(v));
    if (std::abs(v - static_cast<double>(i)) > 1e-9)
        throw ValidationError("parameter '" + key + "' must be an integer");
    return i;
}

}  // namespace

DirectedGraph generate(const GeneratorSpec& spec) {
    if (spec.family == "er")
        return erdos_renyi_directed(int_param(spec, "n"), param(spec, "p"), spec.seed);
    if (spec.family == "ba")
        return barabasi_albert_directed(int_param(spec, "n"), int_param(spec, "m"), spec.seed);
    if (spec.family == "sf") {
        ScaleFreeParams p;
        p.alpha = param_or(spec, "alpha", p.alpha);
        p.beta = param_or(spec, "beta", p.beta);
        p.gamma = param_or(spec, "gamma", p.gamma);
        p.delta_in = param_or(spec, "delta_in", p.delta_in);
        p.delta_out = param_or(spec, "delta_out", p.delta_out);
        return bollobas_scale_free(int_param(spec, "n"), p, spec.seed);
    }
    if (spec.family == "ws")
        return watts_strogatz_directed(int_param(spec, "n"), int_param(spec, "k"),
                                       param(spec, "beta"), spec.seed);
    if (spec.family == "sbm")
        return cyclic_sbm(int_param(spec, "nf"), int_param(spec, "nc"), param(spec, "pc"),
                          param(spec, "pd"), spec.seed);
    if (spec.family == "uniform")
        return uniform_modular(int_param(spec, "nf"), int_param(spec, "nc"));
    throw ValidationError("unknown generator family '" + spec.family + "'");
}

}  // namespace maglap
