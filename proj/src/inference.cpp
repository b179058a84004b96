#include "maglap/inference.hpp"

#include <cmath>

#include "maglap/errors.hpp"
#include "maglap/parallel.hpp"
#include "maglap/rng.hpp"

namespace maglap {

ParamModel er_model(NodeId n) {
    return {"er", [n](double p, std::uint64_t seed) { return erdos_renyi_directed(n, p, seed); }};
}

ParamModel ba_model(NodeId n) {
    return {"ba", [n](double m, std::uint64_t seed) {
                const NodeId mi = static_cast<NodeId>(std::llround(m));
                if (std::abs(m - static_cast<double>(mi)) > 1e-9)
                    throw ValidationError("BA out-degree parameter must be an integer");
                return barabasi_albert_directed(n, mi, seed);
            }};
}

namespace {

kpm::SpectralDensity density_of(const SymmetrizedGraph& sg, double charge,
                                const kpm::KpmConfig& config, std::uint64_t seed) {
    kpm::KpmConfig local = config;
    local.seed = seed;
    const MagneticOperator op = MagneticOperator::normalized(sg, charge);
    return kpm::spectral_density(op, local, 1);
}

}  // namespace

TargetDensities target_densities(const DirectedGraph& g, const std::vector<double>& charges,
                                 const kpm::KpmConfig& config, unsigned threads) {
    if (charges.empty()) throw ValidationError("charge set must be non-empty");
    const SymmetrizedGraph sg = symmetrize(largest_weakly_connected_component(g).graph);
    std::vector<kpm::SpectralDensity> densities(charges.size());
    parallel_for(charges.size(), threads, [&](std::size_t qi) {
        densities[qi] = density_of(sg, charges[qi], config, split_seed(config.seed, qi));
    });
    TargetDensities out;
    for (std::size_t qi = 0; qi < charges.size(); ++qi) out[charges[qi]] = densities[qi];
    return out;
}

double mean_wasserstein(const TargetDensities& target, const ParamModel& model, double param,
                        int n_realizations, const std::vector<double>& charges,
                        const kpm::KpmConfig& config, std::uint64_t seed, double order,
                        unsigned threads) {
    if (charges.empty()) throw ValidationError("charge set must be non-empty");
    if (n_realizations < 1) throw ValidationError("n_realizations must be at least 1");
    for (double q : charges)
        if (!target.count(q)) throw ValidationError("target density missing for a charge");

    std::vector<double> per_realization(static_cast<std::size_t>(n_realizations), 0.0);
    parallel_for(static_cast<std::size_t>(n_realizations), threads, [&](std::size_t r) {
        const std::uint64_t realization_seed = split_seed(seed, r);
        const DirectedGraph g = model.make(param, split_seed(realization_seed, 0));
        const SymmetrizedGraph sg =
            symmetrize(largest_weakly_connected_component(g).graph);
        double sum = 0.0;
        for (std::size_t qi = 0; qi < charges.size(); ++qi) {
            const kpm::SpectralDensity density =
                density_of(sg, charges[qi], config, split_seed(realization_seed, 1 + qi));
            sum += wasserstein_1d(target.at(charges[qi]), density, order);
        }
        per_realization[r] = sum / static_cast<double>(charges.size());
    });
    double mean = 0.0;
    for (double d : per_realization) mean += d;
    return mean / static_cast<double>(n_realizations);
}

InferenceResult infer_parameter(const DirectedGraph& target, const ParamModel& model,
                                const std::vector<double>& grid, int n_realizations,
                                const std::vector<double>& charges, const kpm::KpmConfig& config,
                                std::uint64_t seed, double order, unsigned threads) {
    if (grid.empty()) throw ValidationError("parameter grid must be non-empty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw ValidationError("parameter grid must be strictly increasing");

    kpm::KpmConfig target_config = config;
    target_config.seed = split_seed(seed, 0);
    const TargetDensities targets = target_densities(target, charges, target_config, threads);

    InferenceResult result;
    result.grid = grid;
    result.mean_distance.assign(grid.size(), 0.0);
    result.per_charge_distance.assign(
        grid.size(), std::vector<std::vector<double>>(
                         static_cast<std::size_t>(n_realizations),
                         std::vector<double>(charges.size(), 0.0)));

    for (std::size_t pi = 0; pi < grid.size(); ++pi) {
        const std::uint64_t param_seed = split_seed(seed, 1 + pi);
        parallel_for(static_cast<std::size_t>(n_realizations), threads, [&](std::size_t r) {
            const std::uint64_t realization_seed = split_seed(param_seed, r);
            const DirectedGraph g = model.make(grid[pi], split_seed(realization_seed, 0));
            const SymmetrizedGraph sg =
                symmetrize(largest_weakly_connected_component(g).graph);
            for (std::size_t qi = 0; qi < charges.size(); ++qi) {
                const kpm::SpectralDensity density =
                    density_of(sg, charges[qi], config, split_seed(realization_seed, 1 + qi));
                result.per_charge_distance[pi][r][qi] =
                    wasserstein_1d(targets.at(charges[qi]), density, order);
            }
        });
        double mean = 0.0;
        for (int r = 0; r < n_realizations; ++r) {
            double q_mean = 0.0;
            for (double d : result.per_charge_distance[pi][static_cast<std::size_t>(r)])
                q_mean += d;
            mean += q_mean / static_cast<double>(charges.size());
        }
        result.mean_distance[pi] = mean / static_cast<double>(n_realizations);
    }

    result.best_index = 0;
    for (std::size_t pi = 1; pi < grid.size(); ++pi)
        if (result.mean_distance[pi] < result.mean_distance[static_cast<std::size_t>(result.best_index)])
            result.best_index = static_cast<int>(pi);  // strict < keeps the smaller parameter on ties
    result.best_param = grid[static_cast<std::size_t>(result.best_index)];
    return result;
}

}  // namespace maglap
