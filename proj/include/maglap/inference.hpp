#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "maglap/distance.hpp"
#include "maglap/generators.hpp"
#include "maglap/kpm.hpp"

namespace maglap {

/// One-parameter generative model used by distance-based parameter sweeps.
struct ParamModel {
    std::string name;
    std::function<DirectedGraph(double param, std::uint64_t seed)> make;
};

ParamModel er_model(NodeId n);  // param = edge probability
ParamModel ba_model(NodeId n);  // param = out-degree m, rounded to int

/// KPM densities of the target per charge, computed once per sweep.
using TargetDensities = std::map<double, kpm::SpectralDensity>;

TargetDensities target_densities(const DirectedGraph& g, const std::vector<double>& charges,
                                 const kpm::KpmConfig& config, unsigned threads = 0);

/// Mean d-Wasserstein distance between the target densities and
/// n_realizations model draws at `param`: averaged over charges first, then
/// over realizations. Realization r derives its streams from child r of
/// `seed` (graph from child 0, charge qi from child 1 + qi), so results are
/// reproducible for a fixed (seed, config) regardless of threading.
double mean_wasserstein(const TargetDensities& target, const ParamModel& model, double param,
                        int n_realizations, const std::vector<double>& charges,
                        const kpm::KpmConfig& config, std::uint64_t seed, double order = 1.0,
                        unsigned threads = 0);

struct InferenceResult {
    std::vector<double> grid;
    std::vector<double> mean_distance;  // aligned with grid
    // per_charge_distance[param][realization][charge_index]
    std::vector<std::vector<std::vector<double>>> per_charge_distance;
    int best_index = 0;
    double best_param = 0.0;
};

/// Grid search for the parameter whose model draws are closest to the target
/// in mean Wasserstein distance. Ties break toward the smaller parameter.
/// Seed tree: child 0 feeds the target densities, child 1 + i feeds grid
/// point i.
InferenceResult infer_parameter(const DirectedGraph& target, const ParamModel& model,
                                const std::vector<double>& grid, int n_realizations,
                                const std::vector<double>& charges, const kpm::KpmConfig& config,
                                std::uint64_t seed, double order = 1.0, unsigned threads = 0);

}  // namespace maglap
