#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "maglap/exact.hpp"

namespace maglap::som {

/// Flattened heat grid (row-major, charges x temperatures) plus an optional
/// model-family label.
struct Fingerprint {
    std::vector<double> values;
    std::string label;
};

Fingerprint make_fingerprint(const HeatGrid& grid, const std::string& label = "");

enum class Normalization { none, zscore };

/// Per-feature statistics recorded at fit time so queries normalize the same
/// way as the training set. Zero-variance features map to 0.
struct NormalizationRecord {
    Normalization mode = Normalization::none;
    std::vector<double> mean;
    std::vector<double> stddev;

    void apply(std::vector<double>& values) const;
};

NormalizationRecord fit_normalization(const std::vector<Fingerprint>& data, Normalization mode);
void apply_normalization(const NormalizationRecord& record, std::vector<Fingerprint>& data);

struct SomConfig {
    int width = 20;
    int height = 20;
    int epochs = 50;
    double learning_rate_start = 0.5;
    double learning_rate_end = 0.01;
    double radius_start = 0.0;  // 0 = max(width, height) / 2
    double radius_end = 1.0;
    std::uint64_t seed = 0;
    bool batch = false;  // batch updates parallelize BMU search per epoch
};

/// Trained map: codebook[y * width + x] is the weight vector of neuron (x, y).
struct SomGrid {
    int width = 0;
    int height = 0;
    int dim = 0;
    std::vector<std::vector<double>> codebook;
    std::vector<std::string> labels;  // after label_neurons; "none" when unvisited
    SomConfig config;
};

/// Classic online SOM with exponentially decaying learning rate and Gaussian
/// neighbourhood; deterministic for a fixed seed (sample order is reshuffled
/// each epoch from the run seed).
SomGrid som_train(const std::vector<Fingerprint>& data, const SomConfig& config);

/// Index of the codebook vector closest to the sample (Euclidean, ties to the
/// smaller index).
std::size_t best_matching_unit(const SomGrid& som, std::span<const double> sample);

/// Majority-vote label per neuron from the samples mapped to it; ties break
/// lexicographically, unvisited neurons get "none".
void label_neurons(SomGrid& som, const std::vector<Fingerprint>& labeled);

/// Mean Euclidean distance from each neuron's codebook to its 4-neighbourhood.
std::vector<double> u_matrix(const SomGrid& som);

/// Mean sample-to-BMU distance.
double quantization_error(const SomGrid& som, const std::vector<Fingerprint>& data);

/// Fraction of samples covered by their BMU's majority label.
double label_purity(const SomGrid& som, const std::vector<Fingerprint>& labeled);

}  // namespace maglap::som
