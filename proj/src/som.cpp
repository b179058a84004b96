#include "maglap/som.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "maglap/errors.hpp"
#include "maglap/parallel.hpp"
#include "maglap/rng.hpp"

namespace maglap::som {

Fingerprint make_fingerprint(const HeatGrid& grid, const std::string& label) {
    if (grid.values.empty()) throw ValidationError("empty heat grid");
    Fingerprint f;
    f.values = grid.values;  // already row-major charges x temperatures
    f.label = label;
    for (double v : f.values)
        if (!std::isfinite(v)) throw ValidationError("non-finite fingerprint entry");
    return f;
}

void NormalizationRecord::apply(std::vector<double>& values) const {
    if (mode == Normalization::none) return;
    if (values.size() != mean.size())
        throw ValidationError("fingerprint length does not match the normalization record");
    for (std::size_t i = 0; i < values.size(); ++i)
        values[i] = stddev[i] > 0.0 ? (values[i] - mean[i]) / stddev[i] : 0.0;
}

NormalizationRecord fit_normalization(const std::vector<Fingerprint>& data, Normalization mode) {
    if (data.empty()) throw ValidationError("no fingerprints");
    const std::size_t dim = data[0].values.size();
    for (const Fingerprint& f : data)
        if (f.values.size() != dim) throw ValidationError("fingerprint lengths differ");
    NormalizationRecord record;
    record.mode = mode;
    if (mode == Normalization::none) return record;
    record.mean.assign(dim, 0.0);
    record.stddev.assign(dim, 0.0);
    for (const Fingerprint& f : data)
        for (std::size_t i = 0; i < dim; ++i) record.mean[i] += f.values[i];
    for (double& m : record.mean) m /= static_cast<double>(data.size());
    for (const Fingerprint& f : data)
        for (std::size_t i = 0; i < dim; ++i) {
            const double d = f.values[i] - record.mean[i];
            record.stddev[i] += d * d;
        }
    for (double& s : record.stddev) s = std::sqrt(s / static_cast<double>(data.size()));
    return record;
}

void apply_normalization(const NormalizationRecord& record, std::vector<Fingerprint>& data) {
    for (Fingerprint& f : data) record.apply(f.values);
}

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
}

std::size_t nearest_codebook(const std::vector<std::vector<double>>& codebook,
                             std::span<const double> sample) {
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < codebook.size(); ++k) {
        const double d = squared_distance(codebook[k], sample);
        if (d < best_dist) {
            best_dist = d;
            best = k;
        }
    }
    return best;
}

}  // namespace

SomGrid som_train(const std::vector<Fingerprint>& data, const SomConfig& config) {
    if (data.empty()) throw ValidationError("cannot train on an empty dataset");
    if (config.width < 2 || config.height < 2)
        throw ValidationError("SOM grid must be at least 2x2");
    if (config.epochs < 1) throw ValidationError("epochs must be at least 1");
    const std::size_t dim = data[0].values.size();
    for (const Fingerprint& f : data)
        if (f.values.size() != dim) throw ValidationError("fingerprint lengths differ");

    SomGrid som;
    som.width = config.width;
    som.height = config.height;
    som.dim = static_cast<int>(dim);
    som.config = config;
    const std::size_t neurons =
        static_cast<std::size_t>(config.width) * static_cast<std::size_t>(config.height);

    Rng rng(config.seed);
    som.codebook.resize(neurons);
    for (auto& w : som.codebook) w = data[rng.next_below(data.size())].values;

    const double radius_start =
        config.radius_start > 0.0 ? config.radius_start
                                  : std::max(config.width, config.height) / 2.0;
    const double radius_end = std::max(config.radius_end, 1e-3);
    std::vector<std::size_t> order(data.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    std::vector<std::size_t> bmus(data.size());
    std::vector<double> accum;
    std::vector<double> weight_sum;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        const double t = config.epochs > 1
                             ? static_cast<double>(epoch) / static_cast<double>(config.epochs - 1)
                             : 1.0;
        const double lr = config.learning_rate_start *
                          std::pow(config.learning_rate_end / config.learning_rate_start, t);
        const double sigma = radius_start * std::pow(radius_end / radius_start, t);
        const double cutoff2 = 9.0 * sigma * sigma;  // 3 sigma

        // Fisher-Yates reshuffle from the run stream.
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[rng.next_below(i)]);

        auto update_factor = [&](std::size_t neuron, std::size_t bmu) {
            const int nx = static_cast<int>(neuron) % config.width;
            const int ny = static_cast<int>(neuron) / config.width;
            const int bx = static_cast<int>(bmu) % config.width;
            const int by = static_cast<int>(bmu) / config.width;
            const double grid2 = static_cast<double>((nx - bx) * (nx - bx) +
                                                     (ny - by) * (ny - by));
            if (grid2 > cutoff2) return 0.0;
            return std::exp(-grid2 / (2.0 * sigma * sigma));
        };

        if (config.batch) {
            parallel_for(data.size(), 0, [&](std::size_t s) {
                bmus[s] = nearest_codebook(som.codebook, data[s].values);
            });
            accum.assign(neurons * dim, 0.0);
            weight_sum.assign(neurons, 0.0);
            for (std::size_t s = 0; s < data.size(); ++s) {
                for (std::size_t k = 0; k < neurons; ++k) {
                    const double h = update_factor(k, bmus[s]);
                    if (h == 0.0) continue;
                    weight_sum[k] += h;
                    for (std::size_t i = 0; i < dim; ++i)
                        accum[k * dim + i] += h * data[s].values[i];
                }
            }
            for (std::size_t k = 0; k < neurons; ++k) {
                if (weight_sum[k] <= 0.0) continue;
                for (std::size_t i = 0; i < dim; ++i)
                    som.codebook[k][i] = accum[k * dim + i] / weight_sum[k];
            }
        } else {
            for (std::size_t s : order) {
                const std::size_t bmu = nearest_codebook(som.codebook, data[s].values);
                for (std::size_t k = 0; k < neurons; ++k) {
                    const double h = update_factor(k, bmu);
                    if (h == 0.0) continue;
                    const double step = lr * h;
                    auto& w = som.codebook[k];
                    for (std::size_t i = 0; i < dim; ++i)
                        w[i] += step * (data[s].values[i] - w[i]);
                }
            }
        }
    }
    return som;
}

std::size_t best_matching_unit(const SomGrid& som, std::span<const double> sample) {
    if (sample.size() != static_cast<std::size_t>(som.dim))
        throw ValidationError("sample length does not match the codebook");
    return nearest_codebook(som.codebook, sample);
}

void label_neurons(SomGrid& som, const std::vector<Fingerprint>& labeled) {
    if (labeled.empty()) throw ValidationError("no labeled fingerprints");
    const std::size_t neurons = som.codebook.size();
    std::vector<std::map<std::string, int>> votes(neurons);
    for (const Fingerprint& f : labeled) {
        if (f.label.empty()) throw ValidationError("fingerprint without a label");
        ++votes[best_matching_unit(som, f.values)][f.label];
    }
    som.labels.assign(neurons, "none");
    for (std::size_t k = 0; k < neurons; ++k) {
        int best = 0;
        for (const auto& [label, count] : votes[k]) {
            // std::map iterates labels in lexicographic order, so ties keep
            // the lexicographically smallest label.
            if (count > best) {
                best = count;
                som.labels[k] = label;
            }
        }
    }
}

std::vector<double> u_matrix(const SomGrid& som) {
    const int w = som.width, h = som.height;
    std::vector<double> u(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0.0);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const std::size_t k = static_cast<std::size_t>(y * w + x);
            double sum = 0.0;
            int count = 0;
            const int dx[4] = {1, -1, 0, 0};
            const int dy[4] = {0, 0, 1, -1};
            for (int d = 0; d < 4; ++d) {
                const int nx = x + dx[d], ny = y + dy[d];
                if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                sum += std::sqrt(squared_distance(
                    som.codebook[k], som.codebook[static_cast<std::size_t>(ny * w + nx)]));
                ++count;
            }
            u[k] = count > 0 ? sum / count : 0.0;
        }
    return u;
}

double quantization_error(const SomGrid& som, const std::vector<Fingerprint>& data) {
    if (data.empty()) throw ValidationError("no fingerprints");
    double sum = 0.0;
    for (const Fingerprint& f : data)
        sum += std::sqrt(squared_distance(som.codebook[best_matching_unit(som, f.values)],
                                          f.values));
    return sum / static_cast<double>(data.size());
}

double label_purity(const SomGrid& som, const std::vector<Fingerprint>& labeled) {
    if (labeled.empty()) throw ValidationError("no labeled fingerprints");
    std::vector<std::map<std::string, int>> votes(som.codebook.size());
    for (const Fingerprint& f : labeled)
        ++votes[best_matching_unit(som, f.values)][f.label];
    int covered = 0;
    for (const auto& neuron_votes : votes) {
        int best = 0;
        for (const auto& [label, count] : neuron_votes) best = std::max(best, count);
        covered += best;
    }
    return static_cast<double>(covered) / static_cast<double>(labeled.size());
}

}  // namespace maglap::som
