#include "maglap/kpm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "maglap/errors.hpp"
#include "maglap/parallel.hpp"
#include "maglap/rng.hpp"

namespace maglap::kpm {

namespace {

void require_temperature(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw ValidationError("temperature must be positive");
}

}  // namespace

std::string to_string(KernelKind kernel) {
    return kernel == KernelKind::jackson ? "jackson" : "none";
}

int KpmConfig::resolved_grid_points() const {
    if (grid_points > 0) return grid_points;
    return std::max(2 * num_moments, 256);
}

void KpmConfig::validate() const {
    if (num_moments < 2) throw ValidationError("num_moments must be at least 2");
    if (num_random_vectors < 1 && !exact_trace)
        throw ValidationError("num_random_vectors must be at least 1");
    if (!(safety_margin > 0.0) || safety_margin >= 0.5)
        throw ValidationError("safety_margin must lie in (0, 0.5)");
}

AffineMap rescale_map(double lambda_lo, double lambda_hi, double epsilon) {
    if (!(lambda_hi > lambda_lo))
        throw ValidationError("degenerate spectral enclosure; density is an exact delta");
    if (!(epsilon >= 0.0) || epsilon >= 1.0) throw ValidationError("invalid safety margin");
    AffineMap map;
    map.scale = (lambda_hi - lambda_lo) / (2.0 - 2.0 * epsilon);
    map.shift = (lambda_hi + lambda_lo) / 2.0;
    return map;
}

std::vector<double> jackson_coefficients(int num_moments) {
    if (num_moments < 1) throw ValidationError("num_moments must be positive");
    std::vector<double> g(static_cast<std::size_t>(num_moments));
    const double denom = static_cast<double>(num_moments) + 1.0;
    const double cot = std::cos(std::numbers::pi / denom) / std::sin(std::numbers::pi / denom);
    g[0] = 1.0;
    for (int m = 1; m < num_moments; ++m) {
        const double x = std::numbers::pi * static_cast<double>(m) / denom;
        g[static_cast<std::size_t>(m)] =
            ((denom - static_cast<double>(m)) * std::cos(x) + std::sin(x) * cot) / denom;
    }
    return g;
}

void jackson_damp(std::vector<double>& moments) {
    const auto g = jackson_coefficients(static_cast<int>(moments.size()));
    for (std::size_t m = 0; m < moments.size(); ++m) moments[m] *= g[m];
}

SpectralDensity dos_estimate(const std::vector<double>& damped_moments, const AffineMap& map,
                             int grid_points, double lambda_lo, double lambda_hi) {
    if (damped_moments.empty()) throw ValidationError("no moments");
    if (grid_points < 1) throw ValidationError("grid_points must be positive");
    const std::size_t n = static_cast<std::size_t>(grid_points);
    const std::size_t m_count = damped_moments.size();

    // At Chebyshev nodes the 1/sqrt(1-x^2) singularity cancels against the
    // quadrature weight: p_k = (mu_0 + 2 sum_m mu_m cos(m theta_k)) / n.
    SpectralDensity density;
    density.support.resize(n);
    density.weights.resize(n);
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double theta =
            std::numbers::pi * (static_cast<double>(k) + 0.5) / static_cast<double>(n);
        double p = damped_moments[0];
        for (std::size_t m = 1; m < m_count; ++m)
            p += 2.0 * damped_moments[m] * std::cos(static_cast<double>(m) * theta);
        p /= static_cast<double>(n);
        if (p < 0.0) p = 0.0;
        // cos(theta) descends in k; fill back to front for ascending support.
        const std::size_t slot = n - 1 - k;
        const double lambda = map.from_unit(std::cos(theta));
        density.support[slot] = std::clamp(lambda, lambda_lo, lambda_hi);
        density.weights[slot] = p;
        total += p;
    }
    if (!(total > 0.0))
        throw NumericError("density weights vanished after clipping; check KPM configuration");
    for (double& w : density.weights) w /= total;
    return density;
}

SpectralDensity spectral_density(const MagneticOperator& op, const KpmConfig& config,
                                 unsigned threads) {
    config.validate();
    const auto [lo, hi] = op.spectral_bounds();
    if (!(hi > lo)) {
        SpectralDensity delta;
        delta.support = {lo};
        delta.weights = {1.0};
        return delta;
    }
    const AffineMap map = rescale_map(lo, hi, config.safety_margin);
    const Rescaled<MagneticOperator> rescaled(op, map);
    std::vector<double> moments =
        config.exact_trace
            ? exact_chebyshev_moments(rescaled, config.num_moments, threads)
            : chebyshev_moments(rescaled, config.num_moments, config.num_random_vectors,
                                config.seed, threads);
    if (config.kernel == KernelKind::jackson) jackson_damp(moments);
    return dos_estimate(moments, map, config.resolved_grid_points(), lo, hi);
}

namespace {

struct BoltzmannMoments {
    double mean = 0.0;
    double variance = 0.0;
    double log_norm = 0.0;  // ln sum_i p_i exp(-(lambda_i - lambda_min)/T)
    double lambda_min = 0.0;
};

BoltzmannMoments boltzmann_moments(const SpectralDensity& density, double temperature) {
    require_temperature(temperature);
    if (density.size() == 0) throw ValidationError("empty density");
    BoltzmannMoments out;
    out.lambda_min = density.support.front();
    double norm = 0.0, mean = 0.0;
    for (std::size_t i = 0; i < density.size(); ++i) {
        const double w =
            density.weights[i] * std::exp(-(density.support[i] - out.lambda_min) / temperature);
        norm += w;
        mean += w * density.support[i];
    }
    mean /= norm;
    double variance = 0.0;
    for (std::size_t i = 0; i < density.size(); ++i) {
        const double w =
            density.weights[i] * std::exp(-(density.support[i] - out.lambda_min) / temperature);
        const double d = density.support[i] - mean;
        variance += w * d * d;
    }
    out.mean = mean;
    out.variance = variance / norm;
    out.log_norm = std::log(norm);
    return out;
}

}  // namespace

double trace_function(const SpectralDensity& density, std::int64_t node_count, TraceFunction f,
                      double temperature) {
    if (density.size() == 0) throw ValidationError("empty density");
    const double n = static_cast<double>(node_count);
    switch (f) {
        case TraceFunction::partition: {
            require_temperature(temperature);
            double z = 0.0;
            for (std::size_t i = 0; i < density.size(); ++i)
                z += density.weights[i] * std::exp(-density.support[i] / temperature);
            return n * z;
        }
        case TraceFunction::estrada: {
            double sum = 0.0;
            for (std::size_t i = 0; i < density.size(); ++i)
                sum += density.weights[i] * std::exp(-density.support[i]);
            return n * sum;
        }
        case TraceFunction::mean: {
            double sum = 0.0;
            for (std::size_t i = 0; i < density.size(); ++i)
                sum += density.weights[i] * density.support[i];
            return sum;
        }
        case TraceFunction::second_moment: {
            double sum = 0.0;
            for (std::size_t i = 0; i < density.size(); ++i)
                sum += density.weights[i] * density.support[i] * density.support[i];
            return sum;
        }
        case TraceFunction::entropy_summand: {
            // S = <lambda>/T + ln Z for the Boltzmann ensemble over n levels.
            const BoltzmannMoments bm = boltzmann_moments(density, temperature);
            const double log_z = std::log(n) + bm.log_norm - bm.lambda_min / temperature;
            return bm.mean / temperature + log_z;
        }
    }
    throw ValidationError("unknown trace function");
}

double specific_heat(const SpectralDensity& density, double temperature) {
    const BoltzmannMoments bm = boltzmann_moments(density, temperature);
    return bm.variance / (temperature * temperature);
}

HeatGrid kpm_heat_grid(const DirectedGraph& g, const std::vector<double>& charges,
                       const std::vector<double>& temperatures, const KpmConfig& config,
                       OperatorKind kind, unsigned threads) {
    if (charges.empty() || temperatures.empty()) throw ValidationError("grids must be non-empty");
    config.validate();
    if (!is_weakly_connected(g))
        throw NotWeaklyConnected("KPM heat grid requires a weakly connected graph");
    const SymmetrizedGraph sg = symmetrize(g);
    HeatGrid grid;
    grid.charges = charges;
    grid.temperatures = temperatures;
    grid.kind = to_string(kind);
    grid.values.assign(charges.size() * temperatures.size(), 0.0);
    parallel_for(charges.size(), threads, [&](std::size_t qi) {
        const MagneticOperator op = kind == OperatorKind::normalized
                                        ? MagneticOperator::normalized(sg, charges[qi])
                                        : MagneticOperator::combinatorial(sg, charges[qi]);
        KpmConfig per_charge = config;
        per_charge.seed = split_seed(config.seed, qi);
        // probes already run in the outer loop's thread; keep inner serial
        const SpectralDensity density = spectral_density(op, per_charge, 1);
        for (std::size_t ti = 0; ti < temperatures.size(); ++ti)
            grid.at(qi, ti) = specific_heat(density, temperatures[ti]);
    });
    return grid;
}

}  // namespace maglap::kpm
