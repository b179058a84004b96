#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "maglap/errors.hpp"
#include "maglap/exact.hpp"
#include "maglap/graph.hpp"
#include "maglap/magnetic_operator.hpp"
#include "maglap/parallel.hpp"
#include "maglap/rng.hpp"

namespace maglap::kpm {

enum class KernelKind { jackson, none };

std::string to_string(KernelKind kernel);

struct KpmConfig {
    int num_moments = 100;        // Chebyshev expansion order M
    int num_random_vectors = 20;  // Hutchinson probes R
    int grid_points = 0;          // density evaluation nodes; 0 = max(2M, 256)
    KernelKind kernel = KernelKind::jackson;
    std::uint64_t seed = 0;
    double safety_margin = 0.01;  // rescale epsilon
    bool exact_trace = false;     // probe with every basis vector (small operators)

    int resolved_grid_points() const;
    void validate() const;
};

/// Discrete probability measure on the real line: ascending support in
/// original (un-rescaled) units, simplex weights.
struct SpectralDensity {
    std::vector<double> support;
    std::vector<double> weights;

    std::size_t size() const { return support.size(); }
};

/// x = (lambda - shift) / scale maps the spectrum into [-1+eps, 1-eps].
struct AffineMap {
    double scale = 1.0;
    double shift = 0.0;

    double to_unit(double lambda) const { return (lambda - shift) / scale; }
    double from_unit(double x) const { return scale * x + shift; }
};

/// Map built from a certified enclosure. Degenerate enclosures (single-point
/// spectra) are the caller's short-circuit case and throw here.
AffineMap rescale_map(double lambda_lo, double lambda_hi, double epsilon);

/// View of an operator shifted and scaled into the Chebyshev interval.
template <typename Op>
class Rescaled {
public:
    Rescaled(const Op& op, const AffineMap& map) : op_(&op), map_(map) {}

    NodeId dimension() const { return op_->dimension(); }
    void apply(std::span<const std::complex<double>> x,
               std::span<std::complex<double>> y) const {
        op_->apply(x, y);
        const double inv = 1.0 / map_.scale;
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = (y[i] - map_.shift * x[i]) * inv;
    }

private:
    const Op* op_;
    AffineMap map_;
};

namespace detail {

/// Moments of one probe: out[m] = Re<v, T_m(H) v> / n via the three-term
/// recurrence w_{m+1} = 2 H w_m - w_{m-1}. out[0] is pinned to 1.
template <typename Op>
void probe_moments(const Op& op, std::span<const std::complex<double>> probe, int num_moments,
                   std::span<double> out) {
    using cd = std::complex<double>;
    const std::size_t n = probe.size();
    const double inv_n = 1.0 / static_cast<double>(n);
    std::vector<cd> prev(probe.begin(), probe.end());  // T_0 v
    std::vector<cd> cur(n), next(n);
    op.apply(prev, cur);  // T_1 v

    out[0] = 1.0;
    for (int m = 1; m < num_moments; ++m) {
        cd dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += std::conj(probe[i]) * cur[i];
        const double mu = dot.real() * inv_n;
        if (!std::isfinite(mu) || std::abs(mu) > 4.0)
            throw NumericError(
                "Chebyshev moment out of range; spectral bounds were not certified");
        out[static_cast<std::size_t>(m)] = mu;
        if (m + 1 == num_moments) break;
        op.apply(cur, next);
        for (std::size_t i = 0; i < n; ++i) {
            const cd w = 2.0 * next[i] - prev[i];
            prev[i] = cur[i];
            cur[i] = w;
        }
    }
}

}  // namespace detail

/// Hutchinson-averaged Chebyshev moments mu_m = (1/R) sum_r Re<v_r, T_m v_r>/n
/// for m in [0, M). Probes have i.i.d. entries on the complex unit circle,
/// which makes the estimate unbiased for Hermitian operators and exact on
/// diagonal ones; mu_0 is 1 by construction. Probe r consumes child stream r
/// of `seed` and probes are averaged in index order, so the result does not
/// depend on the thread count. Non-finite or out-of-range moments abort with
/// NumericError (the symptom of an uncertified enclosure).
template <typename Op>
std::vector<double> chebyshev_moments(const Op& rescaled, int num_moments, int num_probes,
                                      std::uint64_t seed, unsigned threads = 0) {
    if (num_moments < 1) throw ValidationError("num_moments must be positive");
    if (num_probes < 1) throw ValidationError("num_probes must be positive");
    const std::size_t m = static_cast<std::size_t>(num_moments);
    const std::size_t probes = static_cast<std::size_t>(num_probes);
    std::vector<double> per_probe(probes * m, 0.0);
    parallel_for(probes, threads, [&](std::size_t r) {
        std::vector<std::complex<double>> probe(static_cast<std::size_t>(rescaled.dimension()));
        Rng rng(split_seed(seed, r));
        for (auto& entry : probe) {
            const double angle = 2.0 * std::numbers::pi * rng.next_double();
            entry = {std::cos(angle), std::sin(angle)};
        }
        detail::probe_moments(rescaled, probe, num_moments,
                              std::span<double>(per_probe.data() + r * m, m));
    });
    std::vector<double> moments(m, 0.0);
    for (std::size_t r = 0; r < probes; ++r)
        for (std::size_t i = 0; i < m; ++i) moments[i] += per_probe[r * m + i];
    const double inv_r = 1.0 / static_cast<double>(probes);
    for (double& mu : moments) mu *= inv_r;
    moments[0] = 1.0;
    return moments;
}

/// Exact moments (1/n) sum_i [T_m(H)]_ii via one recurrence per basis vector.
template <typename Op>
std::vector<double> exact_chebyshev_moments(const Op& rescaled, int num_moments,
                                            unsigned threads = 0) {
    const std::size_t n = static_cast<std::size_t>(rescaled.dimension());
    if (n == 0) throw ValidationError("empty operator");
    const std::size_t m = static_cast<std::size_t>(num_moments);
    std::vector<double> per_basis(n * m, 0.0);
    parallel_for(n, threads, [&](std::size_t i) {
        std::vector<std::complex<double>> probe(n, 0.0);
        probe[i] = 1.0;
        detail::probe_moments(rescaled, probe, num_moments,
                              std::span<double>(per_basis.data() + i * m, m));
    });
    std::vector<double> moments(m, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < m; ++k) moments[k] += per_basis[i * m + k];
    // probe_moments divides each diagonal term by n already, so the sum over
    // the basis is the normalized trace; mu_0 sums to exactly 1.
    moments[0] = 1.0;
    return moments;
}

/// Jackson damping factors g_0..g_{M-1}; g_0 = 1.
std::vector<double> jackson_coefficients(int num_moments);

/// In-place mu_m <- g_m mu_m.
void jackson_damp(std::vector<double>& moments);

/// Density reconstruction at Chebyshev nodes x_k = cos(pi (k+1/2)/n) with the
/// analytic quadrature weights, negative weights clipped, support mapped back
/// through the affine map and clamped to the certified enclosure.
SpectralDensity dos_estimate(const std::vector<double>& damped_moments, const AffineMap& map,
                             int grid_points, double lambda_lo, double lambda_hi);

/// Full pipeline: certified bounds, rescale, moments, kernel, reconstruction.
/// Single-point spectra short-circuit to an exact delta density.
SpectralDensity spectral_density(const MagneticOperator& op, const KpmConfig& config,
                                 unsigned threads = 0);

enum class TraceFunction { partition, entropy_summand, estrada, mean, second_moment };

/// Trace functions evaluated on a density of `node_count` eigenvalues:
/// partition and estrada are extensive sums n * sum_i p_i f(lambda_i);
/// mean / second_moment are plain density moments; entropy_summand is the
/// Gibbs entropy of the Boltzmann weights reconstructed off the density.
double trace_function(const SpectralDensity& density, std::int64_t node_count, TraceFunction f,
                      double temperature = 0.0);

/// Boltzmann-weighted eigenvalue variance over T^2, off the density.
double specific_heat(const SpectralDensity& density, double temperature);

/// KPM specific-heat fingerprint: one moment run per charge, every
/// temperature evaluated from the same density. Charge qi consumes child
/// stream qi of config.seed.
HeatGrid kpm_heat_grid(const DirectedGraph& g, const std::vector<double>& charges,
                       const std::vector<double>& temperatures, const KpmConfig& config,
                       OperatorKind kind = OperatorKind::normalized, unsigned threads = 0);

}  // namespace maglap::kpm
