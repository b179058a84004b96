#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "maglap/errors.hpp"
#include "maglap/exact.hpp"
#include "maglap/generators.hpp"
#include "maglap/kpm.hpp"

using namespace maglap;
using cd = std::complex<double>;
namespace k = maglap::kpm;

namespace {

/// Test double: diagonal operator with prescribed (already rescaled) entries.
struct DiagonalOperator {
    std::vector<double> entries;

    NodeId dimension() const { return static_cast<NodeId>(entries.size()); }
    void apply(std::span<const cd> x, std::span<cd> y) const {
        for (std::size_t i = 0; i < entries.size(); ++i) y[i] = entries[i] * x[i];
    }
};

double chebyshev(int m, double x) { return std::cos(m * std::acos(x)); }

DirectedGraph directed_cycle(NodeId n) {
    std::vector<Edge> edges;
    for (NodeId u = 0; u < n; ++u) edges.push_back({u, static_cast<NodeId>((u + 1) % n), 1.0});
    return DirectedGraph(n, std::move(edges));
}

/// Exact normalized-trace moments from a dense spectrum, rescaled by `map`.
std::vector<double> dense_moments(const Spectrum& s, const k::AffineMap& map, int m_count) {
    std::vector<double> mu(static_cast<std::size_t>(m_count), 0.0);
    for (int m = 0; m < m_count; ++m) {
        double sum = 0.0;
        for (Eigen::Index l = 0; l < s.eigenvalues.size(); ++l)
            sum += chebyshev(m, map.to_unit(s.eigenvalues(l)));
        mu[static_cast<std::size_t>(m)] = sum / static_cast<double>(s.eigenvalues.size());
    }
    return mu;
}

double density_mass(const k::SpectralDensity& d, double lo, double hi) {
    double mass = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d.support[i] >= lo && d.support[i] <= hi) mass += d.weights[i];
    return mass;
}

/// L1 distance between two histograms of the measures on a fixed binning.
double binned_l1(const k::SpectralDensity& a, const k::SpectralDensity& b, double lo, double hi,
                 std::size_t bins) {
    std::vector<double> ha(bins, 0.0), hb(bins, 0.0);
    auto drop = [&](const k::SpectralDensity& d, std::vector<double>& h) {
        for (std::size_t i = 0; i < d.size(); ++i) {
            const double x = std::clamp(d.support[i], lo, hi - 1e-12);
            h[static_cast<std::size_t>((x - lo) / (hi - lo) * static_cast<double>(bins))] +=
                d.weights[i];
        }
    };
    drop(a, ha);
    drop(b, hb);
    double l1 = 0.0;
    for (std::size_t i = 0; i < bins; ++i) l1 += std::abs(ha[i] - hb[i]);
    return l1;
}

}  // namespace

TEST_CASE("rescale map") {
    SUBCASE("normalized bounds with zero margin shift by one") {
        const k::AffineMap map = k::rescale_map(0.0, 2.0, 0.0);
        CHECK(map.scale == 1.0);
        CHECK(map.shift == 1.0);
        CHECK(map.to_unit(0.5) == -0.5);
        CHECK(map.to_unit(2.0) == 1.0);
    }
    SUBCASE("combinatorial bounds") {
        const double eps = 0.01;
        const k::AffineMap map = k::rescale_map(0.0, 178.0, eps);
        CHECK(map.scale == doctest::Approx(89.0 / (1.0 - eps)).epsilon(1e-14));
        CHECK(map.shift == 89.0);
    }
    SUBCASE("degenerate enclosure throws (delta short-circuit lives upstream)") {
        CHECK_THROWS_AS(k::rescale_map(1.0, 1.0, 0.01), ValidationError);
    }
}

TEST_CASE("moments on diagonal operators are exact") {
    std::vector<double> entries;
    for (int i = 0; i < 64; ++i)
        entries.push_back(-0.95 + 1.9 * static_cast<double>(i) / 63.0);
    const DiagonalOperator op{entries};
    const int m_count = 48;
    const auto mu = k::chebyshev_moments(op, m_count, 3, 12345);
    CHECK(mu[0] == 1.0);
    for (int m = 1; m < m_count; ++m) {
        double expect = 0.0;
        for (double h : entries) expect += chebyshev(m, h);
        expect /= static_cast<double>(entries.size());
        CHECK(mu[static_cast<std::size_t>(m)] == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("1x1 zero operator gives the T_m(0) pattern") {
    const DiagonalOperator op{{0.0}};
    const auto mu = k::chebyshev_moments(op, 8, 1, 7);
    const std::vector<double> expect{1, 0, -1, 0, 1, 0, -1, 0};
    for (std::size_t m = 0; m < expect.size(); ++m)
        CHECK(mu[m] == doctest::Approx(expect[m]).epsilon(1e-12));
}

TEST_CASE("moment magnitudes stay within the Chebyshev bound") {
    const DirectedGraph g =
        largest_weakly_connected_component(erdos_renyi_directed(150, 0.05, 3)).graph;
    const MagneticOperator op = MagneticOperator::normalized(symmetrize(g), 0.3);
    const k::AffineMap map = k::rescale_map(0.0, 2.0, 0.01);
    const k::Rescaled<MagneticOperator> rescaled(op, map);
    const auto mu = k::chebyshev_moments(rescaled, 64, 8, 99);
    CHECK(mu[0] == 1.0);
    for (double m : mu) CHECK(std::abs(m) <= 1.0 + 1e-9);
}

TEST_CASE("uncertified bounds abort with a diagnostic") {
    // spectrum of this diagonal "operator" escapes [-1, 1]
    const DiagonalOperator op{{0.0, 1.6, -0.2, 0.4}};
    CHECK_THROWS_AS(k::chebyshev_moments(op, 64, 2, 5), NumericError);
}

TEST_CASE("hutchinson moments land within three standard errors of dense moments") {
    const DirectedGraph g = uniform_modular(3, 45);
    const SymmetrizedGraph sg = symmetrize(g);
    const MagneticOperator op = MagneticOperator::normalized(sg, 0.0);
    const k::AffineMap map = k::rescale_map(0.0, 2.0, 0.01);
    const k::Rescaled<MagneticOperator> rescaled(op, map);

    const int m_count = 40, probes = 25;
    const auto exact = dense_moments(eig_hermitian(op, false), map, m_count);

    // per-probe estimates for the standard error
    std::vector<std::vector<double>> per_probe;
    for (int r = 0; r < probes; ++r)
        per_probe.push_back(k::chebyshev_moments(rescaled, m_count, 1, split_seed(2024, r)));
    for (int m = 1; m < m_count; ++m) {
        double mean = 0.0;
        for (const auto& mu : per_probe) mean += mu[static_cast<std::size_t>(m)];
        mean /= probes;
        double var = 0.0;
        for (const auto& mu : per_probe) {
            const double d = mu[static_cast<std::size_t>(m)] - mean;
            var += d * d;
        }
        const double stderr_mean = std::sqrt(var / (probes - 1.0) / probes);
        CHECK(std::abs(mean - exact[static_cast<std::size_t>(m)]) <=
              3.0 * stderr_mean + 1e-12);
    }
}

TEST_CASE("jackson coefficients") {
    SUBCASE("g_0 is exactly one") {
        for (int m : {2, 7, 40, 100}) CHECK(k::jackson_coefficients(m)[0] == 1.0);
    }
    SUBCASE("g_1 at M = 2 is exactly one half") {
        CHECK(k::jackson_coefficients(2)[1] == doctest::Approx(0.5).epsilon(1e-14));
    }
    SUBCASE("strictly decreasing in m for fixed M") {
        for (int m_count : {2, 3, 8, 64, 512}) {
            const auto g = k::jackson_coefficients(m_count);
            for (std::size_t m = 1; m < g.size(); ++m) CHECK(g[m] < g[m - 1]);
        }
    }
}

TEST_CASE("dos_estimate") {
    SUBCASE("weights form a simplex on clamped support") {
        const DirectedGraph g =
            largest_weakly_connected_component(erdos_renyi_directed(120, 0.06, 17)).graph;
        const MagneticOperator op = MagneticOperator::normalized(symmetrize(g), 0.2);
        k::KpmConfig cfg;
        cfg.num_moments = 48;
        cfg.num_random_vectors = 8;
        cfg.seed = 5;
        const k::SpectralDensity d = k::spectral_density(op, cfg);
        double total = 0.0;
        for (double w : d.weights) {
            CHECK(w >= 0.0);
            total += w;
        }
        CHECK(std::abs(total - 1.0) <= 1e-12);
        CHECK(std::is_sorted(d.support.begin(), d.support.end()));
        CHECK(d.support.front() >= 0.0);
        CHECK(d.support.back() <= 2.0);
    }
    SUBCASE("empty graph short-circuits to a delta at zero") {
        const MagneticOperator op =
            MagneticOperator::combinatorial(symmetrize(DirectedGraph(5, {})), 0.3);
        const k::SpectralDensity d = k::spectral_density(op, k::KpmConfig{});
        REQUIRE(d.size() == 1);
        CHECK(d.support[0] == 0.0);
        CHECK(d.weights[0] == 1.0);
    }
    SUBCASE("3-cycle mass concentrates near {0.5, 2} in ratio 2:1") {
        const MagneticOperator op =
            MagneticOperator::normalized(symmetrize(directed_cycle(3)), 1.0 / 6.0);
        k::KpmConfig cfg;
        cfg.num_moments = 64;
        cfg.exact_trace = true;
        const k::SpectralDensity d = k::spectral_density(op, cfg);
        const double low = density_mass(d, 0.3, 0.7);
        const double high = density_mass(d, 1.8, 2.0);
        CHECK(low + high > 0.99);
        CHECK(low / high == doctest::Approx(2.0).epsilon(0.05));
    }
}

TEST_CASE("trace functions") {
    const DirectedGraph g = uniform_modular(3, 45);
    const MagneticOperator op = MagneticOperator::normalized(symmetrize(g), 0.0);
    k::KpmConfig cfg;
    cfg.num_moments = 40;
    cfg.num_random_vectors = 25;
    cfg.seed = 31;
    const k::SpectralDensity d = k::spectral_density(op, cfg);
    const std::int64_t n = 135;

    SUBCASE("infinite-temperature partition recovers the node count") {
        CHECK(k::trace_function(d, n, k::TraceFunction::partition, 1e12) ==
              doctest::Approx(135.0).epsilon(1e-6));
    }
    SUBCASE("partition on a delta density is the node count") {
        k::SpectralDensity delta;
        delta.support = {0.0};
        delta.weights = {1.0};
        CHECK(k::trace_function(delta, 7, k::TraceFunction::partition, 0.1) == 7.0);
    }
    SUBCASE("KPM partition within 5% of the dense value") {
        const Spectrum s = eig_hermitian(op, false);
        const double exact_z = partition_function(s, 0.1);
        const double kpm_z = k::trace_function(d, n, k::TraceFunction::partition, 0.1);
        CHECK(std::abs(kpm_z - exact_z) / exact_z < 0.05);
    }
    SUBCASE("density moments match the dense spectrum closely") {
        const Spectrum s = eig_hermitian(op, false);
        double mean = 0.0, second = 0.0;
        for (Eigen::Index l = 0; l < s.eigenvalues.size(); ++l) {
            mean += s.eigenvalues(l);
            second += s.eigenvalues(l) * s.eigenvalues(l);
        }
        mean /= 135.0;
        second /= 135.0;
        CHECK(k::trace_function(d, n, k::TraceFunction::mean) ==
              doctest::Approx(mean).epsilon(0.02));
        CHECK(k::trace_function(d, n, k::TraceFunction::second_moment) ==
              doctest::Approx(second).epsilon(0.02));
    }
    SUBCASE("entropy off the density approaches the dense entropy") {
        const Spectrum s = eig_hermitian(op, false);
        const double exact_s = spectral_entropy(s, 0.5);
        const double kpm_s = k::trace_function(d, n, k::TraceFunction::entropy_summand, 0.5);
        CHECK(std::abs(kpm_s - exact_s) < 0.05 * std::max(1.0, exact_s));
    }
    SUBCASE("estrada sum stays close to the dense value") {
        const Spectrum s = eig_hermitian(op, false);
        double exact_estrada = 0.0;
        for (Eigen::Index l = 0; l < s.eigenvalues.size(); ++l)
            exact_estrada += std::exp(-s.eigenvalues(l));
        const double kpm_estrada = k::trace_function(d, n, k::TraceFunction::estrada);
        CHECK(std::abs(kpm_estrada - exact_estrada) / exact_estrada < 0.05);
    }
    SUBCASE("thermal tags require a positive temperature") {
        CHECK_THROWS_AS(k::trace_function(d, n, k::TraceFunction::partition, 0.0),
                        ValidationError);
        CHECK_THROWS_AS(k::trace_function(d, n, k::TraceFunction::entropy_summand, -1.0),
                        ValidationError);
    }
}

TEST_CASE("density converges to the dense histogram as M grows") {
    const DirectedGraph g =
        largest_weakly_connected_component(cyclic_sbm(3, 40, 0.3, 0.5, 8)).graph;
    const SymmetrizedGraph sg = symmetrize(g);
    const MagneticOperator op = MagneticOperator::normalized(sg, 0.25);
    const Spectrum s = eig_hermitian(op, false);
    k::SpectralDensity exact;
    for (Eigen::Index l = 0; l < s.eigenvalues.size(); ++l) {
        exact.support.push_back(s.eigenvalues(l));
        exact.weights.push_back(1.0 / static_cast<double>(s.eigenvalues.size()));
    }
    std::vector<double> l1;
    for (int m_count : {16, 32, 64, 128}) {
        k::KpmConfig cfg;
        cfg.num_moments = m_count;
        cfg.num_random_vectors = 32;
        cfg.seed = 404;
        l1.push_back(binned_l1(k::spectral_density(op, cfg), exact, 0.0, 2.0, 20));
    }
    // monotone trend, allowing a single-step violation of up to 10%
    for (std::size_t i = 1; i < l1.size(); ++i) CHECK(l1[i] <= l1[i - 1] * 1.10);
    CHECK(l1.back() < l1.front());
}

TEST_CASE("kpm heat grid") {
    SUBCASE("exact-mode comparison within 5% where the exact value is visible") {
        const DirectedGraph g =
            largest_weakly_connected_component(cyclic_sbm(3, 60, 0.25, 0.5, 21)).graph;
        const auto charges = linspace(0.0, 0.5, 4);
        const auto temps = linspace(0.03, 0.15, 5);
        k::KpmConfig cfg;
        cfg.num_moments = 256;
        cfg.num_random_vectors = 64;
        cfg.seed = 9;
        const HeatGrid approx = k::kpm_heat_grid(g, charges, temps, cfg);
        const HeatGrid exact = heat_grid(g, charges, temps);
        for (std::size_t i = 0; i < exact.values.size(); ++i)
            if (exact.values[i] > 0.05)
                CHECK(std::abs(approx.values[i] - exact.values[i]) / exact.values[i] < 0.05);
    }
    SUBCASE("rotational symmetry within three stochastic errors") {
        const DirectedGraph g = uniform_modular(3, 45);
        const std::vector<double> charges{0.07, 0.07 + 1.0 / 3.0};
        const std::vector<double> temps{0.08, 0.12};
        // five independent runs give the error scale of a single estimate
        std::vector<HeatGrid> runs;
        for (std::uint64_t s = 0; s < 5; ++s) {
            k::KpmConfig cfg;
            cfg.num_moments = 40;
            cfg.num_random_vectors = 25;
            cfg.seed = 1000 + s;
            runs.push_back(k::kpm_heat_grid(g, charges, temps, cfg));
        }
        for (std::size_t ti = 0; ti < temps.size(); ++ti) {
            double gap = 0.0, sd = 0.0, mean0 = 0.0;
            for (const auto& r : runs) mean0 += r.at(0, ti);
            mean0 /= runs.size();
            for (const auto& r : runs) {
                const double d = r.at(0, ti) - mean0;
                sd += d * d;
            }
            sd = std::sqrt(sd / (runs.size() - 1.0));
            for (const auto& r : runs) gap += r.at(0, ti) - r.at(1, ti);
            gap = std::abs(gap / runs.size());
            CHECK(gap <= 3.0 * sd + 1e-9);
        }
    }
    SUBCASE("disconnected graphs are rejected") {
        CHECK_THROWS_AS(
            k::kpm_heat_grid(DirectedGraph(4, {{0, 1, 1.0}, {2, 3, 1.0}}), {0.1}, {0.1},
                             k::KpmConfig{}),
            NotWeaklyConnected);
    }
}
