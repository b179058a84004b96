#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "maglap/circulant.hpp"
#include "maglap/errors.hpp"
#include "maglap/exact.hpp"
#include "maglap/generators.hpp"

using namespace maglap;
namespace circ = maglap::circulant;

namespace {

std::vector<double> dense_uniform_spectrum(NodeId nf, NodeId nc, double q) {
    const MagneticOperator op =
        MagneticOperator::normalized(symmetrize(uniform_modular(nf, nc)), q);
    const Spectrum s = eig_hermitian(op, false);
    return {s.eigenvalues.data(), s.eigenvalues.data() + s.eigenvalues.size()};
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    REQUIRE(a.size() == b.size());
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("block_reduced_matrix assembly") {
    const Eigen::MatrixXcd h_in = circ::uniform_block_in(4);
    SUBCASE("zero coupling keeps the intra block") {
        const Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(4, 4);
        for (NodeId u = 0; u < 3; ++u)
            CHECK((circ::block_reduced_matrix(h_in, zero, u, 3) - h_in).cwiseAbs().maxCoeff() ==
                  0.0);
    }
    SUBCASE("u = 0 with a Hermitian coupling adds it twice") {
        Eigen::MatrixXcd sym = Eigen::MatrixXcd::Constant(4, 4, 0.25);
        const Eigen::MatrixXcd got = circ::block_reduced_matrix(h_in, sym, 0, 5);
        CHECK((got - (h_in + 2.0 * sym)).cwiseAbs().maxCoeff() < 1e-15);
    }
    SUBCASE("union of reduced-block spectra equals the assembled spectrum") {
        const NodeId nf = 4, nc = 5;
        const double q = 0.17;
        std::vector<double> collected;
        const Eigen::MatrixXcd in = circ::uniform_block_in(nc);
        const Eigen::MatrixXcd out = circ::uniform_block_out(nc, q);
        for (NodeId u = 0; u < nf; ++u) {
            const Eigen::MatrixXcd block = circ::block_reduced_matrix(in, out, u, nf);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block, Eigen::EigenvaluesOnly);
            for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
                collected.push_back(es.eigenvalues()(i));
        }
        std::sort(collected.begin(), collected.end());
        CHECK(max_abs_diff(collected, dense_uniform_spectrum(nf, nc, q)) < 1e-9);
    }
    SUBCASE("dimension mismatch is rejected") {
        CHECK_THROWS_AS(
            circ::block_reduced_matrix(h_in, Eigen::MatrixXcd::Zero(3, 3), 0, 3),
            ValidationError);
    }
}

TEST_CASE("uniform modular closed-form eigenvalues") {
    SUBCASE("reference values at Nf=3, Nc=45, q=0") {
        const auto ev = circ::uniform_modular_eigenvalues(3, 45, 0.0);
        REQUIRE(ev.size() == 135);
        CHECK(ev[0] == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(ev[1] == doctest::Approx(67.5 / 89.0).epsilon(1e-12));
        CHECK(ev[2] == doctest::Approx(67.5 / 89.0).epsilon(1e-12));
        for (std::size_t i = 3; i < ev.size(); ++i)
            CHECK(ev[i] == doctest::Approx(90.0 / 89.0).epsilon(1e-12));
        CHECK(67.5 / 89.0 == doctest::Approx(0.758427).epsilon(1e-6));
        CHECK(90.0 / 89.0 == doctest::Approx(1.011236).epsilon(1e-6));
    }
    SUBCASE("matches dense diagonalization across the parameter sweep") {
        for (NodeId nf : {3, 4, 5})
            for (NodeId nc : {2, 5, 20})
                for (double q : {0.0, 0.1, 1.0 / 3.0})
                    CHECK(max_abs_diff(circ::uniform_modular_eigenvalues(nf, nc, q),
                                       dense_uniform_spectrum(nf, nc, q)) < 1e-9);
    }
    SUBCASE("charge shift by 1/Nf permutes the multiset") {
        for (NodeId nf : {3, 5}) {
            const auto a = circ::uniform_modular_eigenvalues(nf, 7, 0.08);
            const auto b =
                circ::uniform_modular_eigenvalues(nf, 7, 0.08 + 1.0 / static_cast<double>(nf));
            CHECK(max_abs_diff(a, b) < 1e-12);
        }
    }
    SUBCASE("ground state is exactly zero at q = 0") {
        CHECK(circ::uniform_modular_eigenvalues(5, 9, 0.0)[0] == 0.0);
    }
    SUBCASE("all values lie in [0, 2]") {
        for (double q : {0.0, 0.21, 0.47}) {
            const auto ev = circ::uniform_modular_eigenvalues(6, 11, q);
            CHECK(ev.front() >= 0.0);
            CHECK(ev.back() <= 2.0);
        }
    }
    CHECK_THROWS_AS(circ::uniform_modular_eigenvalues(2, 5, 0.0), ValidationError);
}

TEST_CASE("oracle heat grid") {
    SUBCASE("exactly periodic in q with period 1/Nf") {
        const std::vector<double> temps{0.03, 0.08, 0.14};
        for (NodeId nf : {3, 4, 5}) {
            const double shift = 1.0 / static_cast<double>(nf);
            const std::vector<double> charges{0.0, 0.05, 0.11,
                                              shift, shift + 0.05, shift + 0.11};
            const HeatGrid grid = circ::oracle_heat_grid(nf, 45, charges, temps);
            for (std::size_t k = 0; k < 3; ++k)
                for (std::size_t ti = 0; ti < temps.size(); ++ti)
                    CHECK(grid.at(k, ti) == doctest::Approx(grid.at(k + 3, ti)).epsilon(1e-10));
        }
    }
    SUBCASE("agrees with the dense pipeline on the generated graph") {
        const auto charges = linspace(0.0, 0.5, 5);
        const auto temps = linspace(0.02, 0.14, 4);
        const HeatGrid oracle = circ::oracle_heat_grid(4, 10, charges, temps);
        const HeatGrid dense = heat_grid(uniform_modular(4, 10), charges, temps);
        for (std::size_t i = 0; i < oracle.values.size(); ++i)
            CHECK(oracle.values[i] == doctest::Approx(dense.values[i]).epsilon(1e-8));
    }
    SUBCASE("petal motif repeats exactly Nf times around the charge circle") {
        // fundamental translation period is 1/Nf: shifting by 1/Nf is exact,
        // shifting by 1/(2 Nf) is visibly different, so the polar plot shows
        // Nf repeated petals, not 2 Nf.
        for (NodeId nf : {3, 4, 5}) {
            const std::size_t samples = 60;
            std::vector<double> qs(samples);
            for (std::size_t i = 0; i < samples; ++i)
                qs[i] = static_cast<double>(i) / static_cast<double>(samples);
            const HeatGrid base = circ::oracle_heat_grid(nf, 45, qs, {0.08});
            std::vector<double> q_full, q_half;
            for (double q : qs) {
                q_full.push_back(q + 1.0 / static_cast<double>(nf));
                q_half.push_back(q + 0.5 / static_cast<double>(nf));
            }
            const HeatGrid full = circ::oracle_heat_grid(nf, 45, q_full, {0.08});
            const HeatGrid half = circ::oracle_heat_grid(nf, 45, q_half, {0.08});
            double max_c = 0.0, full_diff = 0.0, half_diff = 0.0;
            for (std::size_t i = 0; i < samples; ++i) {
                max_c = std::max(max_c, base.at(i, 0));
                full_diff = std::max(full_diff, std::abs(base.at(i, 0) - full.at(i, 0)));
                half_diff = std::max(half_diff, std::abs(base.at(i, 0) - half.at(i, 0)));
            }
            CHECK(full_diff < 1e-10);
            CHECK(half_diff > 0.05 * max_c);
        }
    }
}

TEST_CASE("randomized intrablock experiment") {
    const std::vector<double> temps{0.05, 0.1};
    const NodeId nf = 3, nc = 20;
    const double shift = 1.0 / 3.0;
    const std::vector<double> charges{0.04, 0.13, 0.04 + shift, 0.13 + shift};
    auto asymmetry = [&](const HeatGrid& grid) {
        double stat = 0.0;
        for (std::size_t k = 0; k < 2; ++k)
            for (std::size_t ti = 0; ti < temps.size(); ++ti)
                stat = std::max(stat, std::abs(grid.at(k, ti) - grid.at(k + 2, ti)));
        return stat;
    };
    SUBCASE("p_within = 1 restores the uniform symmetry") {
        const HeatGrid grid = circ::random_intrablock_experiment(nf, nc, 1.0, charges, temps, 4);
        CHECK(asymmetry(grid) < 1e-8);
    }
    SUBCASE("random directions break the petal symmetry") {
        const HeatGrid uniform =
            circ::random_intrablock_experiment(nf, nc, 1.0, charges, temps, 4);
        const HeatGrid random =
            circ::random_intrablock_experiment(nf, nc, 0.3, charges, temps, 4);
        CHECK(asymmetry(random) > 10.0 * std::max(asymmetry(uniform), 1e-12));
    }
    SUBCASE("fixed seed reproduces the grid") {
        const HeatGrid a = circ::random_intrablock_experiment(nf, nc, 0.3, charges, temps, 9);
        const HeatGrid b = circ::random_intrablock_experiment(nf, nc, 0.3, charges, temps, 9);
        CHECK(a.values == b.values);
    }
    CHECK_THROWS_AS(circ::random_intrablock_graph(3, 5, 0.0, 1), ValidationError);
}
