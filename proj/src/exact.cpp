#include "maglap/exact.hpp"

#include <algorithm>
#include <cmath>

#include "maglap/errors.hpp"
#include "maglap/parallel.hpp"

namespace maglap {

namespace {

void require_temperature(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw ValidationError("temperature must be positive");
}

constexpr double kProbabilityFloor = 1e-300;

}  // namespace

Spectrum Spectrum::from_values(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    Spectrum s;
    s.eigenvalues = Eigen::Map<const Eigen::VectorXd>(values.data(),
                                                      static_cast<Eigen::Index>(values.size()));
    return s;
}

Spectrum eig_hermitian(const MagneticOperator& op, bool want_vectors, NodeId dense_limit) {
    if (op.dimension() > dense_limit)
        throw DimensionTooLarge("dimension " + std::to_string(op.dimension()) +
                                " exceeds the dense limit " + std::to_string(dense_limit) +
                                "; use the KPM estimator");
    const Eigen::MatrixXcd dense = op.dense();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        dense, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericError("Hermitian eigendecomposition failed to converge");
    Spectrum s;
    s.eigenvalues = solver.eigenvalues();
    if (want_vectors) s.eigenvectors = solver.eigenvectors();
    return s;
}

double partition_function(const Spectrum& spectrum, double temperature) {
    require_temperature(temperature);
    if (spectrum.eigenvalues.size() == 0) throw ValidationError("empty spectrum");
    const double lambda_min = spectrum.eigenvalues(0);
    double sum = 0.0;
    for (Eigen::Index l = 0; l < spectrum.eigenvalues.size(); ++l)
        sum += std::exp(-(spectrum.eigenvalues(l) - lambda_min) / temperature);
    return std::exp(-lambda_min / temperature) * sum;
}

std::vector<double> boltzmann_weights(const Spectrum& spectrum, double temperature) {
    require_temperature(temperature);
    const Eigen::Index n = spectrum.eigenvalues.size();
    if (n == 0) throw ValidationError("empty spectrum");
    const double lambda_min = spectrum.eigenvalues(0);
    std::vector<double> w(static_cast<std::size_t>(n));
    double sum = 0.0;
    for (Eigen::Index l = 0; l < n; ++l) {
        w[static_cast<std::size_t>(l)] = std::exp(-(spectrum.eigenvalues(l) - lambda_min) / temperature);
        sum += w[static_cast<std::size_t>(l)];
    }
    for (double& p : w) p /= sum;
    return w;
}

double expected_value(const Spectrum& spectrum, std::span<const double> observable,
                      double temperature) {
    if (observable.size() != static_cast<std::size_t>(spectrum.eigenvalues.size()))
        throw ValidationError("observable length does not match spectrum size");
    const auto weights = boltzmann_weights(spectrum, temperature);
    double mean = 0.0;
    for (std::size_t l = 0; l < weights.size(); ++l) mean += weights[l] * observable[l];
    return mean;
}

double specific_heat(const Spectrum& spectrum, double temperature) {
    const auto weights = boltzmann_weights(spectrum, temperature);
    double mean = 0.0;
    for (std::size_t l = 0; l < weights.size(); ++l) mean += weights[l] * spectrum.eigenvalues(static_cast<Eigen::Index>(l));
    double variance = 0.0;
    for (std::size_t l = 0; l < weights.size(); ++l) {
        const double d = spectrum.eigenvalues(static_cast<Eigen::Index>(l)) - mean;
        variance += weights[l] * d * d;
    }
    return variance / (temperature * temperature);
}

double spectral_entropy(const Spectrum& spectrum, double temperature) {
    const auto weights = boltzmann_weights(spectrum, temperature);
    double entropy = 0.0;
    for (double p : weights)
        if (p > 0.0) entropy -= p * std::log(p);
    return entropy;
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
    if (count == 0) throw ValidationError("grid must be non-empty");
    std::vector<double> v(count);
    if (count == 1) {
        v[0] = lo;
        return v;
    }
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) v[i] = lo + step * static_cast<double>(i);
    v.back() = hi;
    return v;
}

std::vector<double> default_charge_grid() { return linspace(0.0, 0.5, 30); }
std::vector<double> default_temperature_grid() { return linspace(0.01, 0.15, 30); }

HeatGrid heat_grid(const DirectedGraph& g, const std::vector<double>& charges,
                   const std::vector<double>& temperatures, OperatorKind kind, NodeId dense_limit,
                   unsigned threads) {
    if (charges.empty() || temperatures.empty()) throw ValidationError("grids must be non-empty");
    for (double t : temperatures) require_temperature(t);
    HeatGrid grid;
    grid.charges = charges;
    grid.temperatures = temperatures;
    grid.kind = to_string(kind);
    grid.values.assign(charges.size() * temperatures.size(), 0.0);
    const SymmetrizedGraph sg = symmetrize(g);
    parallel_for(charges.size(), threads, [&](std::size_t qi) {
        const MagneticOperator op = kind == OperatorKind::normalized
                                        ? MagneticOperator::normalized(sg, charges[qi])
                                        : MagneticOperator::combinatorial(sg, charges[qi]);
        const Spectrum spectrum = eig_hermitian(op, false, dense_limit);
        for (std::size_t ti = 0; ti < temperatures.size(); ++ti)
            grid.at(qi, ti) = specific_heat(spectrum, temperatures[ti]);
    });
    return grid;
}

DensityMatrix density_matrix(const Spectrum& spectrum, double temperature, double charge) {
    if (!spectrum.has_vectors())
        throw ValidationError("density matrix requires eigenvectors");
    const auto weights = boltzmann_weights(spectrum, temperature);
    const Eigen::Index n = spectrum.eigenvalues.size();
    Eigen::VectorXd w(n);
    for (Eigen::Index l = 0; l < n; ++l) w(l) = weights[static_cast<std::size_t>(l)];
    DensityMatrix rho;
    rho.matrix = spectrum.eigenvectors * w.asDiagonal() * spectrum.eigenvectors.adjoint();
    rho.temperature = temperature;
    rho.charge = charge;
    return rho;
}

double entropic_dissimilarity(const DirectedGraph& g1, const DirectedGraph& g2, double charge,
                              double temperature, NodeId dense_limit) {
    if (g1.node_count() != g2.node_count())
        throw ValidationError("entropic dissimilarity requires equal node counts");
    require_temperature(temperature);

    const Spectrum s1 =
        eig_hermitian(MagneticOperator::normalized(symmetrize(g1), charge), true, dense_limit);
    const Spectrum s2 =
        eig_hermitian(MagneticOperator::normalized(symmetrize(g2), charge), true, dense_limit);
    const auto p1 = boltzmann_weights(s1, temperature);
    const auto p2 = boltzmann_weights(s2, temperature);

    // Tr[rho1 ln rho1] in rho1's own eigenbasis.
    double tr_self = 0.0;
    for (double p : p1)
        if (p > 0.0) tr_self += p * std::log(p);

    // Tr[rho1 ln rho2] = sum_{l,k} p1_l |<psi1_l|psi2_k>|^2 ln p2_k, with a
    // probability floor so frozen levels do not produce -inf.
    const Eigen::MatrixXcd overlap = s1.eigenvectors.adjoint() * s2.eigenvectors;
    double tr_cross = 0.0;
    for (Eigen::Index l = 0; l < overlap.rows(); ++l) {
        const double pl = p1[static_cast<std::size_t>(l)];
        if (pl <= 0.0) continue;
        double row = 0.0;
        for (Eigen::Index k = 0; k < overlap.cols(); ++k)
            row += std::norm(overlap(l, k)) *
                   std::log(std::max(p2[static_cast<std::size_t>(k)], kProbabilityFloor));
        tr_cross += pl * row;
    }
    return tr_self - tr_cross;
}

}  // namespace maglap
