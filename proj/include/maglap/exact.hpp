#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "maglap/graph.hpp"
#include "maglap/magnetic_operator.hpp"

namespace maglap {

inline constexpr NodeId kDefaultDenseLimit = 4000;

/// Full real spectrum of a Hermitian operator, ascending; eigenvector column
/// l (when requested) pairs with eigenvalue l.
struct Spectrum {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXcd eigenvectors;  // 0x0 when not requested

    bool has_vectors() const { return eigenvectors.size() > 0; }
    static Spectrum from_values(std::vector<double> values);  // sorts ascending
};

/// Dense Hermitian eigendecomposition. Dimensions above dense_limit throw
/// DimensionTooLarge (use the KPM estimator instead).
Spectrum eig_hermitian(const MagneticOperator& op, bool want_vectors,
                       NodeId dense_limit = kDefaultDenseLimit);

/// Z = sum_l exp(-lambda_l / T), evaluated with the max-shift trick.
double partition_function(const Spectrum& spectrum, double temperature);

/// Boltzmann probabilities exp(-lambda_l/T)/Z as a stabilized simplex.
std::vector<double> boltzmann_weights(const Spectrum& spectrum, double temperature);

/// Boltzmann-weighted mean of per-level observable values.
double expected_value(const Spectrum& spectrum, std::span<const double> observable,
                      double temperature);

/// c = (<H^2> - <H>^2) / T^2, computed two-pass so it is non-negative.
double specific_heat(const Spectrum& spectrum, double temperature);

/// Gibbs entropy -sum p_l ln p_l in nats (non-negative convention).
double spectral_entropy(const Spectrum& spectrum, double temperature);

/// Specific-heat fingerprint over a charge x temperature grid.
struct HeatGrid {
    std::vector<double> charges;
    std::vector<double> temperatures;
    std::vector<double> values;  // row-major [charge][temperature]
    std::string kind = "normalized";
    std::string graph_id;

    double& at(std::size_t qi, std::size_t ti) { return values[qi * temperatures.size() + ti]; }
    double at(std::size_t qi, std::size_t ti) const {
        return values[qi * temperatures.size() + ti];
    }
};

std::vector<double> linspace(double lo, double hi, std::size_t count);
std::vector<double> default_charge_grid();       // 30 points on [0, 1/2]
std::vector<double> default_temperature_grid();  // 30 points on [0.01, 0.15]

/// One dense decomposition per charge (eigenvalues only), then the specific
/// heat at every temperature. Charges run in parallel.
HeatGrid heat_grid(const DirectedGraph& g, const std::vector<double>& charges,
                   const std::vector<double>& temperatures,
                   OperatorKind kind = OperatorKind::normalized,
                   NodeId dense_limit = kDefaultDenseLimit, unsigned threads = 0);

/// rho = sum_l p_l |psi_l><psi_l| at temperature T; trace-1 Hermitian PSD.
struct DensityMatrix {
    Eigen::MatrixXcd matrix;
    double temperature = 0.0;
    double charge = 0.0;
};

DensityMatrix density_matrix(const Spectrum& spectrum, double temperature, double charge = 0.0);

/// Quantum relative entropy Tr[rho1 (ln rho1 - ln rho2)] >= 0 between the
/// Gibbs states of the two graphs' normalized magnetic Laplacians. Both
/// graphs must have the same node count. Not permutation invariant.
double entropic_dissimilarity(const DirectedGraph& g1, const DirectedGraph& g2, double charge,
                              double temperature, NodeId dense_limit = kDefaultDenseLimit);

}  // namespace maglap
