#include "maglap/magnetic_operator.hpp"

#include <cmath>
#include <numbers>

#include "maglap/errors.hpp"
#include "maglap/rng.hpp"

namespace maglap {

std::string to_string(OperatorKind kind) {
    return kind == OperatorKind::combinatorial ? "combinatorial" : "normalized";
}

OperatorKind operator_kind_from_string(const std::string& name) {
    if (name == "combinatorial") return OperatorKind::combinatorial;
    if (name == "normalized") return OperatorKind::normalized;
    throw ValidationError("unknown operator kind '" + name + "'");
}

std::complex<double> gamma(double flow, double charge) {
    const double angle = 2.0 * std::numbers::pi * charge * flow;
    return {std::cos(angle), std::sin(angle)};
}

MagneticOperator MagneticOperator::build(const SymmetrizedGraph& sg, double charge,
                                         OperatorKind kind) {
    const NodeId n = sg.node_count();
    const auto& degrees = sg.degrees();

    if (kind == OperatorKind::normalized) {
        std::vector<NodeId> parent(static_cast<std::size_t>(n));
        for (NodeId u = 0; u < n; ++u) parent[static_cast<std::size_t>(u)] = u;
        auto find = [&](NodeId x) {
            while (parent[static_cast<std::size_t>(x)] != x) {
                parent[static_cast<std::size_t>(x)] =
                    parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
                x = parent[static_cast<std::size_t>(x)];
            }
            return x;
        };
        NodeId components = n;
        for (const SymmetricPair& p : sg.pairs()) {
            const NodeId a = find(p.u), b = find(p.v);
            if (a != b) {
                parent[static_cast<std::size_t>(a)] = b;
                --components;
            }
        }
        if (components > 1)
            throw NotWeaklyConnected(
                "graph is not weakly connected; extract the largest component first");
        for (NodeId u = 0; u < n; ++u)
            if (!(degrees[static_cast<std::size_t>(u)] > 0.0))
                throw ZeroDegreeNode("node " + std::to_string(u) +
                                     " has zero degree; normalized operator undefined");
    }

    MagneticOperator op;
    op.kind_ = kind;
    op.charge_ = charge;
    op.dimension_ = n;
    op.row_start_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (const SymmetricPair& p : sg.pairs()) ++op.row_start_[static_cast<std::size_t>(p.u) + 1];
    for (NodeId u = 0; u < n; ++u) op.row_start_[static_cast<std::size_t>(u) + 1] +=
        op.row_start_[static_cast<std::size_t>(u)];
    op.col_.resize(sg.pairs().size());
    op.values_.resize(sg.pairs().size());
    std::vector<std::size_t> cursor(op.row_start_.begin(), op.row_start_.end() - 1);
    for (const SymmetricPair& p : sg.pairs()) {
        std::size_t& at = cursor[static_cast<std::size_t>(p.u)];
        const std::complex<double> entry = -gamma(p.flow, charge) * p.weight;
        if (kind == OperatorKind::normalized) {
            const double scale = std::sqrt(degrees[static_cast<std::size_t>(p.u)] *
                                           degrees[static_cast<std::size_t>(p.v)]);
            op.values_[at] = entry / scale;
        } else {
            op.values_[at] = entry;
        }
        op.col_[at] = p.v;
        ++at;
    }

    double max_degree = 0.0;
    for (NodeId u = 0; u < n; ++u)
        max_degree = std::max(max_degree, degrees[static_cast<std::size_t>(u)]);
    if (kind == OperatorKind::normalized) {
        op.diagonal_.assign(static_cast<std::size_t>(n), 1.0);
        op.bound_lo_ = 0.0;
        op.bound_hi_ = 2.0;
    } else {
        op.diagonal_ = degrees;
        op.bound_lo_ = 0.0;  // x' L x = sum w_s |x_u - gamma x_v|^2 >= 0
        op.bound_hi_ = 2.0 * max_degree;
    }
    return op;
}

MagneticOperator MagneticOperator::combinatorial(const SymmetrizedGraph& sg, double charge) {
    return build(sg, charge, OperatorKind::combinatorial);
}

MagneticOperator MagneticOperator::normalized(const SymmetrizedGraph& sg, double charge) {
    return build(sg, charge, OperatorKind::normalized);
}

void MagneticOperator::apply(std::span<const std::complex<double>> x,
                             std::span<std::complex<double>> y) const {
    if (x.size() != static_cast<std::size_t>(dimension_) || y.size() != x.size())
        throw ValidationError("matvec dimension mismatch");
    for (std::size_t u = 0; u < x.size(); ++u) y[u] = diagonal_[u] * x[u];
    for (NodeId u = 0; u < dimension_; ++u) {
        const std::size_t begin = row_start_[static_cast<std::size_t>(u)];
        const std::size_t end = row_start_[static_cast<std::size_t>(u) + 1];
        std::complex<double> row_sum = 0.0;
        const std::complex<double> xu = x[static_cast<std::size_t>(u)];
        for (std::size_t k = begin; k < end; ++k) {
            const std::size_t v = static_cast<std::size_t>(col_[k]);
            const std::complex<double> a = values_[k];
            row_sum += a * x[v];
            y[v] += std::conj(a) * xu;
        }
        y[static_cast<std::size_t>(u)] += row_sum;
    }
}

std::vector<std::complex<double>> MagneticOperator::matvec(
    const std::vector<std::complex<double>>& x) const {
    std::vector<std::complex<double>> y(x.size());
    apply(x, y);
    return y;
}

Eigen::MatrixXcd MagneticOperator::dense() const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dimension_, dimension_);
    for (NodeId u = 0; u < dimension_; ++u) {
        m(u, u) = diagonal_[static_cast<std::size_t>(u)];
        for (std::size_t k = row_start_[static_cast<std::size_t>(u)];
             k < row_start_[static_cast<std::size_t>(u) + 1]; ++k) {
            m(u, col_[k]) = values_[k];
            m(col_[k], u) = std::conj(values_[k]);
        }
    }
    return m;
}

std::pair<double, double> spectral_bounds(const MagneticOperator& op, int power_iterations) {
    auto [lo, hi] = op.spectral_bounds();
    if (op.kind() == OperatorKind::normalized || power_iterations <= 0 || hi <= lo)
        return {lo, hi};

    const std::size_t n = static_cast<std::size_t>(op.dimension());
    Rng rng(0x9D2C5680u);  // fixed stream: bounds must not depend on caller seeds
    std::vector<std::complex<double>> x(n), y(n);
    double norm = 0.0;
    for (auto& xi : x) {
        xi = {rng.next_double() - 0.5, rng.next_double() - 0.5};
        norm += std::norm(xi);
    }
    norm = std::sqrt(norm);
    for (auto& xi : x) xi /= norm;

    double rayleigh = 0.0;
    for (int it = 0; it < power_iterations; ++it) {
        op.apply(x, y);
        std::complex<double> xy = 0.0;
        double yy = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            xy += std::conj(x[i]) * y[i];
            yy += std::norm(y[i]);
        }
        const double next = xy.real();
        const double ynorm = std::sqrt(yy);
        if (ynorm == 0.0) return {lo, hi};  // hit the kernel; keep Gershgorin
        for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / ynorm;
        if (it > 8 && std::abs(next - rayleigh) <= 1e-6 * std::max(1.0, std::abs(next))) {
            rayleigh = next;
            break;
        }
        rayleigh = next;
    }
    // The Rayleigh quotient approaches lambda_max from below; expand before
    // intersecting so the interval still encloses the spectrum.
    const double tightened = rayleigh * 1.05 + 1e-12;
    return {lo, std::min(hi, std::max(tightened, 0.0))};
}

}  // namespace maglap
