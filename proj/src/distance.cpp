#include "maglap/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "maglap/errors.hpp"

namespace maglap {

namespace {

struct Point {
    double position;
    double mass;
};

/// Sorted positive-mass atoms of a validated measure.
std::vector<Point> atoms(const kpm::SpectralDensity& density) {
    if (density.support.size() != density.weights.size())
        throw ValidationError("support and weights differ in length");
    if (density.size() == 0) throw ValidationError("empty measure");
    double total = 0.0;
    std::vector<Point> pts;
    pts.reserve(density.size());
    for (std::size_t i = 0; i < density.size(); ++i) {
        const double w = density.weights[i];
        if (!(w >= -1e-12) || !std::isfinite(w))
            throw ValidationError("weights must be non-negative");
        if (!std::isfinite(density.support[i]))
            throw ValidationError("support must be finite");
        total += w;
        if (w > 0.0) pts.push_back({density.support[i], w});
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw ValidationError("weights must sum to 1");
    if (pts.empty()) throw ValidationError("measure has no mass");
    std::sort(pts.begin(), pts.end(),
              [](const Point& x, const Point& y) { return x.position < y.position; });
    for (Point& p : pts) p.mass /= total;
    return pts;
}

void require_order(double order) {
    if (!(order >= 1.0) || !std::isfinite(order))
        throw ValidationError("Wasserstein order must be >= 1");
}

}  // namespace

double wasserstein_1d(const kpm::SpectralDensity& a, const kpm::SpectralDensity& b,
                      double order) {
    require_order(order);
    const auto pa = atoms(a);
    const auto pb = atoms(b);

    std::size_t i = 0, j = 0;
    double ca = pa[0].mass, cb = pb[0].mass, level = 0.0, integral = 0.0;
    while (true) {
        const double next = std::min(ca, cb);
        const double segment = next - level;
        if (segment > 0.0) {
            const double gap = std::abs(pa[i].position - pb[j].position);
            integral += segment * (order == 1.0 ? gap : std::pow(gap, order));
        }
        level = next;
        const bool advance_a = ca <= cb;
        const bool advance_b = cb <= ca;
        if (advance_a) {
            if (++i == pa.size()) break;
            ca += pa[i].mass;
        }
        if (advance_b) {
            if (++j == pb.size()) break;
            cb += pb[j].mass;
        }
    }
    return order == 1.0 ? integral : std::pow(integral, 1.0 / order);
}

namespace {

/// Transportation simplex state over an na x nb cost table. Basic cells form
/// a spanning tree of the bipartite row/column graph.
class TransportSimplex {
public:
    TransportSimplex(std::vector<double> supply, std::vector<double> demand,
                     std::vector<double> cost)
        : na_(supply.size()),
          nb_(demand.size()),
          cost_(std::move(cost)),
          flow_(na_ * nb_, 0.0),
          basic_(na_ * nb_, false) {
        northwest_corner(supply, demand);
    }

    double solve() {
        std::vector<double> u(na_), v(nb_);
        for (long iteration = 0;; ++iteration) {
            if (iteration > 200000)
                throw NumericError("transportation simplex exceeded its iteration budget");
            compute_potentials(u, v);
            // Bland's rule: smallest row-major index with negative reduced cost.
            std::size_t enter = size();
            for (std::size_t c = 0; c < size(); ++c) {
                if (basic_[c]) continue;
                if (cost_[c] - u[c / nb_] - v[c % nb_] < -1e-12) {
                    enter = c;
                    break;
                }
            }
            if (enter == size()) break;
            pivot(enter);
        }
        double value = 0.0;
        for (std::size_t c = 0; c < size(); ++c) value += flow_[c] * cost_[c];
        return value;
    }

private:
    std::size_t size() const { return na_ * nb_; }
    std::size_t cell(std::size_t i, std::size_t j) const { return i * nb_ + j; }

    void northwest_corner(std::vector<double> supply, std::vector<double> demand) {
        std::size_t i = 0, j = 0;
        // Advancing one index per step (except at the final cell) yields
        // exactly na + nb - 1 basic cells, zeros included when degenerate.
        while (true) {
            const std::size_t c = cell(i, j);
            const double f = std::min(supply[i], demand[j]);
            flow_[c] = f;
            basic_[c] = true;
            supply[i] -= f;
            demand[j] -= f;
            if (i + 1 == na_ && j + 1 == nb_) break;
            if (j + 1 == nb_)
                ++i;
            else if (i + 1 == na_)
                ++j;
            else if (supply[i] <= demand[j])
                ++i;
            else
                ++j;
        }
    }

    void compute_potentials(std::vector<double>& u, std::vector<double>& v) const {
        std::vector<char> u_set(na_, 0), v_set(nb_, 0);
        std::vector<std::vector<std::size_t>> row_cells(na_), col_cells(nb_);
        for (std::size_t c = 0; c < size(); ++c)
            if (basic_[c]) {
                row_cells[c / nb_].push_back(c);
                col_cells[c % nb_].push_back(c);
            }
        u[0] = 0.0;
        u_set[0] = 1;
        std::vector<std::size_t> queue{0};  // rows offset [0, na), cols offset na + j
        while (!queue.empty()) {
            const std::size_t node = queue.back();
            queue.pop_back();
            if (node < na_) {
                for (std::size_t c : row_cells[node]) {
                    const std::size_t j = c % nb_;
                    if (!v_set[j]) {
                        v[j] = cost_[c] - u[node];
                        v_set[j] = 1;
                        queue.push_back(na_ + j);
                    }
                }
            } else {
                const std::size_t j = node - na_;
                for (std::size_t c : col_cells[j]) {
                    const std::size_t i = c / nb_;
                    if (!u_set[i]) {
                        u[i] = cost_[c] - v[j];
                        u_set[i] = 1;
                        queue.push_back(i);
                    }
                }
            }
        }
    }

    /// Finds the alternating cycle closed by `enter` and shifts flow around it.
    void pivot(std::size_t enter) {
        const std::size_t enter_row = enter / nb_;
        const std::size_t enter_col = enter % nb_;
        // Path from enter_row to enter_col through the basis tree.
        std::vector<int> parent_cell(na_ + nb_, -1);
        std::vector<char> visited(na_ + nb_, 0);
        std::vector<std::size_t> stack{enter_row};
        visited[enter_row] = 1;
        while (!stack.empty()) {
            const std::size_t node = stack.back();
            stack.pop_back();
            if (node == na_ + enter_col) break;
            for (std::size_t c = 0; c < size(); ++c) {
                if (!basic_[c]) continue;
                const std::size_t i = c / nb_;
                const std::size_t j_node = na_ + c % nb_;
                std::size_t from = 0, to = 0;
                if (i == node && !visited[j_node]) {
                    from = node;
                    to = j_node;
                } else if (j_node == node && !visited[i]) {
                    from = node;
                    to = i;
                } else {
                    continue;
                }
                visited[to] = 1;
                parent_cell[to] = static_cast<int>(c);
                stack.push_back(to);
            }
        }
        // Walk back collecting the cycle cells; enter is the '+' position and
        // signs alternate along the path.
        std::vector<std::size_t> cycle{enter};
        std::size_t node = na_ + enter_col;
        while (node != enter_row) {
            const std::size_t c = static_cast<std::size_t>(parent_cell[node]);
            cycle.push_back(c);
            const std::size_t i = c / nb_;
            const std::size_t j_node = na_ + c % nb_;
            node = (node == j_node) ? i : j_node;
        }
        double theta = std::numeric_limits<double>::infinity();
        std::size_t leave = size();
        for (std::size_t k = 1; k < cycle.size(); k += 2) {
            // smallest cell index among ties, in the spirit of Bland's rule
            if (flow_[cycle[k]] < theta ||
                (flow_[cycle[k]] == theta && cycle[k] < leave)) {
                theta = flow_[cycle[k]];
                leave = cycle[k];
            }
        }
        for (std::size_t k = 0; k < cycle.size(); ++k) {
            if (k % 2 == 0)
                flow_[cycle[k]] += theta;
            else
                flow_[cycle[k]] -= theta;
        }
        basic_[enter] = true;
        basic_[leave] = false;
        flow_[leave] = 0.0;
    }

    std::size_t na_, nb_;
    std::vector<double> cost_;
    std::vector<double> flow_;
    std::vector<char> basic_;
};

}  // namespace

double wasserstein_lp_oracle(const kpm::SpectralDensity& a, const kpm::SpectralDensity& b,
                             double order) {
    require_order(order);
    const auto pa = atoms(a);
    const auto pb = atoms(b);
    if (pa.size() > 200 || pb.size() > 200)
        throw CapabilityError("LP oracle supports at most 200 points per measure");

    std::vector<double> supply(pa.size()), demand(pb.size()),
        cost(pa.size() * pb.size());
    for (std::size_t i = 0; i < pa.size(); ++i) supply[i] = pa[i].mass;
    for (std::size_t j = 0; j < pb.size(); ++j) demand[j] = pb[j].mass;
    for (std::size_t i = 0; i < pa.size(); ++i)
        for (std::size_t j = 0; j < pb.size(); ++j)
            cost[i * pb.size() + j] = std::pow(std::abs(pa[i].position - pb[j].position), order);

    TransportSimplex simplex(std::move(supply), std::move(demand), std::move(cost));
    const double value = simplex.solve();
    return order == 1.0 ? value : std::pow(std::max(value, 0.0), 1.0 / order);
}

}  // namespace maglap
