#include "gradnet/gradient_system.hpp"

#include "gradnet/errors.hpp"

#include <Eigen/Eigenvalues>

#include <sstream>
#include <utility>

namespace gradnet {

namespace {

/// Stationary vector via ratio propagation c_j = c_i w_ij / w_ji over a
/// spanning tree of the undirected edges. Valid only under detailed balance,
/// where it avoids the elimination roundoff of the general kernel solve (and
/// is exact for dyadic weight ratios); callers must still verify balance.
/// Returns an empty vector when some branch lacks its reverse branch, which
/// already rules detailed balance out.
Vector balanced_stationary_vector(const WeightedDigraph& graph,
                                  const std::vector<UndirectedEdge>& edges) {
    const int n = graph.node_count();
    std::vector<std::vector<int>> adjacent(n);
    for (const UndirectedEdge& e : edges) {
        if (graph.weight(e.a, e.b) <= 0.0 || graph.weight(e.b, e.a) <= 0.0) return Vector();
        adjacent[e.a].push_back(e.b);
        adjacent[e.b].push_back(e.a);
    }
    Vector c = Vector::Zero(n);
    c(0) = 1.0;
    std::vector<int> stack = {0};
    while (!stack.empty()) {
        const int i = stack.back();
        stack.pop_back();
        for (int j : adjacent[i]) {
            if (c(j) == 0.0) {
                c(j) = c(i) * (graph.weight(i, j) / graph.weight(j, i));
                stack.push_back(j);
            }
        }
    }
    if (c.minCoeff() <= 0.0 || !c.allFinite()) return Vector();
    return c / c.sum();
}

}  // namespace

GradientSystem::GradientSystem(WeightedDigraph graph, CouplingFunction coupling,
                               EnergyFunction energy, double balance_tol)
    : graph_(std::move(graph)),
      coupling_(std::move(coupling)),
      energy_(std::move(energy)),
      laplacian_(build_laplacian(graph_)),
      c_{},
      edges_(undirected_edges(graph_)) {
    if (!is_strongly_connected(graph_)) {
        throw SingularStructure("gradient system: graph is not strongly connected");
    }
    const Vector tree_c = balanced_stationary_vector(graph_, edges_);
    if (tree_c.size() == size()) {
        c_ = StationaryVector{tree_c};
    } else {
        c_ = stationary_vector(laplacian_);
    }
    const BalanceReport balance = check_detailed_balance(graph_, c_, balance_tol);
    if (!balance.balanced) {
        std::ostringstream os;
        os << "gradient system: detailed balance violated (max residual "
           << balance.max_residual << ");";
        size_t listed = 0;
        for (const BalanceViolation& v : balance.violations) {
            if (listed == 6) {
                os << " ...";
                break;
            }
            os << " c_" << v.i + 1 << " w_" << v.i + 1 << v.j + 1 << " = " << v.flux_ij
               << " vs c_" << v.j + 1 << " w_" << v.j + 1 << v.i + 1 << " = " << v.flux_ji << ";";
            ++listed;
        }
        throw DetailedBalanceViolation(os.str());
    }
}

Vector GradientSystem::to_q(const Vector& x) const {
    return c_.c.cwiseProduct(x);
}

Vector GradientSystem::to_x(const Vector& q) const {
    return q.cwiseQuotient(c_.c);
}

double GradientSystem::energy_value(const Vector& q) const {
    return eval_energy(energy_, c_, q);
}

Vector GradientSystem::energy_gradient(const Vector& q) const {
    return grad_energy(energy_, c_, q);
}

Vector GradientSystem::direct_field(const Vector& x) const {
    if (x.size() != size()) throw Error("direct_field: state size does not match graph");
    Vector f = Vector::Zero(size());
    for (const Branch& b : graph_.branches()) {
        f(b.to) += b.weight * coupling_(x(b.from), x(b.to));
    }
    return f;
}

double GradientSystem::edge_mu(const UndirectedEdge& e) const {
    return 0.5 * (c_.c(e.a) * graph_.weight(e.a, e.b) + c_.c(e.b) * graph_.weight(e.b, e.a));
}

MetricMatrix assemble_K(const GradientSystem& sys, const Vector& x) {
    const int n = sys.size();
    if (x.size() != n) throw Error("assemble_K: state size does not match graph");
    MetricMatrix metric;
    metric.k = Matrix::Zero(n, n);
    metric.x = x;
    for (const UndirectedEdge& e : sys.edges()) {
        const double ratio = ratio_phi_over_dh(sys.coupling(), sys.energy(), x(e.b), x(e.a));
        const double off = -sys.edge_mu(e) * ratio;
        metric.k(e.a, e.b) = off;
        metric.k(e.b, e.a) = off;
        if (off > 0.0) metric.active_edges.emplace_back(e.a, e.b);
    }
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j != i) row += metric.k(i, j);
        }
        metric.k(i, i) = -row;
    }
    return metric;
}

Vector gradient_vector_field(const GradientSystem& sys, const Vector& q) {
    const MetricMatrix metric = assemble_K(sys, sys.to_x(q));
    return -(metric.k * sys.energy_gradient(q));
}

double dissipation_rate(const GradientSystem& sys, const Vector& q) {
    const MetricMatrix metric = assemble_K(sys, sys.to_x(q));
    const Vector g = sys.energy_gradient(q);
    return -g.dot(metric.k * g);
}

PsdReport verify_psd(const MetricMatrix& k, double tol) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(k.k, Eigen::EigenvaluesOnly);
    const double lambda_min = solver.eigenvalues()(0);
    return {lambda_min >= -tol, lambda_min};
}

}  // namespace gradnet
