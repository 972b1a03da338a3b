#pragma once

#include "gradnet/coupling.hpp"
#include "gradnet/energy.hpp"
#include "gradnet/graph.hpp"
#include "gradnet/types.hpp"

#include <utility>
#include <vector>

namespace gradnet {

/// State-dependent metric evaluated at one state: a symmetric Laplacian with
/// off-diagonal (i, j) entries -c_i w_ij phi(x_j, x_i) / (h(x_j) - h(x_i))
/// and row-sum completion on the diagonal. A positive off-diagonal entry
/// marks a locally active resistor edge; assembly admits and flags it.
struct MetricMatrix {
    Matrix k;
    Vector x;  // state the matrix was assembled at
    std::vector<std::pair<int, int>> active_edges;  // pairs (i, j), i < j, with [K]_ij > 0
};

struct PsdReport {
    bool psd;
    double lambda_min;
};

/// Bundle of graph, stationary vector, coupling and energy. Construction
/// verifies strong connectivity (SingularStructure otherwise) and detailed
/// balance (DetailedBalanceViolation otherwise); instances are immutable.
class GradientSystem {
public:
    GradientSystem(WeightedDigraph graph, CouplingFunction coupling, EnergyFunction energy,
                   double balance_tol = 1e-9);

    const WeightedDigraph& graph() const { return graph_; }
    const Matrix& laplacian() const { return laplacian_; }
    const StationaryVector& c() const { return c_; }
    const CouplingFunction& coupling() const { return coupling_; }
    const EnergyFunction& energy() const { return energy_; }
    const std::vector<UndirectedEdge>& edges() const { return edges_; }
    int size() const { return graph_.node_count(); }

    Vector to_q(const Vector& x) const;  // q = C x
    Vector to_x(const Vector& q) const;  // x = C^{-1} q
    double energy_value(const Vector& q) const;
    Vector energy_gradient(const Vector& q) const;
    /// Direct pairwise form dx_i/dt = sum_j w_ij phi(x_j, x_i).
    Vector direct_field(const Vector& x) const;
    /// Symmetrized edge weight (c_i w_ij + c_j w_ji) / 2 for edge (i, j).
    double edge_mu(const UndirectedEdge& e) const;

private:
    WeightedDigraph graph_;
    CouplingFunction coupling_;
    EnergyFunction energy_;
    Matrix laplacian_;
    StationaryVector c_;
    std::vector<UndirectedEdge> edges_;
};

MetricMatrix assemble_K(const GradientSystem& sys, const Vector& x);

/// -K(x) grad E(q) evaluated at x = C^{-1} q. Equals C times the direct
/// pairwise field at the same state.
Vector gradient_vector_field(const GradientSystem& sys, const Vector& q);

/// dE/dt along the flow: -grad E . K grad E. Non-positive whenever K is
/// positive semi-definite; zero exactly at uniform states.
double dissipation_rate(const GradientSystem& sys, const Vector& q);

/// True iff lambda_min(K) >= -tol; the eigenvalue is returned either way.
PsdReport verify_psd(const MetricMatrix& k, double tol = 1e-10);

}  // namespace gradnet
