#pragma once

#include "gradnet/types.hpp"

#include <map>
#include <utility>
#include <vector>

namespace gradnet {

/// Directed branch from node `from` to node `to` carrying a positive weight.
/// Indices are 0-based in memory; the JSON interface is 1-based.
struct Branch {
    int from;
    int to;
    double weight;
};

/// Weighted directed graph. Immutable after construction; construction
/// validates positivity of weights, absence of self-loops and uniqueness of
/// ordered node pairs.
class WeightedDigraph {
public:
    WeightedDigraph(int node_count, std::vector<Branch> branches);

    int node_count() const { return n_; }
    const std::vector<Branch>& branches() const { return branches_; }

    /// Weight w_{to,from} of the branch from `from` into `to`, or 0 if absent.
    double weight(int to, int from) const;
    bool has_branch(int from, int to) const { return weight(to, from) > 0.0; }

private:
    int n_;
    std::vector<Branch> branches_;
    std::map<std::pair<int, int>, double> weight_of_;  // keyed (from, to)
};

/// Stationary vector of a Laplacian: the positive left eigenvector of the
/// zero eigenvalue, normalized to unit sum. Doubles as the capacitance vector
/// of the circuit view and the invariant measure of the Markov view.
struct StationaryVector {
    Vector c;

    Matrix diagonal() const { return Matrix(c.asDiagonal()); }
    int size() const { return static_cast<int>(c.size()); }
};

/// Undirected node pair {a, b} with a < b; one per resistor edge.
struct UndirectedEdge {
    int a;
    int b;
    /// Column orientation: -1 entry at `tail`, +1 at `head`.
    int tail;
    int head;
};

/// Node-branch incidence matrix over the undirected edge set, one column per
/// edge in lexicographic (a, b) order.
struct IncidenceMatrix {
    Matrix m;
    std::vector<UndirectedEdge> edges;

    int edge_count() const { return static_cast<int>(edges.size()); }
};

/// Laplacian with [L]_ij = -w_ij off the diagonal and row-sum completion on
/// the diagonal. Row sums are exactly zero by construction.
Matrix build_laplacian(const WeightedDigraph& g);

/// True iff every node is reachable from every node along directed branches.
bool is_strongly_connected(const WeightedDigraph& g);

/// Solves c^T L = 0 with c > 0, sum(c) = 1 by pinning c_1 = 1 and eliminating
/// the remaining (n-1)-dimensional system via LU. Throws SingularStructure if
/// the zero eigenvalue is not simple to working precision (a graph with
/// multiple recurrent classes slipped through).
StationaryVector stationary_vector(const Matrix& laplacian);

struct BalanceViolation {
    int i;
    int j;
    double flux_ij;  // c_i * w_ij
    double flux_ji;  // c_j * w_ji
};

struct BalanceReport {
    bool balanced = true;
    double max_residual = 0.0;  // relative, over all ordered pairs
    std::vector<BalanceViolation> violations;  // both orientations listed
};

/// Checks c_i w_ij = c_j w_ji for every node pair at relative tolerance
/// `tol`. A branch whose reverse partner is missing is reported as a
/// violation, never repaired.
BalanceReport check_detailed_balance(const WeightedDigraph& g,
                                     const StationaryVector& c,
                                     double tol = 1e-9);

/// Undirected edge set in lexicographic (min, max) order. A bidirected pair
/// collapses to one edge oriented low-index = tail; a lone directed branch
/// keeps its own orientation (tail = source, head = target).
std::vector<UndirectedEdge> undirected_edges(const WeightedDigraph& g);

IncidenceMatrix incidence_matrix(const WeightedDigraph& g);

}  // namespace gradnet
