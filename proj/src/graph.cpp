#include "gradnet/graph.hpp"

#include "gradnet/errors.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace gradnet {

std::string Interval::describe() const {
    std::ostringstream os;
    os << (open_lo ? '(' : '[') << lo << ", " << hi << (open_hi ? ')' : ']');
    return os.str();
}

WeightedDigraph::WeightedDigraph(int node_count, std::vector<Branch> branches)
    : n_(node_count), branches_(std::move(branches)) {
    if (n_ <= 0) throw Error("graph: node count must be positive");
    for (const Branch& b : branches_) {
        if (b.from < 0 || b.from >= n_ || b.to < 0 || b.to >= n_) {
            throw Error("graph: branch endpoint out of range");
        }
        if (b.from == b.to) throw Error("graph: self-loops are not admitted");
        if (!(b.weight > 0.0) || !std::isfinite(b.weight)) {
            throw Error("graph: branch weights must be strictly positive and finite");
        }
        auto [it, inserted] = weight_of_.emplace(std::make_pair(b.from, b.to), b.weight);
        (void)it;
        if (!inserted) {
            std::ostringstream os;
            os << "graph: duplicate branch (" << b.from + 1 << " -> " << b.to + 1 << ")";
            throw Error(os.str());
        }
    }
}

double WeightedDigraph::weight(int to, int from) const {
    auto it = weight_of_.find(std::make_pair(from, to));
    return it == weight_of_.end() ? 0.0 : it->second;
}

Matrix build_laplacian(const WeightedDigraph& g) {
    const int n = g.node_count();
    Matrix lap = Matrix::Zero(n, n);
    for (const Branch& b : g.branches()) {
        lap(b.to, b.from) -= b.weight;
        lap(b.to, b.to) += b.weight;
    }
    return lap;
}

namespace {

// Reachability sweep from node 0 along `forward` or reversed branches.
std::vector<bool> reachable(const WeightedDigraph& g, bool forward) {
    const int n = g.node_count();
    std::vector<std::vector<int>> adj(n);
    for (const Branch& b : g.branches()) {
        if (forward) {
            adj[b.from].push_back(b.to);
        } else {
            adj[b.to].push_back(b.from);
        }
    }
    std::vector<bool> seen(n, false);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : adj[u]) {
            if (!seen[v]) {
                seen[v] = true;
                stack.push_back(v);
            }
        }
    }
    return seen;
}

}  // namespace

bool is_strongly_connected(const WeightedDigraph& g) {
    if (g.node_count() == 1) return true;
    auto fwd = reachable(g, true);
    auto bwd = reachable(g, false);
    for (int i = 0; i < g.node_count(); ++i) {
        if (!fwd[i] || !bwd[i]) return false;
    }
    return true;
}

StationaryVector stationary_vector(const Matrix& laplacian) {
    const int n = static_cast<int>(laplacian.rows());
    Vector c = Vector::Ones(n);
    if (n > 1) {
        // Pin c_1 = 1 and solve rows 2..n of L^T c = 0 for the rest.
        const Matrix lt = laplacian.transpose();
        const Matrix sub = lt.block(1, 1, n - 1, n - 1);
        const Vector rhs = -lt.block(1, 0, n - 1, 1);
        Eigen::FullPivLU<Matrix> lu(sub);
        if (!lu.isInvertible()) {
            throw SingularStructure(
                "stationary vector: zero eigenvalue is not simple; graph is not strongly connected");
        }
        c.tail(n - 1) = lu.solve(rhs);
    }
    if (c.minCoeff() <= 0.0) {
        throw SingularStructure(
            "stationary vector: left kernel direction is not strictly positive; graph is not strongly connected");
    }
    c /= c.sum();
    const double scale = std::max(1.0, laplacian.cwiseAbs().maxCoeff());
    const double residual = (c.transpose() * laplacian).cwiseAbs().maxCoeff();
    if (residual > 1e-10 * scale) {
        throw SingularStructure("stationary vector: residual ||c^T L|| too large");
    }
    return StationaryVector{c};
}

BalanceReport check_detailed_balance(const WeightedDigraph& g,
                                     const StationaryVector& c,
                                     double tol) {
    if (c.size() != g.node_count()) {
        throw Error("check_detailed_balance: stationary vector size does not match graph");
    }
    BalanceReport report;
    const int n = g.node_count();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double wij = g.weight(i, j);
            const double wji = g.weight(j, i);
            if (wij == 0.0 && wji == 0.0) continue;
            const double flux_ij = c.c(i) * wij;
            const double flux_ji = c.c(j) * wji;
            const double diff = std::abs(flux_ij - flux_ji);
            const double rel =
                diff / std::max({1.0, std::abs(flux_ij), std::abs(flux_ji)});
            report.max_residual = std::max(report.max_residual, rel);
            const bool ok = diff <= tol * std::max(1.0, std::abs(flux_ij)) &&
                            diff <= tol * std::max(1.0, std::abs(flux_ji));
            if (!ok) {
                report.balanced = false;
                report.violations.push_back({i, j, flux_ij, flux_ji});
                report.violations.push_back({j, i, flux_ji, flux_ij});
            }
        }
    }
    return report;
}

std::vector<UndirectedEdge> undirected_edges(const WeightedDigraph& g) {
    std::vector<UndirectedEdge> edges;
    for (const Branch& b : g.branches()) {
        const int a = std::min(b.from, b.to);
        const int bb = std::max(b.from, b.to);
        const bool both = g.has_branch(a, bb) && g.has_branch(bb, a);
        if (both && b.from != a) continue;  // keep one column per pair
        UndirectedEdge e{a, bb, 0, 0};
        if (both) {
            e.tail = a;
            e.head = bb;
        } else {
            e.tail = b.from;
            e.head = b.to;
        }
        edges.push_back(e);
    }
    std::sort(edges.begin(), edges.end(), [](const UndirectedEdge& l, const UndirectedEdge& r) {
        return std::make_pair(l.a, l.b) < std::make_pair(r.a, r.b);
    });
    return edges;
}

IncidenceMatrix incidence_matrix(const WeightedDigraph& g) {
    IncidenceMatrix inc;
    inc.edges = undirected_edges(g);
    inc.m = Matrix::Zero(g.node_count(), static_cast<int>(inc.edges.size()));
    for (int e = 0; e < inc.edge_count(); ++e) {
        inc.m(inc.edges[e].head, e) = 1.0;
        inc.m(inc.edges[e].tail, e) = -1.0;
    }
    return inc;
}

}  // namespace gradnet
