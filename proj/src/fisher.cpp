#include "gradnet/fisher.hpp"

#include "gradnet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

namespace gradnet {

FisherReport fisher_information(const GradientSystem& sys, const Vector& x) {
    if (x.size() != sys.size()) {
        throw DomainViolation("fisher_information: state has " + std::to_string(x.size()) +
                              " entries for " + std::to_string(sys.size()) + " nodes");
    }
    std::map<std::pair<int, int>, int> edge_index;
    for (std::size_t e = 0; e < sys.edges().size(); ++e) {
        const UndirectedEdge& ue = sys.edges()[e];
        edge_index[{ue.a, ue.b}] = static_cast<int>(e);
    }

    FisherReport rep;
    rep.edge_terms.assign(sys.edges().size(), 0.0);
    for (const Branch& b : sys.graph().branches()) {
        const double term = 0.5 * sys.c().c(b.to) * b.weight *
                            sys.coupling()(x(b.from), x(b.to)) *
                            (sys.energy().derivative(x(b.from)) - sys.energy().derivative(x(b.to)));
        rep.j += term;
        rep.edge_terms[edge_index.at({std::min(b.from, b.to), std::max(b.from, b.to)})] += term;
    }

    if (x.minCoeff() > 0.0) {
        rep.edge_densities.reserve(sys.edges().size());
        for (const UndirectedEdge& e : sys.edges()) {
            rep.edge_densities.push_back(edge_density(sys.coupling(), x(e.a), x(e.b)));
        }
    }
    return rep;
}

double log_mean(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw DomainViolation("log_mean: arguments must be positive");
    }
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    const double d = std::log1p((hi - lo) / lo);  // ln(hi) - ln(lo), cancellation-free
    if (std::abs(d) < 1e-8) {
        return hi == lo ? hi : 0.5 * (hi + lo);
    }
    return (hi - lo) / d;
}

double edge_density(const CouplingFunction& phi, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw DomainViolation("edge_density: arguments must be positive");
    }
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    const double d = std::log1p((hi - lo) / lo);
    if (std::abs(d) < 1e-8) {
        const double delta = 1e-6 * std::max(1.0, lo);
        const double probe = lo + delta;
        const double r = phi(probe, lo) / std::log1p(delta / lo);
        if (!std::isfinite(r)) {
            throw NonFiniteRatio("edge_density: secant fallback degenerated at " +
                                 std::to_string(lo));
        }
        return r;
    }
    return phi(hi, lo) / d;
}

DeBruijnSeries debruijn_residual(const TrajectoryRecord& rec, const GradientSystem& sys) {
    DeBruijnSeries out;
    const int m = rec.samples();
    if (m < 3) return out;

    double max_j = 0.0;
    for (int k = 1; k + 1 < m; ++k) {
        const double back = rec.t[k] - rec.t[k - 1];
        const double fwd = rec.t[k + 1] - rec.t[k];
        if (std::abs(fwd - back) > 1e-12 * std::max(back, fwd)) continue;

        const double jk = fisher_information(sys, rec.detrended_x(k)).j;
        const double dedt = (rec.energy[k + 1] - rec.energy[k - 1]) / (rec.t[k + 1] - rec.t[k - 1]);
        out.t.push_back(rec.t[k]);
        out.j.push_back(jk);
        out.residual.push_back(dedt + jk);
        max_j = std::max(max_j, std::abs(jk));
    }

    for (std::size_t k = 0; k < out.residual.size(); ++k) {
        out.max_abs_residual = std::max(out.max_abs_residual, std::abs(out.residual[k]));
        if (std::abs(out.j[k]) >= 1e-6 * max_j && out.j[k] != 0.0) {
            out.max_relative_residual =
                std::max(out.max_relative_residual, std::abs(out.residual[k] / out.j[k]));
        }
    }
    return out;
}

}  // namespace gradnet
