#include "gradnet/markov.hpp"

#include "gradnet/errors.hpp"
#include "gradnet/graph.hpp"

#include <cmath>
#include <string>

namespace gradnet {

GeneratorMatrix to_generator(const GradientSystem& sys, const Vector& x) {
    if (sys.energy().kind() != EnergyKind::Quadratic) {
        throw WrongEnergyKind("to_generator: the probability-flow reading needs the quadratic "
                              "density, got " +
                              sys.energy().name());
    }
    const MetricMatrix k = assemble_K(sys, x);
    GeneratorMatrix gen;
    gen.x = x;
    gen.f = k.k;
    for (Eigen::Index i = 0; i < gen.f.rows(); ++i) gen.f.row(i) /= sys.c().c(i);
    return gen;
}

StationaryVector invariant_distribution(const GeneratorMatrix& gen) {
    return stationary_vector(gen.f);
}

double divergence_to_equilibrium(const EnergyFunction& energy, const StationaryVector& c,
                                 const Vector& q) {
    if (q.size() != c.size()) {
        throw DomainViolation("divergence_to_equilibrium: q has " + std::to_string(q.size()) +
                              " entries for " + std::to_string(c.size()) + " states");
    }
    if (c.size() == 0) throw DomainViolation("divergence_to_equilibrium: empty distribution");
    if (c.c.minCoeff() <= 0.0 || std::abs(c.c.sum() - 1.0) > 1e-12) {
        throw DomainViolation(
            "divergence_to_equilibrium: reference measure is not a positive probability vector");
    }
    if (q.minCoeff() < 0.0 || std::abs(q.sum() - 1.0) > 1e-12) {
        throw DomainViolation("divergence_to_equilibrium: q is not a probability vector");
    }
    double e = 0.0;
    for (Eigen::Index i = 0; i < q.size(); ++i) {
        if (q(i) == 0.0 && energy.kind() == EnergyKind::RelativeEntropy) {
            continue;  // z ln z -> 0 as z -> 0+
        }
        e += c.c(i) * energy.density(q(i) / c.c(i));
    }
    return e;
}

}  // namespace gradnet
