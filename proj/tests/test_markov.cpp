#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gradnet/errors.hpp"
#include "gradnet/markov.hpp"

#include "support/random_systems.hpp"

#include <cmath>

using namespace gradnet;

namespace {

GradientSystem two_node_linear() {
    WeightedDigraph g(2, {{1, 0, 2.0}, {0, 1, 1.0}});
    return GradientSystem(std::move(g), CouplingFunction::linear(), EnergyFunction::quadratic());
}

StationaryVector halves() {
    StationaryVector c;
    c.c = Vector(2);
    c.c << 0.5, 0.5;
    return c;
}

}  // namespace

TEST_CASE("generator of the two-node exchange recovers the rate matrix") {
    GradientSystem sys = two_node_linear();
    Vector x(2);
    x << 1.0, 4.0;
    GeneratorMatrix gen = to_generator(sys, x);
    // C^{-1} K with c = (1/3, 2/3) and the state-independent metric; the
    // dyadic c ratios make the division exact
    CHECK(gen.f(0, 0) == 2.0);
    CHECK(gen.f(0, 1) == -2.0);
    CHECK(gen.f(1, 0) == -1.0);
    CHECK(gen.f(1, 1) == 1.0);
}

TEST_CASE("generator requires the quadratic energy") {
    WeightedDigraph g(2, {{1, 0, 2.0}, {0, 1, 1.0}});
    GradientSystem sys(g, CouplingFunction::linear(), EnergyFunction::relative_entropy());
    Vector x(2);
    x << 1.0, 2.0;
    CHECK_THROWS_AS(to_generator(sys, x), WrongEnergyKind);
}

TEST_CASE("charge flow equals the adjoint generator action") {
    auto rng = testsupport::frozen_rng(11);
    std::uniform_int_distribution<int> size(2, 8);
    for (const auto& phi : testsupport::coupling_catalog()) {
        for (int trial = 0; trial < 4; ++trial) {
            auto g = testsupport::random_balanced_graph(rng, size(rng));
            GradientSystem sys(g, phi, EnergyFunction::quadratic());
            Vector x = testsupport::random_state(rng, sys.size());
            Vector q = sys.to_q(x);

            GeneratorMatrix gen = to_generator(sys, x);
            Vector via_generator = -(gen.f.transpose() * q);
            Vector via_metric = gradient_vector_field(sys, q);
            CHECK((via_generator - via_metric).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("generator is self-adjoint against the invariant measure") {
    auto rng = testsupport::frozen_rng(12);
    for (const auto& phi : testsupport::coupling_catalog()) {
        auto g = testsupport::random_balanced_graph(rng, 6);
        GradientSystem sys(g, phi, EnergyFunction::quadratic());
        Vector x = testsupport::random_state(rng, 6);
        GeneratorMatrix gen = to_generator(sys, x);

        Matrix cmat = sys.c().diagonal();
        CHECK((cmat * gen.f - gen.f.transpose() * cmat).cwiseAbs().maxCoeff() < 1e-10);

        // rows of a generator sum to zero; off-diagonal rates are non-positive
        CHECK(gen.f.rowwise().sum().cwiseAbs().maxCoeff() < 1e-10);

        StationaryVector inv = invariant_distribution(gen);
        CHECK((inv.c - sys.c().c).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("invariant distribution of the two-node generator") {
    GradientSystem sys = two_node_linear();
    Vector x(2);
    x << 0.0, 1.0;
    StationaryVector inv = invariant_distribution(to_generator(sys, x));
    CHECK(inv.c(0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(inv.c(1) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("divergence to equilibrium: relative entropy value") {
    StationaryVector c;
    c.c = Vector(2);
    c.c << 1.0 / 3.0, 2.0 / 3.0;
    Vector q(2);
    q << 0.6, 0.4;
    // sum_i q_i ln(q_i / c_i)
    CHECK(divergence_to_equilibrium(EnergyFunction::relative_entropy(), c, q) ==
          doctest::Approx(0.14834174943487521).epsilon(1e-14));
}

TEST_CASE("divergence vanishes exactly at equilibrium") {
    StationaryVector c;
    c.c = Vector(3);
    c.c << 0.2, 0.3, 0.5;
    CHECK(divergence_to_equilibrium(EnergyFunction::relative_entropy(), c, c.c) == 0.0);
}

TEST_CASE("an exactly zero entry contributes the z ln z limit") {
    Vector q(2);
    q << 0.0, 1.0;
    CHECK(divergence_to_equilibrium(EnergyFunction::relative_entropy(), halves(), q) ==
          doctest::Approx(0.6931471805599453).epsilon(1e-14));
}

TEST_CASE("equilibrium minimizes the divergence") {
    auto rng = testsupport::frozen_rng(13);
    StationaryVector c;
    c.c = Vector(3);
    c.c << 0.2, 0.3, 0.5;
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    for (const auto& energy : testsupport::energy_catalog()) {
        double at_c = divergence_to_equilibrium(energy, c, c.c);
        for (int trial = 0; trial < 30; ++trial) {
            Vector q(3);
            for (int i = 0; i < 3; ++i) q(i) = unif(rng);
            q /= q.sum();
            CHECK(divergence_to_equilibrium(energy, c, q) >= at_c - 1e-14);
        }
    }
}

TEST_CASE("divergence rejects malformed distributions") {
    auto ent = EnergyFunction::relative_entropy();
    Vector negative(2);
    negative << -0.2, 1.2;
    CHECK_THROWS_AS(divergence_to_equilibrium(ent, halves(), negative), DomainViolation);

    Vector unnormalized(2);
    unnormalized << 0.6, 0.6;
    CHECK_THROWS_AS(divergence_to_equilibrium(ent, halves(), unnormalized), DomainViolation);

    StationaryVector bad_c;
    bad_c.c = Vector(2);
    bad_c.c << 0.7, 0.7;
    Vector q(2);
    q << 0.5, 0.5;
    CHECK_THROWS_AS(divergence_to_equilibrium(ent, bad_c, q), DomainViolation);
}
