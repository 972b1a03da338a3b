#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gradnet/circuit.hpp"
#include "gradnet/errors.hpp"

#include "support/random_systems.hpp"

#include <cmath>
#include <random>

using namespace gradnet;

namespace {

GradientSystem two_node_linear() {
    WeightedDigraph g(2, {{1, 0, 2.0}, {0, 1, 1.0}});
    return GradientSystem(std::move(g), CouplingFunction::linear(), EnergyFunction::quadratic());
}

GradientSystem uniform_triangle(CouplingFunction phi, EnergyFunction energy) {
    WeightedDigraph g(3, {{0, 1, 1.0}, {1, 0, 1.0}, {1, 2, 1.0}, {2, 1, 1.0},
                          {0, 2, 1.0}, {2, 0, 1.0}});
    return GradientSystem(std::move(g), std::move(phi), std::move(energy));
}

}  // namespace

TEST_CASE("conductance of the two-node exchange") {
    GradientSystem sys = two_node_linear();
    Vector x(2);
    x << 0.4, 1.9;
    auto edges = synthesize_conductances(sys, x);
    REQUIRE(edges.size() == 1);
    CHECK(edges[0].i == 0);
    CHECK(edges[0].j == 1);
    // mu = 2/3 and the linear/quadratic ratio is exactly one
    CHECK(edges[0].conductance == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(edges[0].resistance() == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(edges[0].strictly_passive());
}

TEST_CASE("edge factorization of the uniform triangle") {
    GradientSystem sys = uniform_triangle(CouplingFunction::linear(), EnergyFunction::quadratic());
    Vector x(3);
    x << 0.3, 1.1, 2.2;
    MetricMatrix k = assemble_K(sys, x);
    IncidenceMatrix binc = incidence_matrix(sys.graph());
    Vector d = kirchhoff_factorization(k, binc);
    REQUIRE(d.size() == 3);
    // every edge carries mu = (1/3 + 1/3) / 2 = 1/3
    for (int e = 0; e < 3; ++e) CHECK(d(e) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    Matrix rebuilt = binc.m * d.asDiagonal() * binc.m.transpose();
    CHECK((rebuilt - k.k).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("factorization reconstructs the metric on random systems") {
    auto rng = testsupport::frozen_rng(9);
    std::uniform_int_distribution<int> size(2, 8);
    for (const auto& phi : testsupport::coupling_catalog()) {
        for (const auto& energy : testsupport::energy_catalog()) {
            auto g = testsupport::random_balanced_graph(rng, size(rng));
            GradientSystem sys(g, phi, energy);
            Vector x = testsupport::random_state(rng, sys.size());

            MetricMatrix k = assemble_K(sys, x);
            IncidenceMatrix binc = incidence_matrix(sys.graph());
            Vector d = kirchhoff_factorization(k, binc);
            Matrix rebuilt = binc.m * d.asDiagonal() * binc.m.transpose();
            CHECK((rebuilt - k.k).cwiseAbs().maxCoeff() < 1e-12);

            // conductances agree with the factorization diagonal, edge by edge
            auto res = synthesize_conductances(sys, x);
            REQUIRE(static_cast<int>(res.size()) == d.size());
            for (int e = 0; e < d.size(); ++e)
                CHECK(std::abs(res[e].conductance - d(e)) < 1e-12);
        }
    }
}

TEST_CASE("factorization rejects a metric that couples non-edges") {
    GradientSystem tri = uniform_triangle(CouplingFunction::linear(), EnergyFunction::quadratic());
    Vector x(3);
    x << 0.5, 1.0, 1.5;
    MetricMatrix k = assemble_K(tri, x);  // couples all three pairs

    WeightedDigraph path(3, {{0, 1, 1.0}, {1, 0, 1.0}, {1, 2, 1.0}, {2, 1, 1.0}});
    IncidenceMatrix path_inc = incidence_matrix(path);  // lacks the (0, 2) edge
    CHECK_THROWS_AS(kirchhoff_factorization(k, path_inc), SparsityMismatch);

    WeightedDigraph pair(2, {{0, 1, 1.0}, {1, 0, 1.0}});
    CHECK_THROWS_AS(kirchhoff_factorization(k, incidence_matrix(pair)), SparsityMismatch);
}

TEST_CASE("verdict: every convex catalog pairing is all passive") {
    auto rng = testsupport::frozen_rng(10);
    for (const auto& phi : testsupport::coupling_catalog()) {
        for (const auto& energy : testsupport::energy_catalog()) {
            auto g = testsupport::random_balanced_graph(rng, 5);
            GradientSystem sys(g, phi, energy);
            PassivityReport rep = passivity_report(sys, testsupport::random_state(rng, 5));
            CHECK(rep.verdict == PassivityVerdict::AllPassive);
            CHECK(rep.min_conductance > 0.0);
            CHECK(rep.lambda_min > -1e-10);
        }
    }
}

TEST_CASE("verdict: active edge bridged by a passive path stays dissipative") {
    // phase spread 3.3 exceeds pi on edge (0,1): its conductance is negative,
    // but the two half-spread edges in parallel keep the metric PSD
    GradientSystem sys = uniform_triangle(CouplingFunction::sinusoidal(),
                                          EnergyFunction::quadratic());
    Vector x(3);
    x << 0.0, 3.3, 1.65;
    PassivityReport rep = passivity_report(sys, x);
    CHECK(rep.verdict == PassivityVerdict::LocallyActiveButDissipative);
    CHECK(rep.min_conductance < 0.0);
    CHECK(rep.lambda_min > -1e-10);

    int active = 0;
    for (const auto& e : rep.edges)
        if (!e.strictly_passive()) ++active;
    CHECK(active == 1);

    // independent eigenvalue check of the assembled metric
    MetricMatrix k = assemble_K(sys, x);
    Eigen::SelfAdjointEigenSolver<Matrix> es(k.k);
    CHECK(es.eigenvalues().minCoeff() > -1e-12);
}

TEST_CASE("verdict: non-convex density loses dissipativity") {
    WeightedDigraph g(2, {{1, 0, 1.0}, {0, 1, 1.0}});
    auto well = EnergyFunction::custom(
        [](double z) { return 0.25 * z * z * z * z - 0.5 * z * z; },
        [](double z) { return z * z * z - z; }, Interval::all_reals(), "double_well");
    GradientSystem sys(g, CouplingFunction::linear(), well);
    Vector x(2);
    x << 0.1, -0.1;
    PassivityReport rep = passivity_report(sys, x);
    CHECK(rep.verdict == PassivityVerdict::NotDissipative);
    CHECK(rep.lambda_min < -1e-10);
    CHECK(to_string(rep.verdict) == "not_dissipative");
}

TEST_CASE("verdict strings") {
    CHECK(to_string(PassivityVerdict::AllPassive) == "all_passive");
    CHECK(to_string(PassivityVerdict::LocallyActiveButDissipative) ==
          "locally_active_but_dissipative");
}

TEST_CASE("capacitor bank reads voltage as the energy gradient") {
    StationaryVector c;
    c.c = Vector(2);
    c.c << 1.0 / 3.0, 2.0 / 3.0;
    Vector q(2);
    q << 0.5, 0.5;
    CapacitorBank bank(c, EnergyFunction::quadratic(), q);
    // quadratic density: voltage = C^{-1} q = terminal state
    CHECK((bank.node_voltage() - bank.terminal_state()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(bank.terminal_state()(0) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(bank.terminal_state()(1) == doctest::Approx(0.75).epsilon(1e-14));

    Vector q2(2);
    q2 << 1.0, 1.0;
    bank.set_charge(q2);
    CHECK(bank.charge()(0) == 1.0);

    // entropy density: voltage = ln(x) + 1
    CapacitorBank ent(c, EnergyFunction::relative_entropy(), q2);
    CHECK(ent.node_voltage()(0) == doctest::Approx(std::log(3.0) + 1.0).epsilon(1e-14));

    Vector bad(3);
    bad << 1.0, 1.0, 1.0;
    CHECK_THROWS_AS(CapacitorBank(c, EnergyFunction::quadratic(), bad), DomainViolation);
    CHECK_THROWS_AS(bank.set_charge(bad), DomainViolation);
}

TEST_CASE("netlist text is stable") {
    GradientSystem sys = two_node_linear();
    Vector x(2);
    x << 1.0, 2.0;
    Netlist net = make_netlist(sys, x);
    CHECK(netlist_text(net) ==
          "* synthesized capacitor-resistor network, 2 nodes, 1 resistors\n"
          "* reference state: 1 2\n"
          "C1 1 0 0.333333333333\n"
          "C2 2 0 0.666666666667\n"
          "R1 1 2 1.5\n");
}

TEST_CASE("conductance query rejects a wrong-size state") {
    GradientSystem sys = two_node_linear();
    Vector bad(3);
    bad << 1.0, 2.0, 3.0;
    CHECK_THROWS_AS(synthesize_conductances(sys, bad), DomainViolation);
}
