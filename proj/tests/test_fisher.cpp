#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gradnet/fisher.hpp"

#include "support/random_systems.hpp"

#include <cmath>
#include <numbers>

using namespace gradnet;

namespace {

GradientSystem two_node_linear() {
    WeightedDigraph g(2, {{1, 0, 2.0}, {0, 1, 1.0}});
    return GradientSystem(std::move(g), CouplingFunction::linear(), EnergyFunction::quadratic());
}

// integral representation of the logarithmic mean: int_0^1 a^s b^(1-s) ds,
// composite Simpson over an even sample count
double simpson_mean(double a, double b, int intervals = 2000) {
    auto f = [&](double s) { return std::pow(a, s) * std::pow(b, 1.0 - s); };
    const double h = 1.0 / intervals;
    double acc = f(0.0) + f(1.0);
    for (int k = 1; k < intervals; ++k) acc += f(k * h) * ((k % 2) ? 4.0 : 2.0);
    return acc * h / 3.0;
}

}  // namespace

TEST_CASE("information functional of the two-node exchange") {
    GradientSystem sys = two_node_linear();
    Vector x(2);
    x << 0.0, 3.0;
    FisherReport rep = fisher_information(sys, x);
    // matches the negated dissipation rate -dE/dt = 6 at the same state
    CHECK(rep.j == doctest::Approx(6.0).epsilon(1e-14));
    REQUIRE(rep.edge_terms.size() == 1);
    CHECK(rep.edge_terms[0] == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(rep.edge_densities.empty());  // state holds a zero component

    Vector xp(2);
    xp << 1.0, 2.5;
    FisherReport pos = fisher_information(sys, xp);
    CHECK(pos.edge_densities.size() == 1);
}

TEST_CASE("information equals negated dissipation across the catalog") {
    auto rng = testsupport::frozen_rng(15);
    std::uniform_int_distribution<int> size(2, 8);
    for (const auto& phi : testsupport::coupling_catalog()) {
        for (const auto& energy : testsupport::energy_catalog()) {
            auto g = testsupport::random_balanced_graph(rng, size(rng));
            GradientSystem sys(g, phi, energy);
            Vector x = testsupport::random_state(rng, sys.size());

            FisherReport rep = fisher_information(sys, x);
            double diss = dissipation_rate(sys, sys.to_q(x));
            CHECK(std::abs(rep.j + diss) < 1e-10 * std::max(1.0, std::abs(rep.j)));

            double sum = 0.0;
            for (double term : rep.edge_terms) sum += term;
            CHECK(std::abs(sum - rep.j) < 1e-12 * std::max(1.0, std::abs(rep.j)));
        }
    }
}

TEST_CASE("logarithmic mean closed values") {
    CHECK(log_mean(4.0, 2.0) == doctest::Approx(2.8853900817779268).epsilon(1e-15));
    CHECK(log_mean(2.0, 4.0) == doctest::Approx(2.8853900817779268).epsilon(1e-15));
    CHECK(log_mean(std::exp(1.0), 1.0) == doctest::Approx(1.718281828459045).epsilon(1e-14));
    CHECK(log_mean(0.7, 0.7) == 0.7);  // equal arguments pass through
}

TEST_CASE("logarithmic mean sits between the geometric and arithmetic means") {
    auto rng = testsupport::frozen_rng(16);
    std::uniform_real_distribution<double> unif(0.05, 9.0);
    for (int trial = 0; trial < 200; ++trial) {
        double a = unif(rng), b = unif(rng);
        double lm = log_mean(a, b);
        CHECK(lm >= std::sqrt(a * b) - 1e-12);
        CHECK(lm <= 0.5 * (a + b) + 1e-12);
        CHECK(lm == log_mean(b, a));
    }
}

TEST_CASE("logarithmic mean matches its integral representation") {
    for (auto [a, b] : {std::pair{2.7, 0.4}, {1.0, 1.0}, {5.5, 5.4}, {0.08, 3.0}}) {
        CHECK(std::abs(log_mean(a, b) - simpson_mean(a, b)) < 1e-8);
    }
}

TEST_CASE("edge density generalizes the logarithmic mean") {
    auto linear = CouplingFunction::linear();
    CHECK(std::abs(edge_density(linear, 4.0, 2.0) - log_mean(4.0, 2.0)) < 1e-12);

    // sinusoidal at quarter-turn offset: sin(pi/2) / log1p(pi/2)
    auto sinu = CouplingFunction::sinusoidal();
    CHECK(edge_density(sinu, 1.0 + std::numbers::pi / 2.0, 1.0) ==
          doctest::Approx(1.0590800322081295).epsilon(1e-12));

    // near the diagonal the density approaches the state value
    CHECK(std::abs(edge_density(sinu, 1.3, 1.3) - 1.3) < 1e-5);
    CHECK(std::abs(edge_density(linear, 2.0, 2.0) - 2.0) < 1e-5);
}

TEST_CASE("dissipation identity holds along a sampled run") {
    WeightedDigraph g(2, {{1, 0, 2.0}, {0, 1, 1.0}});
    GradientSystem sys(g, CouplingFunction::linear(), EnergyFunction::relative_entropy());
    Vector x0(2);
    x0 << 2.0, 0.5;

    auto run = [&](double dt) {
        IntegratorConfig cfg;
        cfg.dt = dt;
        cfg.horizon = 2.0;
        cfg.monitor_every = 10;
        TrajectoryRecord rec = simulate(sys, x0, cfg, Form::X);
        return debruijn_residual(rec, sys);
    };

    DeBruijnSeries coarse = run(2.5e-4);
    CHECK(coarse.max_relative_residual > 0.0);
    CHECK(coarse.max_relative_residual < 1e-4);
    REQUIRE(coarse.t.size() >= 2);
    REQUIRE(coarse.j.size() == coarse.t.size());
    CHECK(coarse.j.front() > 0.0);

    // halving the sample spacing contracts the central-difference error at
    // second order
    DeBruijnSeries fine = run(1.25e-4);
    double ratio = coarse.max_relative_residual / fine.max_relative_residual;
    CHECK(ratio > 2.5);
    CHECK(ratio < 6.0);
}
