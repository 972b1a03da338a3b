#include "gradnet/scenario.hpp"

#include "gradnet/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

namespace gradnet {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw DomainViolation(msg);
}

bool nearly_uniform(const Vector& v) {
    if (v.size() == 0) return true;
    const double hi = v.maxCoeff();
    return (hi - v.minCoeff()) <= 1e-12 * std::max(1.0, std::abs(hi));
}

WeightedDigraph complete_graph(int n, double w) {
    std::vector<Branch> branches;
    branches.reserve(static_cast<std::size_t>(n) * (n - 1));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) branches.push_back(Branch{j, i, w});
        }
    }
    return WeightedDigraph(n, branches);
}

WeightedDigraph two_node_21() {
    return WeightedDigraph(2, {Branch{1, 0, 2.0}, Branch{0, 1, 1.0}});
}

}  // namespace

Scenario rc_consensus_scenario(const Vector& capacitances,
                               const std::vector<std::tuple<int, int, double>>& resistances,
                               const Vector& x0, std::string name) {
    const int n = static_cast<int>(capacitances.size());
    require(n >= 2, "rc_consensus_scenario: need at least two nodes");
    require(x0.size() == n, "rc_consensus_scenario: initial state size does not match");
    for (int i = 0; i < n; ++i) {
        require(capacitances(i) > 0.0 && std::isfinite(capacitances(i)),
                "rc_consensus_scenario: capacitances must be positive and finite");
    }
    require(!resistances.empty(), "rc_consensus_scenario: need at least one resistor");

    std::vector<Branch> branches;
    branches.reserve(2 * resistances.size());
    for (const auto& [i, j, r] : resistances) {
        require(i >= 0 && i < n && j >= 0 && j < n && i != j,
                "rc_consensus_scenario: resistor endpoints out of range");
        require(r > 0.0 && std::isfinite(r), "rc_consensus_scenario: resistances must be positive");
        branches.push_back(Branch{j, i, 1.0 / (capacitances(i) * r)});
        branches.push_back(Branch{i, j, 1.0 / (capacitances(j) * r)});
    }

    Scenario sc{std::move(name),
                WeightedDigraph(n, branches),
                CouplingFunction::linear(),
                EnergyFunction::quadratic(),
                x0,
                Vector(),
                IntegratorConfig{},
                Expectations{}};
    sc.expect.assert_convergence = true;
    sc.expect.final_mean = capacitances.dot(x0) / capacitances.sum();
    sc.expect.assert_all_passive = true;
    sc.expect.circuit_roundtrip = RoundTripSpec{capacitances, resistances};
    return sc;
}

Scenario porous_medium_scenario(const WeightedDigraph& graph, double p, const Vector& x0,
                                std::string name) {
    require(p > 0.0 && std::isfinite(p), "porous_medium_scenario: exponent must be positive");
    require(x0.size() == graph.node_count(),
            "porous_medium_scenario: initial state size does not match");
    require(x0.minCoeff() > 0.0, "porous_medium_scenario: initial state must be positive");

    const StationaryVector c = stationary_vector(build_laplacian(graph));
    Scenario sc{std::move(name),
                graph,
                CouplingFunction::separable_power(p),
                EnergyFunction::relative_entropy(),
                x0,
                Vector(),
                IntegratorConfig{},
                Expectations{}};
    sc.expect.assert_convergence = true;
    sc.expect.final_mean = c.c.dot(x0);
    sc.expect.assert_all_passive = true;
    sc.expect.assert_positivity = true;
    return sc;
}

Scenario opinion_scenario(const WeightedDigraph& graph, double p, const Vector& x0,
                          std::string name) {
    require(p > 0.0 && std::isfinite(p), "opinion_scenario: gain must be positive");
    require(x0.size() == graph.node_count(), "opinion_scenario: initial state size does not match");
    return Scenario{std::move(name),
                    graph,
                    CouplingFunction::gain_tanh(p),
                    EnergyFunction::quadratic(),
                    x0,
                    Vector(),
                    IntegratorConfig{},
                    Expectations{}};
}

Scenario kuramoto_scenario(const WeightedDigraph& graph, const Vector& omega,
                           const Vector& theta0, std::string name) {
    const int n = graph.node_count();
    require(theta0.size() == n, "kuramoto_scenario: initial phases size does not match");
    require(omega.size() == 0 || omega.size() == n,
            "kuramoto_scenario: natural frequencies size does not match");

    const Matrix lap = build_laplacian(graph);
    const StationaryVector c = stationary_vector(lap);
    const BalanceReport balance = check_detailed_balance(graph, c, 1e-9);
    if (!balance.balanced) {
        std::ostringstream os;
        os << "kuramoto_scenario: weight pattern fails detailed balance ("
           << balance.violations.size() << " ordered pairs, max residual "
           << balance.max_residual << ")";
        throw DetailedBalanceViolation(os.str());
    }

    Vector drive;
    if (omega.size() == n && omega.cwiseAbs().maxCoeff() > 0.0) drive = omega;

    Scenario sc{std::move(name),
                graph,
                CouplingFunction::sinusoidal(),
                EnergyFunction::quadratic(),
                theta0,
                drive,
                IntegratorConfig{},
                Expectations{}};

    const double spread = theta0.maxCoeff() - theta0.minCoeff();
    const bool frame_ok = drive.size() == 0 || nearly_uniform(drive);
    if (spread < std::numbers::pi && frame_ok) {
        sc.expect.assert_convergence = true;
        sc.expect.final_mean = c.c.dot(theta0);
        sc.expect.assert_all_passive = true;
    } else if (spread > std::numbers::pi) {
        sc.expect.expect_wrap_hazard = true;
    }
    return sc;
}

const std::vector<Scenario>& built_in_scenarios() {
    static const std::vector<Scenario> catalog = [] {
        std::vector<Scenario> v;

        {
            Vector caps(2);
            caps << 1.0, 2.0;
            Vector x0(2);
            x0 << 0.0, 3.0;
            v.push_back(rc_consensus_scenario(caps, {{0, 1, 4.0}}, x0, "rc_2node"));
        }
        {
            Vector caps = Vector::Ones(4);
            Vector x0(4);
            x0 << 0.0, 1.0, 2.0, 4.0;
            Scenario sc = rc_consensus_scenario(caps, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}}, x0,
                                                "rc_path4");
            sc.config.horizon = 35.0;
            v.push_back(std::move(sc));
        }
        {
            Vector x0(2);
            x0 << 1.0, 4.0;
            v.push_back(porous_medium_scenario(two_node_21(), 2.0, x0, "porous_p2_2node"));
        }
        {
            Vector x0(2);
            x0 << 0.0, 3.0;
            Scenario sc = opinion_scenario(two_node_21(), 10.0, x0, "opinion_tanh10");
            sc.config.dt = 0.05;
            sc.config.horizon = 40000.0;
            sc.config.monitor_every = 1000;
            sc.config.stop_at_convergence = true;
            sc.expect.assert_convergence = true;
            sc.expect.final_mean = 2.0;
            v.push_back(std::move(sc));
        }
        {
            Vector theta0(4);
            theta0 << 0.0, 0.3 * std::numbers::pi, 0.6 * std::numbers::pi,
                0.9 * std::numbers::pi;
            Scenario sc = kuramoto_scenario(complete_graph(4, 0.5), Vector::Ones(4), theta0,
                                            "kuramoto_complete4");
            sc.config.horizon = 30.0;
            v.push_back(std::move(sc));
        }
        {
            Vector theta0(4);
            theta0 << 0.0, 0.4 * std::numbers::pi, 0.8 * std::numbers::pi,
                1.2 * std::numbers::pi;
            Scenario sc = kuramoto_scenario(complete_graph(4, 0.5), Vector::Ones(4), theta0,
                                            "kuramoto_wide");
            sc.config.horizon = 60.0;
            sc.expect.expect_sign_flips = true;
            v.push_back(std::move(sc));
        }
        {
            WeightedDigraph g(3, {Branch{1, 0, 2.0}, Branch{0, 1, 1.0}, Branch{2, 1, 3.0},
                                  Branch{1, 2, 1.0}});
            Vector q0(3);
            q0 << 0.6, 0.3, 0.1;
            const StationaryVector c = stationary_vector(build_laplacian(g));
            Scenario sc{"markov_chain3",
                        g,
                        CouplingFunction::linear(),
                        EnergyFunction::quadratic(),
                        q0.cwiseQuotient(c.c),
                        Vector(),
                        IntegratorConfig{},
                        Expectations{}};
            sc.config.horizon = 12.0;
            sc.expect.assert_convergence = true;
            sc.expect.final_mean = 1.0;
            sc.expect.assert_all_passive = true;
            sc.expect.assert_simplex = true;
            v.push_back(std::move(sc));
        }
        {
            Vector x0(2);
            x0 << 0.5, 2.0;
            Scenario sc{"debruijn_entropy",
                        two_node_21(),
                        CouplingFunction::linear(),
                        EnergyFunction::relative_entropy(),
                        x0,
                        Vector(),
                        IntegratorConfig{},
                        Expectations{}};
            sc.config.dt = 2e-4;
            sc.expect.assert_convergence = true;
            sc.expect.final_mean = 1.5;
            sc.expect.assert_all_passive = true;
            sc.expect.assert_positivity = true;
            v.push_back(std::move(sc));
        }
        {
            const Vector c_target = (Vector(3) << 0.2, 0.3, 0.5).finished();
            const double s01 = 1.0, s12 = 2.0, s02 = 1.5;
            WeightedDigraph g(3, {Branch{1, 0, s01 / c_target(0)}, Branch{0, 1, s01 / c_target(1)},
                                  Branch{2, 1, s12 / c_target(1)}, Branch{1, 2, s12 / c_target(2)},
                                  Branch{2, 0, s02 / c_target(0)}, Branch{0, 2, s02 / c_target(2)}});
            Vector theta0(3);
            theta0 << -1.2, 0.0, 1.2;
            Scenario sc = kuramoto_scenario(g, Vector::Zero(3), theta0, "droop_ring");
            sc.config.horizon = 8.0;
            v.push_back(std::move(sc));
        }
        return v;
    }();
    return catalog;
}

}  // namespace gradnet
