#pragma once

#include "gradnet/coupling.hpp"
#include "gradnet/energy.hpp"
#include "gradnet/graph.hpp"
#include "gradnet/integrator.hpp"
#include "gradnet/types.hpp"

#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace gradnet {

/// Target of the circuit round-trip assertion: the capacitances and
/// resistances the synthesized netlist must recover. Node indices 0-based,
/// one entry per undirected edge.
struct RoundTripSpec {
    Vector capacitances;
    std::vector<std::tuple<int, int, double>> resistances;
};

/// Assertions a run of the scenario must satisfy; everything not switched on
/// here is still reported but not enforced.
struct Expectations {
    bool assert_convergence = false;
    std::optional<double> final_mean;  // consensus value, rotating frame for driven runs
    bool assert_all_passive = false;
    bool expect_wrap_hazard = false;
    bool expect_sign_flips = false;
    bool assert_positivity = false;  // every sampled state component stays positive
    bool assert_simplex = false;     // charge stays a probability vector
    std::optional<RoundTripSpec> circuit_roundtrip;
};

struct Scenario {
    std::string name;
    WeightedDigraph graph;
    CouplingFunction coupling;
    EnergyFunction energy;
    Vector x0;
    Vector drive;  // size 0 when undriven
    IntegratorConfig config;
    Expectations expect;
};

/// Averaging capacitor-resistor circuit: weights w_kj = 1 / (c_k r_kj).
/// Detailed balance holds by construction and the synthesized circuit
/// round-trips the inputs. Capacitances are raw (unnormalized); resistances
/// are (i, j, r) with 0-based nodes, one per undirected edge.
Scenario rc_consensus_scenario(const Vector& capacitances,
                               const std::vector<std::tuple<int, int, double>>& resistances,
                               const Vector& x0, std::string name = "rc_consensus");

/// Separable coupling g(x) = x^p on positive states; the whole divergence
/// family decays along the run.
Scenario porous_medium_scenario(const WeightedDigraph& graph, double p, const Vector& x0,
                                std::string name = "porous_medium");

/// Saturated-gain coupling |tanh(p z)| z.
Scenario opinion_scenario(const WeightedDigraph& graph, double p, const Vector& x0,
                          std::string name = "opinion");

/// Sinusoidal coupling with natural-frequency drive omega. Convergence to a
/// common phase in the rotating frame is asserted only when omega is uniform
/// and the initial spread is below pi; otherwise the run is recorded without
/// a convergence claim. Throws DetailedBalanceViolation for weight patterns
/// without detailed balance.
Scenario kuramoto_scenario(const WeightedDigraph& graph, const Vector& omega,
                           const Vector& theta0, std::string name = "kuramoto");

/// Prepackaged catalog executed by the suite; names are unique.
const std::vector<Scenario>& built_in_scenarios();

}  // namespace gradnet
