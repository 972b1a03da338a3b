#pragma once

// Frozen-seed generators for property tests. Every draw goes through one
// mt19937 so a failing case reproduces from the seed alone.

#include "gradnet/coupling.hpp"
#include "gradnet/energy.hpp"
#include "gradnet/gradient_system.hpp"
#include "gradnet/graph.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace testsupport {

inline std::mt19937 frozen_rng(unsigned salt = 0) { return std::mt19937(0x5eedu + salt); }

// Strongly connected digraph with detailed balance by construction: pick
// node potentials c_i, give every undirected edge a symmetric flux s_e and
// set w_ij = s_e / c_i, so c_i w_ij = s_e = c_j w_ji. A spanning tree keeps
// it connected; extra edges add cycles.
inline gradnet::WeightedDigraph random_balanced_graph(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> flux(0.2, 2.0);
    std::uniform_real_distribution<double> pot(0.2, 1.2);
    std::vector<double> c(n);
    for (double& ci : c) ci = pot(rng);

    std::vector<std::pair<int, int>> pairs;
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> parent(0, v - 1);
        pairs.emplace_back(parent(rng), v);
    }
    int spare_pairs = n * (n - 1) / 2 - static_cast<int>(pairs.size());
    int extras = std::min(n / 2, spare_pairs);
    std::uniform_int_distribution<int> node(0, n - 1);
    while (extras > 0) {
        int a = node(rng), b = node(rng);
        if (a == b) continue;
        std::pair<int, int> key{std::min(a, b), std::max(a, b)};
        bool seen = false;
        for (auto& p : pairs)
            if (p == key) seen = true;
        if (seen) continue;
        pairs.push_back(key);
        --extras;
    }

    std::vector<gradnet::Branch> branches;
    for (auto [a, b] : pairs) {
        double s = flux(rng);
        branches.push_back({a, b, s / c[b]});  // into b from a
        branches.push_back({b, a, s / c[a]});
    }
    return gradnet::WeightedDigraph(n, std::move(branches));
}

inline gradnet::Vector random_state(std::mt19937& rng, int n, double lo = 0.6, double hi = 2.8) {
    std::uniform_real_distribution<double> dist(lo, hi);
    gradnet::Vector x(n);
    for (int i = 0; i < n; ++i) x(i) = dist(rng);
    return x;
}

// Couplings valid on positive states with spread well under pi, paired below
// with energies whose domain is z > 0, so any state from random_state works.
inline std::vector<gradnet::CouplingFunction> coupling_catalog() {
    return {
        gradnet::CouplingFunction::linear(),
        gradnet::CouplingFunction::odd_power(1.7),
        gradnet::CouplingFunction::gain_tanh(2.0),
        gradnet::CouplingFunction::sinusoidal(),
        gradnet::CouplingFunction::separable_log(),
        gradnet::CouplingFunction::separable_power(2.0),
        gradnet::CouplingFunction::separable_exp(),
    };
}

inline std::vector<gradnet::EnergyFunction> energy_catalog() {
    return {
        gradnet::EnergyFunction::quadratic(),
        gradnet::EnergyFunction::relative_entropy(),
        gradnet::EnergyFunction::power_law(3.0),
        gradnet::EnergyFunction::power_law(1.5),
    };
}

}  // namespace testsupport
