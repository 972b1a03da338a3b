#pragma once

#include "gradnet/circuit.hpp"
#include "gradnet/fisher.hpp"
#include "gradnet/integrator.hpp"
#include "gradnet/scenario.hpp"

#include "json.hpp"

#include <string>

namespace gradnet::io {

/// Parses the scenario document (keys: name, graph, coupling, energy,
/// initial_state, optional drive / integrator / expect). Node indices are
/// 1-based in JSON. Throws ParseError on any schema violation.
Scenario scenario_from_json(const nlohmann::json& doc);

/// Reads and parses a scenario file; unreadable files and invalid JSON also
/// raise ParseError.
Scenario load_scenario(const std::string& path);

/// Inverse of scenario_from_json for catalog couplings and energies.
nlohmann::ordered_json scenario_to_json(const Scenario& sc);

/// CSV with header t,x1..xn,q1..qn,E,dEdt,wmean,psd_ok and one row per
/// sample, 12 significant digits. When a residual series is supplied the
/// columns J,debruijn_res are appended; samples without a residual (the
/// endpoints) carry nan.
std::string trace_csv(const TrajectoryRecord& rec, const DeBruijnSeries* extra = nullptr);

nlohmann::ordered_json netlist_json(const Netlist& netlist);

/// Writes through a temporary file in the target directory plus rename, so
/// readers never observe a partial file.
void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace gradnet::io
