#pragma once

#include "gradnet/fisher.hpp"
#include "gradnet/integrator.hpp"
#include "gradnet/scenario.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gradnet {

enum class FormChoice { X, Q, Both };

/// Result of one scenario execution: the schema-stable verification report
/// plus the raw records for trace export. The x record is the primary one
/// when both forms run.
struct ScenarioRun {
    nlohmann::ordered_json report;
    bool overall_pass = false;
    std::optional<TrajectoryRecord> x_record;
    std::optional<TrajectoryRecord> q_record;
    std::optional<DeBruijnSeries> debruijn;
};

/// Builds the system, runs the requested forms, and evaluates every verdict:
/// detailed balance, metric structure, conservation, divergence-family
/// monotonicity, dissipation identity, passivity, convergence, form
/// equivalence, and the scenario's own expectations. Construction and
/// domain errors propagate; verdict failures only clear overall_pass.
ScenarioRun execute_scenario(const Scenario& sc, FormChoice form = FormChoice::Both);

/// Aggregate over executed scenarios, pass iff every run passed.
nlohmann::ordered_json suite_summary(const std::vector<std::string>& names,
                                     const std::vector<ScenarioRun>& runs);

}  // namespace gradnet
