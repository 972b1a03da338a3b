#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gradnet/report.hpp"

#include <string>
#include <vector>

using namespace gradnet;

namespace {

const Scenario& by_name(const std::string& name) {
    for (const Scenario& sc : built_in_scenarios())
        if (sc.name == name) return sc;
    REQUIRE(false);
    return built_in_scenarios().front();
}

const std::vector<const char*> kSections = {
    "detailed_balance", "k_structure", "conservation", "lyapunov", "debruijn",
    "passivity",        "convergence", "form_equivalence", "roundtrip", "positivity",
    "simplex"};

}  // namespace

TEST_CASE("report carries every section with a pass flag, for every scenario") {
    for (const Scenario& sc : built_in_scenarios()) {
        ScenarioRun run = execute_scenario(sc);
        const auto& rep = run.report;
        CHECK(rep["name"] == sc.name);
        for (const char* key : kSections) {
            INFO(sc.name << " section " << key);
            REQUIRE(rep.contains(key));
            REQUIRE(rep[key].contains("pass"));
            CHECK(rep[key]["pass"].is_boolean());
        }
        CHECK(rep.contains("wrap_expectation_pass"));
        CHECK(rep.contains("warnings"));
        CHECK(rep.contains("overall_pass"));
        CHECK(rep["forms_run"].size() == 2);
        CHECK(rep["integrator"].contains("dt"));
        CHECK(run.x_record.has_value());
        CHECK(run.q_record.has_value());
    }
}

TEST_CASE("every built-in scenario passes") {
    for (const Scenario& sc : built_in_scenarios()) {
        ScenarioRun run = execute_scenario(sc);
        INFO(sc.name << ": " << run.report.dump(2));
        CHECK(run.overall_pass);
    }
}

TEST_CASE("consensus circuit run recovers its own elements exactly") {
    ScenarioRun run = execute_scenario(by_name("rc_2node"));
    const auto& rt = run.report["roundtrip"];
    CHECK(rt["applicable"] == true);
    CHECK(rt["pass"] == true);
    CHECK(rt["exact"] == true);
    CHECK(rt["max_capacitance_error"] == 0.0);
    CHECK(rt["max_resistance_error"] == 0.0);
}

TEST_CASE("wide phase run reports the hazard and the sign flips it expects") {
    ScenarioRun run = execute_scenario(by_name("kuramoto_wide"));
    const auto& rep = run.report;
    CHECK(rep["wrap_hazard"] == true);
    CHECK(rep["wrap_hazard_expected"] == true);
    CHECK(rep["wrap_expectation_pass"] == true);
    CHECK(rep["passivity"]["verdict"] == "locally_active_but_dissipative");
    CHECK(rep["passivity"]["min_conductance"].get<double>() < 0.0);
    CHECK(rep["passivity"]["sign_flip_events"].get<long>() >= 1);
    CHECK(rep["passivity"]["pass"] == true);
    // the metric stays PSD even though an edge is active
    CHECK(rep["k_structure"]["psd_failures"].get<long>() == 0);
    // divergence decay is suppressed, not asserted, outside the window
    CHECK(rep["lyapunov"]["pass"] == true);
    for (const auto& fam : rep["lyapunov"]["families"]) {
        CHECK(fam["applicable"] == false);
    }
    CHECK(rep["warnings"].size() >= 1);
    CHECK(run.overall_pass);
}

TEST_CASE("calm phase run asserts convergence in the rotating frame") {
    ScenarioRun run = execute_scenario(by_name("kuramoto_complete4"));
    const auto& rep = run.report;
    CHECK(rep["driven"] == true);
    CHECK(rep["drive_uniform"] == true);
    CHECK(rep["wrap_hazard"] == false);
    CHECK(rep["convergence"]["asserted"] == true);
    CHECK(rep["convergence"]["pass"] == true);
    CHECK(rep["conservation"]["pass"] == true);
    CHECK(run.overall_pass);
}

TEST_CASE("entropy run checks the dissipation identity pointwise") {
    ScenarioRun run = execute_scenario(by_name("debruijn_entropy"));
    const auto& db = run.report["debruijn"];
    CHECK(db["applicable"] == true);
    CHECK(db["pass"] == true);
    CHECK(db["max_relative_residual"].get<double>() < 1e-4);
    CHECK(db["residual_samples"].get<long>() > 10);
    REQUIRE(run.debruijn.has_value());
    CHECK(run.debruijn->max_relative_residual == db["max_relative_residual"].get<double>());

    // all three divergence families decay on this run
    for (const auto& fam : run.report["lyapunov"]["families"]) {
        CHECK(fam["applicable"] == true);
        CHECK(fam["pass"] == true);
    }
}

TEST_CASE("probability-vector run stays on the simplex") {
    ScenarioRun run = execute_scenario(by_name("markov_chain3"));
    const auto& sx = run.report["simplex"];
    CHECK(sx["asserted"] == true);
    CHECK(sx["pass"] == true);
    CHECK(sx["max_sum_residual"].get<double>() <= 1e-9);
    CHECK(sx["min_charge"].get<double>() >= -1e-12);
    CHECK(run.report["convergence"]["expected"].get<double>() == 1.0);
}

TEST_CASE("single-form execution skips the cross-check") {
    ScenarioRun run = execute_scenario(by_name("rc_2node"), FormChoice::X);
    CHECK(run.x_record.has_value());
    CHECK_FALSE(run.q_record.has_value());
    CHECK(run.report["form_equivalence"]["applicable"] == false);
    CHECK(run.report["form_equivalence"]["pass"] == true);
    CHECK(run.report["forms_run"].size() == 1);
    CHECK(run.overall_pass);
}

TEST_CASE("form equivalence gap stays at rounding level") {
    ScenarioRun run = execute_scenario(by_name("porous_p2_2node"));
    const auto& fe = run.report["form_equivalence"];
    CHECK(fe["applicable"] == true);
    CHECK(fe["max_gap"].get<double>() < 1e-8);
}

TEST_CASE("suite summary counts outcomes") {
    std::vector<std::string> names;
    std::vector<ScenarioRun> runs;
    for (const char* name : {"rc_2node", "porous_p2_2node"}) {
        names.push_back(name);
        runs.push_back(execute_scenario(by_name(name)));
    }
    auto summary = suite_summary(names, runs);
    CHECK(summary["total"] == 2);
    CHECK(summary["passed"] == 2);
    CHECK(summary["failed"] == 0);
    CHECK(summary["all_pass"] == true);
    CHECK(summary["scenarios"][0]["name"] == "rc_2node");

    runs[0].overall_pass = false;
    auto mixed = suite_summary(names, runs);
    CHECK(mixed["passed"] == 1);
    CHECK(mixed["all_pass"] == false);
}
