#include "gradnet/circuit.hpp"
#include "gradnet/errors.hpp"
#include "gradnet/io.hpp"
#include "gradnet/report.hpp"
#include "gradnet/scenario.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <future>
#include <iostream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;
using gradnet::FormChoice;
using gradnet::Scenario;
using gradnet::ScenarioRun;

struct Options {
    std::string out_dir = ".";
    bool emit_netlist = false;
    std::string form = "both";
    double dt = 0.0;
    double horizon = 0.0;
    bool dt_set = false;
    bool horizon_set = false;
    std::string filter;
};

FormChoice form_choice(const std::string& form) {
    if (form == "x") return FormChoice::X;
    if (form == "q") return FormChoice::Q;
    return FormChoice::Both;
}

void apply_overrides(Scenario& sc, const Options& opt) {
    if (opt.dt_set) sc.config.dt = opt.dt;
    if (opt.horizon_set) sc.config.horizon = opt.horizon;
}

std::string json_text(const nlohmann::ordered_json& doc) { return doc.dump(2) + "\n"; }

/// Writes the artifacts for one executed scenario and returns their paths.
std::vector<std::string> write_artifacts(const Scenario& sc, const ScenarioRun& run,
                                         const Options& opt, bool with_traces) {
    std::vector<std::string> paths;
    const fs::path dir(opt.out_dir);

    if (with_traces) {
        const gradnet::DeBruijnSeries* extra = run.debruijn ? &*run.debruijn : nullptr;
        if (run.x_record) {
            const fs::path p = dir / (sc.name + "_trace_x.csv");
            gradnet::io::write_text_atomic(p.string(),
                                           gradnet::io::trace_csv(*run.x_record, extra));
            paths.push_back(p.string());
            extra = nullptr;  // residual columns belong to the primary record only
        }
        if (run.q_record) {
            const fs::path p = dir / (sc.name + "_trace_q.csv");
            gradnet::io::write_text_atomic(p.string(),
                                           gradnet::io::trace_csv(*run.q_record, extra));
            paths.push_back(p.string());
        }
    }
    if (with_traces && opt.emit_netlist) {
        gradnet::GradientSystem sys(sc.graph, sc.coupling, sc.energy);
        const gradnet::Netlist net = gradnet::make_netlist(sys, sc.x0);
        const fs::path cir = dir / (sc.name + "_netlist.cir");
        gradnet::io::write_text_atomic(cir.string(), gradnet::netlist_text(net));
        paths.push_back(cir.string());
        const fs::path nj = dir / (sc.name + "_netlist.json");
        gradnet::io::write_text_atomic(nj.string(), json_text(gradnet::io::netlist_json(net)));
        paths.push_back(nj.string());
    }
    const fs::path rp = dir / (sc.name + "_report.json");
    gradnet::io::write_text_atomic(rp.string(), json_text(run.report));
    paths.push_back(rp.string());
    return paths;
}

int run_one(const std::string& scenario_path, const Options& opt, bool with_traces) {
    Scenario sc = gradnet::io::load_scenario(scenario_path);
    apply_overrides(sc, opt);
    fs::create_directories(opt.out_dir);
    const ScenarioRun run = gradnet::execute_scenario(sc, form_choice(opt.form));
    for (const std::string& p : write_artifacts(sc, run, opt, with_traces)) {
        std::cout << p << "\n";
    }
    if (!run.overall_pass) {
        std::cerr << "scenario " << sc.name << ": verification failed\n";
        for (const auto& warning : run.report["warnings"]) {
            std::cerr << "  warning: " << warning.get<std::string>() << "\n";
        }
        return 1;
    }
    return 0;
}

int run_suite(const Options& opt) {
    std::vector<Scenario> selected;
    for (const Scenario& sc : gradnet::built_in_scenarios()) {
        if (opt.filter.empty() || sc.name.find(opt.filter) != std::string::npos) {
            selected.push_back(sc);
            apply_overrides(selected.back(), opt);
        }
    }
    if (selected.empty()) {
        std::cerr << "no scenarios matched filter \"" << opt.filter << "\"\n";
        return 2;
    }
    fs::create_directories(opt.out_dir);

    const FormChoice form = form_choice(opt.form);
    std::vector<std::future<ScenarioRun>> futures;
    futures.reserve(selected.size());
    for (const Scenario& sc : selected) {
        futures.push_back(std::async(std::launch::async,
                                     [&sc, form] { return gradnet::execute_scenario(sc, form); }));
    }

    std::vector<ScenarioRun> runs;
    std::vector<std::string> names;
    runs.reserve(selected.size());
    for (std::size_t i = 0; i < selected.size(); ++i) {
        runs.push_back(futures[i].get());
        names.push_back(selected[i].name);
    }

    for (std::size_t i = 0; i < selected.size(); ++i) {
        for (const std::string& p : write_artifacts(selected[i], runs[i], opt, false)) {
            std::cout << p << "\n";
        }
    }
    const fs::path summary_path = fs::path(opt.out_dir) / "suite_summary.json";
    const nlohmann::ordered_json summary = gradnet::suite_summary(names, runs);
    gradnet::io::write_text_atomic(summary_path.string(), json_text(summary));
    std::cout << summary_path.string() << "\n";

    if (!summary["all_pass"].get<bool>()) {
        for (std::size_t i = 0; i < runs.size(); ++i) {
            if (!runs[i].overall_pass) {
                std::cerr << "scenario " << names[i] << ": verification failed\n";
            }
        }
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gradient-structured network dynamics: simulate, synthesize, verify"};
    app.require_subcommand(1);
    app.fallthrough(true);

    Options opt;
    app.add_option("--out", opt.out_dir, "output directory for artifacts");
    app.add_flag("--emit-netlist", opt.emit_netlist, "also write the synthesized netlist");
    app.add_option("--form", opt.form, "which dynamics form to integrate")
        ->check(CLI::IsMember({"x", "q", "both"}));
    auto* dt_opt = app.add_option("--dt", opt.dt, "override the integrator step size");
    auto* horizon_opt = app.add_option("--horizon", opt.horizon, "override the time horizon");
    app.add_option("--filter", opt.filter, "substring filter for suite scenario names");

    std::string scenario_path;
    CLI::App* cmd_run = app.add_subcommand("run", "run a scenario file and write all artifacts");
    cmd_run->add_option("scenario", scenario_path, "scenario JSON file")->required();
    CLI::App* cmd_verify =
        app.add_subcommand("verify", "run a scenario file and write only the report");
    cmd_verify->add_option("scenario", scenario_path, "scenario JSON file")->required();
    CLI::App* cmd_suite = app.add_subcommand("suite", "run every built-in scenario");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    opt.dt_set = dt_opt->count() > 0;
    opt.horizon_set = horizon_opt->count() > 0;

    try {
        if (cmd_run->parsed()) return run_one(scenario_path, opt, true);
        if (cmd_verify->parsed()) return run_one(scenario_path, opt, false);
        if (cmd_suite->parsed()) return run_suite(opt);
        std::cerr << "no command given\n";
        return 2;
    } catch (const gradnet::ParseError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 2;
    } catch (const gradnet::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 3;
    }
}
