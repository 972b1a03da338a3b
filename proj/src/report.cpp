#include "gradnet/report.hpp"

#include "gradnet/circuit.hpp"
#include "gradnet/errors.hpp"
#include "gradnet/markov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace gradnet {

namespace {

using nlohmann::ordered_json;

bool frame_ok(const TrajectoryRecord& rec) {
    return rec.drive.size() == 0 || rec.drive_uniform;
}

ordered_json detailed_balance_section(const GradientSystem& sys) {
    const BalanceReport rep = check_detailed_balance(sys.graph(), sys.c(), 1e-9);
    ordered_json j;
    j["pass"] = rep.balanced;
    j["max_residual"] = rep.max_residual;
    return j;
}

ordered_json k_structure_section(const GradientSystem& sys, const TrajectoryRecord& rec) {
    double max_asym = 0.0;
    double max_rowsum = 0.0;
    double min_eig = std::numeric_limits<double>::infinity();
    const int m = rec.samples();
    const int stride = std::max(1, m / 64);
    for (int k = 0; k < m; k += stride) {
        const MetricMatrix km = assemble_K(sys, rec.detrended_x(k));
        max_asym = std::max(max_asym, (km.k - km.k.transpose()).cwiseAbs().maxCoeff());
        max_rowsum =
            std::max(max_rowsum, (km.k * Vector::Ones(km.k.cols())).cwiseAbs().maxCoeff());
        min_eig = std::min(min_eig, verify_psd(km).lambda_min);
    }
    long psd_failures = 0;
    for (char ok : rec.psd_ok) psd_failures += ok ? 0 : 1;
    const bool psd_all = psd_failures == 0;
    const bool psd_required = !rec.wrap_hazard;

    ordered_json j;
    j["pass"] = max_asym <= 1e-12 && max_rowsum <= 1e-12 && (!psd_required || psd_all);
    j["max_asymmetry"] = max_asym;
    j["max_row_sum"] = max_rowsum;
    j["min_eigenvalue"] = min_eig;
    j["psd_required"] = psd_required;
    j["psd_all_samples"] = psd_all;
    j["psd_failures"] = psd_failures;
    return j;
}

ordered_json conservation_section(const std::vector<const TrajectoryRecord*>& recs,
                                  const GradientSystem& sys) {
    double max_drift = 0.0;
    for (const TrajectoryRecord* rec : recs) {
        const ConvergenceReport rep = convergence_report(*rec, sys);
        max_drift = std::max(max_drift, rep.max_conservation_drift);
    }
    ordered_json j;
    j["pass"] = max_drift <= 1e-9;
    j["max_drift"] = max_drift;
    return j;
}

ordered_json lyapunov_section(const GradientSystem& sys, const TrajectoryRecord& rec,
                              std::vector<std::string>& warnings) {
    struct Family {
        std::string key;
        EnergyFunction energy;
    };
    const std::vector<Family> families = {
        {"quadratic", EnergyFunction::quadratic()},
        {"relative_entropy", EnergyFunction::relative_entropy()},
        {"power_law_3", EnergyFunction::power_law(3.0)},
    };

    const int m = rec.samples();
    const bool claim_ok = frame_ok(rec) && !rec.wrap_hazard;
    bool all_pass = true;
    ordered_json fams = ordered_json::array();
    for (const Family& fam : families) {
        bool in_domain = true;
        for (int k = 0; k < m && in_domain; ++k) {
            const Vector x = rec.detrended_x(k);
            for (Eigen::Index i = 0; i < x.size(); ++i) {
                if (!fam.energy.domain().contains(x(i))) {
                    in_domain = false;
                    break;
                }
            }
        }
        const bool applicable = claim_ok && in_domain;
        double max_increase = 0.0;
        if (applicable) {
            double prev = 0.0;
            for (int k = 0; k < m; ++k) {
                const Vector x = rec.detrended_x(k);
                double e = 0.0;
                for (Eigen::Index i = 0; i < x.size(); ++i) {
                    e += sys.c().c(i) * fam.energy.density(x(i));
                }
                if (k > 0) max_increase = std::max(max_increase, e - prev);
                prev = e;
            }
        } else if (claim_ok) {
            warnings.push_back("divergence family " + fam.key +
                               " skipped: trajectory leaves its domain");
        }
        const bool pass = !applicable || max_increase <= 1e-9;
        all_pass = all_pass && pass;
        ordered_json f;
        f["name"] = fam.key;
        f["applicable"] = applicable;
        f["max_increase"] = max_increase;
        f["pass"] = pass;
        fams.push_back(std::move(f));
    }
    ordered_json j;
    j["pass"] = all_pass;
    j["families"] = std::move(fams);
    return j;
}

ordered_json debruijn_section(const GradientSystem& sys, const TrajectoryRecord& rec,
                              ScenarioRun& run) {
    const bool applicable = frame_ok(rec);
    double max_gap = 0.0;
    double max_rel_residual = 0.0;
    long residual_samples = 0;
    bool identity_pass = true;
    if (applicable) {
        const int m = rec.samples();
        for (int k = 0; k < m; ++k) {
            const double jk = fisher_information(sys, rec.detrended_x(k)).j;
            const double gap = std::abs(jk + rec.dissipation[k]);
            max_gap = std::max(max_gap, gap);
            if (gap > 1e-10 * std::max(1.0, std::abs(jk))) identity_pass = false;
        }
        run.debruijn = debruijn_residual(rec, sys);
        max_rel_residual = run.debruijn->max_relative_residual;
        residual_samples = static_cast<long>(run.debruijn->t.size());
    }
    ordered_json j;
    j["pass"] = !applicable || identity_pass;
    j["applicable"] = applicable;
    j["max_identity_gap"] = max_gap;
    j["max_relative_residual"] = max_rel_residual;
    j["residual_samples"] = residual_samples;
    return j;
}

ordered_json passivity_section(const TrajectoryRecord& rec, const Expectations& expect) {
    const int m = rec.samples();
    double min_g = std::numeric_limits<double>::infinity();
    bool all_psd = true;
    long flips = 0;
    for (int k = 0; k < m; ++k) {
        min_g = std::min(min_g, rec.min_conductance[k]);
        all_psd = all_psd && rec.psd_ok[k];
        if (k > 0 && rec.active_edges[k] != rec.active_edges[k - 1]) ++flips;
    }
    PassivityVerdict verdict;
    if (min_g > 0.0) {
        verdict = PassivityVerdict::AllPassive;
    } else if (all_psd) {
        verdict = PassivityVerdict::LocallyActiveButDissipative;
    } else {
        verdict = PassivityVerdict::NotDissipative;
    }
    bool pass = true;
    if (expect.assert_all_passive) pass = pass && verdict == PassivityVerdict::AllPassive;
    if (expect.expect_sign_flips) pass = pass && flips >= 1;

    ordered_json j;
    j["pass"] = pass;
    j["verdict"] = to_string(verdict);
    j["min_conductance"] = min_g;
    j["sign_flip_events"] = flips;
    j["all_passive_asserted"] = expect.assert_all_passive;
    j["sign_flips_expected"] = expect.expect_sign_flips;
    return j;
}

ordered_json convergence_section(const GradientSystem& sys,
                                 const std::vector<const TrajectoryRecord*>& recs,
                                 const Expectations& expect) {
    const ConvergenceReport primary = convergence_report(*recs.front(), sys);
    bool verdicts = true;
    for (const TrajectoryRecord* rec : recs) {
        verdicts = verdicts && convergence_report(*rec, sys).verdict;
    }
    bool expected_mean_ok = true;
    if (expect.final_mean.has_value()) {
        expected_mean_ok = std::abs(primary.predicted - *expect.final_mean) <= 1e-9;
    }
    const bool asserted = expect.assert_convergence;

    ordered_json j;
    j["pass"] = !asserted || (verdicts && expected_mean_ok);
    j["asserted"] = asserted;
    j["converged"] = primary.converged;
    j["convergence_time"] = primary.converged ? primary.convergence_time : -1.0;
    j["predicted"] = primary.predicted;
    if (expect.final_mean.has_value()) {
        j["expected"] = *expect.final_mean;
    } else {
        j["expected"] = nullptr;
    }
    j["terminal_error"] = primary.terminal_error;
    j["max_energy_increase"] = primary.max_energy_increase;
    return j;
}

ordered_json form_equivalence_section(const ScenarioRun& run,
                                      std::vector<std::string>& warnings) {
    const bool applicable = run.x_record.has_value() && run.q_record.has_value();
    double max_gap = 0.0;
    bool pass = true;
    if (applicable) {
        const TrajectoryRecord& rx = *run.x_record;
        const TrajectoryRecord& rq = *run.q_record;
        if (rx.samples() != rq.samples()) {
            warnings.push_back("form runs produced different sample counts (" +
                               std::to_string(rx.samples()) + " vs " +
                               std::to_string(rq.samples()) + ")");
        }
        const int m = std::min(rx.samples(), rq.samples());
        for (int k = 0; k < m; ++k) {
            max_gap = std::max(max_gap, (rx.x[k] - rq.x[k]).cwiseAbs().maxCoeff());
            max_gap = std::max(max_gap, (rx.q[k] - rq.q[k]).cwiseAbs().maxCoeff());
        }
        pass = max_gap <= 1e-8;
    }
    ordered_json j;
    j["pass"] = pass;
    j["applicable"] = applicable;
    j["max_gap"] = max_gap;
    return j;
}

ordered_json roundtrip_section(const GradientSystem& sys, const Scenario& sc) {
    const bool applicable = sc.expect.circuit_roundtrip.has_value();
    bool pass = true;
    bool exact = false;
    double max_cap_error = 0.0;
    double max_res_error = 0.0;
    if (applicable) {
        const RoundTripSpec& spec = *sc.expect.circuit_roundtrip;
        const Netlist net = make_netlist(sys, sc.x0);
        const double scale = spec.capacitances.sum();
        exact = net.capacitances.size() == spec.capacitances.size() &&
                net.resistors.size() == spec.resistances.size();
        for (Eigen::Index i = 0; exact && i < net.capacitances.size(); ++i) {
            const double recovered = net.capacitances(i) * scale;
            max_cap_error = std::max(max_cap_error, std::abs(recovered - spec.capacitances(i)));
            exact = exact && recovered == spec.capacitances(i);
        }
        for (const auto& [i, j, r] : spec.resistances) {
            const int a = std::min(i, j);
            const int b = std::max(i, j);
            bool found = false;
            for (const ResistorEdge& e : net.resistors) {
                if (e.i == a && e.j == b) {
                    const double recovered = 1.0 / (e.conductance * scale);
                    max_res_error = std::max(max_res_error, std::abs(recovered - r));
                    exact = exact && recovered == r;
                    found = true;
                    break;
                }
            }
            exact = exact && found;
            if (!exact) break;
        }
        pass = exact;
    }
    ordered_json j;
    j["pass"] = pass;
    j["applicable"] = applicable;
    j["exact"] = exact;
    j["max_capacitance_error"] = max_cap_error;
    j["max_resistance_error"] = max_res_error;
    return j;
}

ordered_json positivity_section(const std::vector<const TrajectoryRecord*>& recs,
                                const Expectations& expect) {
    double min_state = std::numeric_limits<double>::infinity();
    for (const TrajectoryRecord* rec : recs) {
        for (const Vector& x : rec->x) min_state = std::min(min_state, x.minCoeff());
    }
    ordered_json j;
    j["pass"] = !expect.assert_positivity || min_state > 0.0;
    j["asserted"] = expect.assert_positivity;
    j["min_state"] = min_state;
    return j;
}

ordered_json simplex_section(const std::vector<const TrajectoryRecord*>& recs,
                             const Expectations& expect) {
    double max_sum_residual = 0.0;
    double min_charge = std::numeric_limits<double>::infinity();
    for (const TrajectoryRecord* rec : recs) {
        for (const Vector& q : rec->q) {
            max_sum_residual = std::max(max_sum_residual, std::abs(q.sum() - 1.0));
            min_charge = std::min(min_charge, q.minCoeff());
        }
    }
    ordered_json j;
    j["pass"] = !expect.assert_simplex || (max_sum_residual <= 1e-9 && min_charge >= -1e-12);
    j["asserted"] = expect.assert_simplex;
    j["max_sum_residual"] = max_sum_residual;
    j["min_charge"] = min_charge;
    return j;
}

}  // namespace

ScenarioRun execute_scenario(const Scenario& sc, FormChoice form) {
    GradientSystem sys(sc.graph, sc.coupling, sc.energy);

    ScenarioRun run;
    if (form != FormChoice::Q) {
        run.x_record = simulate(sys, sc.x0, sc.config, Form::X, sc.drive);
    }
    if (form != FormChoice::X) {
        run.q_record = simulate(sys, sc.x0, sc.config, Form::Q, sc.drive);
    }
    const TrajectoryRecord& primary = run.x_record ? *run.x_record : *run.q_record;
    std::vector<const TrajectoryRecord*> recs;
    if (run.x_record) recs.push_back(&*run.x_record);
    if (run.q_record) recs.push_back(&*run.q_record);

    std::vector<std::string> warnings;
    bool wrap = false;
    for (const TrajectoryRecord* rec : recs) wrap = wrap || rec->wrap_hazard;
    if (wrap) {
        warnings.push_back(
            "state spread left the coupling's sign window; metric positivity and divergence "
            "decay are not asserted on this run");
    }
    if (wrap && !sc.expect.expect_wrap_hazard) {
        warnings.push_back("wrap hazard occurred but was not declared in the expectations");
    }

    ordered_json rep;
    rep["name"] = sc.name;
    rep["nodes"] = sys.size();
    rep["undirected_edges"] = static_cast<long>(sys.edges().size());
    rep["coupling"] = sc.coupling.name();
    rep["energy"] = sc.energy.name();
    ordered_json forms = ordered_json::array();
    if (run.x_record) forms.push_back("x");
    if (run.q_record) forms.push_back("q");
    rep["forms_run"] = std::move(forms);
    rep["integrator"] = {{"dt", primary.dt},
                         {"monitor_every", primary.monitor_every},
                         {"tol_conv", primary.tol_conv},
                         {"steps_taken", primary.steps_taken},
                         {"samples", primary.samples()}};
    rep["driven"] = primary.drive.size() > 0;
    rep["drive_uniform"] = primary.drive_uniform;
    rep["wrap_hazard"] = wrap;
    rep["wrap_hazard_expected"] = sc.expect.expect_wrap_hazard;

    rep["detailed_balance"] = detailed_balance_section(sys);
    rep["k_structure"] = k_structure_section(sys, primary);
    rep["conservation"] = conservation_section(recs, sys);
    rep["lyapunov"] = lyapunov_section(sys, primary, warnings);
    rep["debruijn"] = debruijn_section(sys, primary, run);
    rep["passivity"] = passivity_section(primary, sc.expect);
    rep["convergence"] = convergence_section(sys, recs, sc.expect);
    rep["form_equivalence"] = form_equivalence_section(run, warnings);
    rep["roundtrip"] = roundtrip_section(sys, sc);
    rep["positivity"] = positivity_section(recs, sc.expect);
    rep["simplex"] = simplex_section(recs, sc.expect);

    const bool wrap_expect_ok = !sc.expect.expect_wrap_hazard || wrap;
    rep["wrap_expectation_pass"] = wrap_expect_ok;

    bool overall = wrap_expect_ok;
    for (const char* key : {"detailed_balance", "k_structure", "conservation", "lyapunov",
                            "debruijn", "passivity", "convergence", "form_equivalence",
                            "roundtrip", "positivity", "simplex"}) {
        overall = overall && rep[key]["pass"].get<bool>();
    }
    rep["warnings"] = warnings;
    rep["overall_pass"] = overall;

    run.report = std::move(rep);
    run.overall_pass = overall;
    return run;
}

nlohmann::ordered_json suite_summary(const std::vector<std::string>& names,
                                     const std::vector<ScenarioRun>& runs) {
    ordered_json summary;
    ordered_json rows = ordered_json::array();
    long passed = 0;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        ordered_json row;
        row["name"] = i < names.size() ? names[i] : std::string("scenario_") + std::to_string(i);
        row["pass"] = runs[i].overall_pass;
        if (runs[i].overall_pass) ++passed;
        rows.push_back(std::move(row));
    }
    summary["scenarios"] = std::move(rows);
    summary["total"] = static_cast<long>(runs.size());
    summary["passed"] = passed;
    summary["failed"] = static_cast<long>(runs.size()) - passed;
    summary["all_pass"] = passed == static_cast<long>(runs.size());
    return summary;
}

}  // namespace gradnet
