#include "gradnet/io.hpp"

#include "gradnet/errors.hpp"
#include "gradnet/numfmt.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace gradnet::io {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void expect(bool ok, const std::string& msg) {
    if (!ok) throw ParseError("scenario schema: " + msg);
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& context) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        expect(allowed.count(it.key()) > 0, context + " has unknown key \"" + it.key() + "\"");
    }
}

double number_field(const json& obj, const std::string& key, const std::string& context) {
    expect(obj.contains(key), context + " is missing \"" + key + "\"");
    expect(obj[key].is_number(), context + " key \"" + key + "\" must be a number");
    return obj[key].get<double>();
}

Vector vector_field(const json& arr, const std::string& context) {
    expect(arr.is_array(), context + " must be an array of numbers");
    Vector v(arr.size());
    Eigen::Index k = 0;
    for (const json& entry : arr) {
        expect(entry.is_number(), context + " must contain only numbers");
        v(k++) = entry.get<double>();
    }
    return v;
}

double param_p(const json& obj, const std::string& context) {
    expect(obj.contains("params"), context + " needs a \"params\" object with \"p\"");
    expect(obj["params"].is_object(), context + " \"params\" must be an object");
    reject_unknown_keys(obj["params"], {"p"}, context + " params");
    return number_field(obj["params"], "p", context + " params");
}

CouplingFunction parse_coupling(const json& obj) {
    expect(obj.is_object(), "\"coupling\" must be an object");
    reject_unknown_keys(obj, {"kind", "params"}, "coupling");
    expect(obj.contains("kind") && obj["kind"].is_string(), "coupling needs a string \"kind\"");
    const std::string kind = obj["kind"].get<std::string>();
    try {
        if (kind == "linear") return CouplingFunction::linear();
        if (kind == "sinusoidal") return CouplingFunction::sinusoidal();
        if (kind == "odd_power") return CouplingFunction::odd_power(param_p(obj, "coupling"));
        if (kind == "gain_tanh") return CouplingFunction::gain_tanh(param_p(obj, "coupling"));
        if (kind == "separable_identity") return CouplingFunction::separable_identity();
        if (kind == "separable_power")
            return CouplingFunction::separable_power(param_p(obj, "coupling"));
        if (kind == "separable_log") return CouplingFunction::separable_log();
        if (kind == "separable_exp") return CouplingFunction::separable_exp();
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(std::string("coupling: ") + e.what());
    }
    throw ParseError("coupling kind \"" + kind + "\" is not in the catalog");
}

EnergyFunction parse_energy(const json& obj) {
    expect(obj.is_object(), "\"energy\" must be an object");
    reject_unknown_keys(obj, {"kind", "params"}, "energy");
    expect(obj.contains("kind") && obj["kind"].is_string(), "energy needs a string \"kind\"");
    const std::string kind = obj["kind"].get<std::string>();
    try {
        if (kind == "quadratic") return EnergyFunction::quadratic();
        if (kind == "relative_entropy") return EnergyFunction::relative_entropy();
        if (kind == "power_law") return EnergyFunction::power_law(param_p(obj, "energy"));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(std::string("energy: ") + e.what());
    }
    throw ParseError("energy kind \"" + kind + "\" is not in the catalog");
}

WeightedDigraph parse_graph(const json& obj) {
    expect(obj.is_object(), "\"graph\" must be an object");
    reject_unknown_keys(obj, {"nodes", "branches"}, "graph");
    expect(obj.contains("nodes") && obj["nodes"].is_number_integer(),
           "graph needs an integer \"nodes\"");
    const int nodes = obj["nodes"].get<int>();
    expect(obj.contains("branches") && obj["branches"].is_array(),
           "graph needs a \"branches\" array");
    std::vector<Branch> branches;
    for (const json& row : obj["branches"]) {
        expect(row.is_array() && row.size() == 3,
               "each graph branch must be [from, to, weight] with 1-based nodes");
        expect(row[0].is_number_integer() && row[1].is_number_integer() && row[2].is_number(),
               "each graph branch must be [from, to, weight] with integer endpoints");
        branches.push_back(
            Branch{row[0].get<int>() - 1, row[1].get<int>() - 1, row[2].get<double>()});
    }
    try {
        return WeightedDigraph(nodes, branches);
    } catch (const Error& e) {
        throw ParseError(std::string("graph: ") + e.what());
    }
}

IntegratorConfig parse_integrator(const json& obj) {
    expect(obj.is_object(), "\"integrator\" must be an object");
    reject_unknown_keys(obj, {"dt", "horizon", "tol_conv", "monitor_every", "stop_at_convergence"},
                        "integrator");
    IntegratorConfig cfg;
    if (obj.contains("dt")) {
        expect(obj["dt"].is_number(), "integrator \"dt\" must be a number");
        cfg.dt = obj["dt"].get<double>();
    }
    if (obj.contains("horizon")) {
        expect(obj["horizon"].is_number(), "integrator \"horizon\" must be a number");
        cfg.horizon = obj["horizon"].get<double>();
    }
    if (obj.contains("tol_conv")) {
        expect(obj["tol_conv"].is_number(), "integrator \"tol_conv\" must be a number");
        cfg.tol_conv = obj["tol_conv"].get<double>();
    }
    if (obj.contains("monitor_every")) {
        expect(obj["monitor_every"].is_number_integer(),
               "integrator \"monitor_every\" must be an integer");
        cfg.monitor_every = obj["monitor_every"].get<int>();
    }
    if (obj.contains("stop_at_convergence")) {
        expect(obj["stop_at_convergence"].is_boolean(),
               "integrator \"stop_at_convergence\" must be a boolean");
        cfg.stop_at_convergence = obj["stop_at_convergence"].get<bool>();
    }
    return cfg;
}

Expectations parse_expect(const json& obj, int nodes) {
    expect(obj.is_object(), "\"expect\" must be an object");
    reject_unknown_keys(obj,
                        {"converges", "final_mean", "all_passive", "wrap_hazard", "sign_flips",
                         "positivity", "simplex", "circuit_roundtrip"},
                        "expect");
    Expectations ex;
    auto flag = [&](const char* key, bool& out) {
        if (obj.contains(key)) {
            expect(obj[key].is_boolean(), std::string("expect \"") + key + "\" must be a boolean");
            out = obj[key].get<bool>();
        }
    };
    flag("converges", ex.assert_convergence);
    flag("all_passive", ex.assert_all_passive);
    flag("wrap_hazard", ex.expect_wrap_hazard);
    flag("sign_flips", ex.expect_sign_flips);
    flag("positivity", ex.assert_positivity);
    flag("simplex", ex.assert_simplex);
    if (obj.contains("final_mean")) {
        expect(obj["final_mean"].is_number(), "expect \"final_mean\" must be a number");
        ex.final_mean = obj["final_mean"].get<double>();
    }
    if (obj.contains("circuit_roundtrip")) {
        const json& rt = obj["circuit_roundtrip"];
        expect(rt.is_object(), "expect \"circuit_roundtrip\" must be an object");
        reject_unknown_keys(rt, {"capacitances", "resistances"}, "circuit_roundtrip");
        expect(rt.contains("capacitances") && rt.contains("resistances"),
               "circuit_roundtrip needs \"capacitances\" and \"resistances\"");
        RoundTripSpec spec;
        spec.capacitances = vector_field(rt["capacitances"], "circuit_roundtrip capacitances");
        expect(static_cast<int>(spec.capacitances.size()) == nodes,
               "circuit_roundtrip capacitances must have one entry per node");
        expect(rt["resistances"].is_array(), "circuit_roundtrip \"resistances\" must be an array");
        for (const json& row : rt["resistances"]) {
            expect(row.is_array() && row.size() == 3 && row[0].is_number_integer() &&
                       row[1].is_number_integer() && row[2].is_number(),
                   "each circuit_roundtrip resistance must be [i, j, r] with 1-based nodes");
            const int i = row[0].get<int>() - 1;
            const int j = row[1].get<int>() - 1;
            expect(i >= 0 && i < nodes && j >= 0 && j < nodes && i != j,
                   "circuit_roundtrip resistance endpoints out of range");
            spec.resistances.emplace_back(i, j, row[2].get<double>());
        }
        ex.circuit_roundtrip = std::move(spec);
    }
    return ex;
}

bool serializable_coupling(const CouplingFunction& phi) {
    static const std::set<std::string> catalog = {
        "linear",           "sinusoidal",      "odd_power",     "gain_tanh",
        "separable_identity", "separable_power", "separable_log", "separable_exp"};
    return catalog.count(phi.name()) > 0;
}

bool serializable_energy(const EnergyFunction& energy) {
    return energy.kind() != EnergyKind::Custom;
}

}  // namespace

Scenario scenario_from_json(const json& doc) {
    expect(doc.is_object(), "document must be a JSON object");
    reject_unknown_keys(doc,
                        {"name", "graph", "coupling", "energy", "initial_state", "drive",
                         "integrator", "expect"},
                        "scenario");
    expect(doc.contains("name") && doc["name"].is_string(), "scenario needs a string \"name\"");
    expect(doc.contains("graph"), "scenario needs a \"graph\" object");
    expect(doc.contains("coupling"), "scenario needs a \"coupling\" object");
    expect(doc.contains("energy"), "scenario needs an \"energy\" object");
    expect(doc.contains("initial_state"), "scenario needs an \"initial_state\" array");

    WeightedDigraph graph = parse_graph(doc["graph"]);
    const int nodes = graph.node_count();

    Scenario sc{doc["name"].get<std::string>(),
                std::move(graph),
                parse_coupling(doc["coupling"]),
                parse_energy(doc["energy"]),
                vector_field(doc["initial_state"], "initial_state"),
                Vector(),
                IntegratorConfig{},
                Expectations{}};
    expect(static_cast<int>(sc.x0.size()) == nodes,
           "initial_state must have one entry per node");
    if (doc.contains("drive")) {
        sc.drive = vector_field(doc["drive"], "drive");
        expect(static_cast<int>(sc.drive.size()) == nodes,
               "drive must have one entry per node");
    }
    if (doc.contains("integrator")) sc.config = parse_integrator(doc["integrator"]);
    if (doc.contains("expect")) sc.expect = parse_expect(doc["expect"], nodes);
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read scenario file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError("invalid JSON in " + path + ": " + e.what());
    }
    return scenario_from_json(doc);
}

ordered_json scenario_to_json(const Scenario& sc) {
    if (!serializable_coupling(sc.coupling)) {
        throw ParseError("coupling \"" + sc.coupling.name() +
                         "\" is not in the serializable catalog");
    }
    if (!serializable_energy(sc.energy)) {
        throw ParseError("energy \"" + sc.energy.name() +
                         "\" is not in the serializable catalog");
    }
    ordered_json doc;
    doc["name"] = sc.name;

    ordered_json graph;
    graph["nodes"] = sc.graph.node_count();
    ordered_json branches = ordered_json::array();
    for (const Branch& b : sc.graph.branches()) {
        branches.push_back({b.from + 1, b.to + 1, b.weight});
    }
    graph["branches"] = std::move(branches);
    doc["graph"] = std::move(graph);

    ordered_json coupling;
    coupling["kind"] = sc.coupling.name();
    if (!sc.coupling.params().empty()) coupling["params"] = sc.coupling.params();
    doc["coupling"] = std::move(coupling);

    ordered_json energy;
    energy["kind"] = sc.energy.name();
    if (!sc.energy.params().empty()) energy["params"] = sc.energy.params();
    doc["energy"] = std::move(energy);

    doc["initial_state"] = std::vector<double>(sc.x0.begin(), sc.x0.end());
    if (sc.drive.size() > 0) {
        doc["drive"] = std::vector<double>(sc.drive.begin(), sc.drive.end());
    }

    ordered_json integ;
    integ["dt"] = sc.config.dt;
    integ["horizon"] = sc.config.horizon;
    integ["tol_conv"] = sc.config.tol_conv;
    integ["monitor_every"] = sc.config.monitor_every;
    integ["stop_at_convergence"] = sc.config.stop_at_convergence;
    doc["integrator"] = std::move(integ);

    ordered_json expect;
    expect["converges"] = sc.expect.assert_convergence;
    if (sc.expect.final_mean.has_value()) expect["final_mean"] = *sc.expect.final_mean;
    expect["all_passive"] = sc.expect.assert_all_passive;
    expect["wrap_hazard"] = sc.expect.expect_wrap_hazard;
    expect["sign_flips"] = sc.expect.expect_sign_flips;
    expect["positivity"] = sc.expect.assert_positivity;
    expect["simplex"] = sc.expect.assert_simplex;
    if (sc.expect.circuit_roundtrip.has_value()) {
        const RoundTripSpec& spec = *sc.expect.circuit_roundtrip;
        ordered_json rt;
        rt["capacitances"] =
            std::vector<double>(spec.capacitances.begin(), spec.capacitances.end());
        ordered_json rows = ordered_json::array();
        for (const auto& [i, j, r] : spec.resistances) rows.push_back({i + 1, j + 1, r});
        rt["resistances"] = std::move(rows);
        expect["circuit_roundtrip"] = std::move(rt);
    }
    doc["expect"] = std::move(expect);
    return doc;
}

std::string trace_csv(const TrajectoryRecord& rec, const DeBruijnSeries* extra) {
    const int n = rec.samples() > 0 ? static_cast<int>(rec.x.front().size()) : 0;
    std::ostringstream os;
    os << 't';
    for (int i = 1; i <= n; ++i) os << ",x" << i;
    for (int i = 1; i <= n; ++i) os << ",q" << i;
    os << ",E,dEdt,wmean,psd_ok";
    if (extra != nullptr) os << ",J,debruijn_res";
    os << '\n';

    std::size_t cursor = 0;
    for (int k = 0; k < rec.samples(); ++k) {
        os << fmt_g12(rec.t[k]);
        for (int i = 0; i < n; ++i) os << ',' << fmt_g12(rec.x[k](i));
        for (int i = 0; i < n; ++i) os << ',' << fmt_g12(rec.q[k](i));
        os << ',' << fmt_g12(rec.energy[k]) << ',' << fmt_g12(rec.dissipation[k]) << ','
           << fmt_g12(rec.weighted_mean[k]) << ',' << (rec.psd_ok[k] ? 1 : 0);
        if (extra != nullptr) {
            if (cursor < extra->t.size() && extra->t[cursor] == rec.t[k]) {
                os << ',' << fmt_g12(extra->j[cursor]) << ',' << fmt_g12(extra->residual[cursor]);
                ++cursor;
            } else {
                os << ",nan,nan";
            }
        }
        os << '\n';
    }
    return os.str();
}

ordered_json netlist_json(const Netlist& netlist) {
    ordered_json doc;
    doc["reference_state"] = std::vector<double>(netlist.x_ref.begin(), netlist.x_ref.end());
    doc["capacitances"] =
        std::vector<double>(netlist.capacitances.begin(), netlist.capacitances.end());
    ordered_json rows = ordered_json::array();
    for (const ResistorEdge& r : netlist.resistors) {
        ordered_json row;
        row["i"] = r.i + 1;
        row["j"] = r.j + 1;
        row["conductance"] = r.conductance;
        row["resistance"] = r.resistance();
        rows.push_back(std::move(row));
    }
    doc["resistors"] = std::move(rows);
    return doc;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open for writing: " + tmp);
        out << content;
        out.flush();
        if (!out) throw Error("write failed: " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw Error("cannot move " + tmp + " into place: " + ec.message());
}

}  // namespace gradnet::io
