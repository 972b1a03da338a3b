#pragma once

#include "gradnet/gradient_system.hpp"
#include "gradnet/types.hpp"

#include <string>
#include <vector>

namespace gradnet {

/// One resistor per undirected edge; conductance is evaluated at a specific
/// state and may be non-positive (locally active element).
struct ResistorEdge {
    int i;  // 0-based endpoints, i < j
    int j;
    double conductance;

    double resistance() const { return 1.0 / conductance; }
    bool strictly_passive() const { return conductance > 0.0; }
};

/// One conductance per undirected edge, in edge order: g_e equals
/// (c_i w_ij + c_j w_ji)/2 times the coupling/derivative ratio, which is the
/// negated off-diagonal of the metric at the same state.
std::vector<ResistorEdge> synthesize_conductances(const GradientSystem& sys, const Vector& x);

/// Diagonal D_B of K = B D_B B^T over the incidence matrix's edge columns.
/// Throws SparsityMismatch if K has a nonzero off-diagonal entry outside the
/// edge set.
Vector kirchhoff_factorization(const MetricMatrix& k, const IncidenceMatrix& binc);

enum class PassivityVerdict { AllPassive, LocallyActiveButDissipative, NotDissipative };

std::string to_string(PassivityVerdict v);

struct PassivityReport {
    std::vector<ResistorEdge> edges;
    PassivityVerdict verdict;
    double lambda_min;        // of the metric at the queried state
    double min_conductance;
};

/// Per-edge passivity flags plus a global verdict: all edges strictly
/// passive; some edge active but the metric still positive semi-definite to
/// tol; or not dissipative at this state.
PassivityReport passivity_report(const GradientSystem& sys, const Vector& x, double tol = 1e-10);

/// Lossless storage side of the circuit: charge q integrates the injected
/// node current, the node voltage reads grad E(q). For the quadratic density
/// the voltage equals C^{-1} q.
class CapacitorBank {
public:
    CapacitorBank(StationaryVector c, EnergyFunction energy, Vector q0);

    const StationaryVector& capacitances() const { return c_; }
    const Vector& charge() const { return q_; }
    void set_charge(Vector q);
    Vector node_voltage() const;    // grad E(q)
    Vector terminal_state() const;  // x = C^{-1} q

private:
    StationaryVector c_;
    EnergyFunction energy_;
    Vector q_;
};

/// Frozen-state snapshot of the synthesized circuit: nonlinear conductances
/// are evaluated at the recorded reference state.
struct Netlist {
    Vector x_ref;
    Vector capacitances;  // one per node, in node order
    std::vector<ResistorEdge> resistors;
};

Netlist make_netlist(const GradientSystem& sys, const Vector& x_ref);

/// Text format, one element per line: `C<i> <node> 0 <value>` then
/// `R<e> <i> <j> <value>` with resistance 1/g_e, nodes 1-based, values at 12
/// significant digits. A leading comment records the reference state.
std::string netlist_text(const Netlist& netlist);

}  // namespace gradnet
