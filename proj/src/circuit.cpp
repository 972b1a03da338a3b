#include "gradnet/circuit.hpp"

#include "gradnet/errors.hpp"
#include "gradnet/numfmt.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <utility>

namespace gradnet {

std::vector<ResistorEdge> synthesize_conductances(const GradientSystem& sys, const Vector& x) {
    if (x.size() != sys.size()) {
        throw DomainViolation("synthesize_conductances: state has " + std::to_string(x.size()) +
                              " entries for " + std::to_string(sys.size()) + " nodes");
    }
    std::vector<ResistorEdge> out;
    out.reserve(sys.edges().size());
    for (const UndirectedEdge& e : sys.edges()) {
        const double ratio =
            ratio_phi_over_dh(sys.coupling(), sys.energy(), x(e.b), x(e.a));
        out.push_back(ResistorEdge{e.a, e.b, sys.edge_mu(e) * ratio});
    }
    return out;
}

Vector kirchhoff_factorization(const MetricMatrix& k, const IncidenceMatrix& binc) {
    const Eigen::Index n = k.k.rows();
    if (k.k.cols() != n || binc.m.rows() != n) {
        throw SparsityMismatch("kirchhoff_factorization: incidence has " +
                               std::to_string(binc.m.rows()) + " rows for a " +
                               std::to_string(n) + "-node metric");
    }
    const int m = binc.edge_count();
    if (binc.m.cols() != m || static_cast<int>(binc.edges.size()) != m) {
        throw SparsityMismatch("kirchhoff_factorization: incidence columns and edge list differ");
    }

    std::set<std::pair<int, int>> edge_set;
    for (const UndirectedEdge& e : binc.edges) edge_set.insert({e.a, e.b});

    const double scale = std::max(1.0, k.k.cwiseAbs().maxCoeff());
    const double tol = 1e-13 * scale;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double mag = std::max(std::abs(k.k(i, j)), std::abs(k.k(j, i)));
            if (mag > tol && !edge_set.count({static_cast<int>(i), static_cast<int>(j)})) {
                throw SparsityMismatch("kirchhoff_factorization: metric couples nodes " +
                                       std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                       " outside the edge set");
            }
        }
    }

    Vector d(m);
    for (int e = 0; e < m; ++e) {
        const UndirectedEdge& ue = binc.edges[e];
        d(e) = -0.5 * (k.k(ue.a, ue.b) + k.k(ue.b, ue.a));
    }
    return d;
}

std::string to_string(PassivityVerdict v) {
    switch (v) {
        case PassivityVerdict::AllPassive:
            return "all_passive";
        case PassivityVerdict::LocallyActiveButDissipative:
            return "locally_active_but_dissipative";
        case PassivityVerdict::NotDissipative:
            return "not_dissipative";
    }
    return "unknown";
}

PassivityReport passivity_report(const GradientSystem& sys, const Vector& x, double tol) {
    PassivityReport rep;
    rep.edges = synthesize_conductances(sys, x);
    const MetricMatrix k = assemble_K(sys, x);
    const PsdReport psd = verify_psd(k, tol);
    rep.lambda_min = psd.lambda_min;

    rep.min_conductance = std::numeric_limits<double>::infinity();
    bool all_passive = true;
    for (const ResistorEdge& e : rep.edges) {
        rep.min_conductance = std::min(rep.min_conductance, e.conductance);
        all_passive = all_passive && e.strictly_passive();
    }
    if (all_passive) {
        rep.verdict = PassivityVerdict::AllPassive;
    } else if (psd.psd) {
        rep.verdict = PassivityVerdict::LocallyActiveButDissipative;
    } else {
        rep.verdict = PassivityVerdict::NotDissipative;
    }
    return rep;
}

CapacitorBank::CapacitorBank(StationaryVector c, EnergyFunction energy, Vector q0)
    : c_(std::move(c)), energy_(std::move(energy)), q_(std::move(q0)) {
    if (q_.size() != c_.size()) {
        throw DomainViolation("CapacitorBank: charge has " + std::to_string(q_.size()) +
                              " entries for " + std::to_string(c_.size()) + " capacitors");
    }
}

void CapacitorBank::set_charge(Vector q) {
    if (q.size() != c_.size()) {
        throw DomainViolation("CapacitorBank::set_charge: charge has " +
                              std::to_string(q.size()) + " entries for " +
                              std::to_string(c_.size()) + " capacitors");
    }
    q_ = std::move(q);
}

Vector CapacitorBank::node_voltage() const { return grad_energy(energy_, c_, q_); }

Vector CapacitorBank::terminal_state() const { return q_.cwiseQuotient(c_.c); }

Netlist make_netlist(const GradientSystem& sys, const Vector& x_ref) {
    Netlist net;
    net.x_ref = x_ref;
    net.capacitances = sys.c().c;
    net.resistors = synthesize_conductances(sys, x_ref);
    return net;
}

std::string netlist_text(const Netlist& netlist) {
    std::ostringstream os;
    os << "* synthesized capacitor-resistor network, " << netlist.capacitances.size()
       << " nodes, " << netlist.resistors.size() << " resistors\n";
    os << "* reference state:";
    for (Eigen::Index i = 0; i < netlist.x_ref.size(); ++i) os << ' ' << fmt_g12(netlist.x_ref(i));
    os << '\n';
    for (Eigen::Index i = 0; i < netlist.capacitances.size(); ++i) {
        os << 'C' << (i + 1) << ' ' << (i + 1) << " 0 " << fmt_g12(netlist.capacitances(i))
           << '\n';
    }
    for (std::size_t e = 0; e < netlist.resistors.size(); ++e) {
        const ResistorEdge& r = netlist.resistors[e];
        os << 'R' << (e + 1) << ' ' << (r.i + 1) << ' ' << (r.j + 1) << ' '
           << fmt_g12(r.resistance()) << '\n';
    }
    return os.str();
}

}  // namespace gradnet
