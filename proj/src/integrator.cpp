#include "gradnet/integrator.hpp"

#include "gradnet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace gradnet {

namespace {

double characteristic_time(const GradientSystem& sys) {
    const double max_rate = sys.laplacian().diagonal().maxCoeff();
    if (!(max_rate > 0.0) || !std::isfinite(max_rate)) {
        throw DomainViolation(
            "resolve_config: graph has no positive diagonal rate to derive a time scale from; "
            "set dt and horizon explicitly");
    }
    return 1.0 / max_rate;
}

}  // namespace

IntegratorConfig resolve_config(const GradientSystem& sys, IntegratorConfig cfg) {
    if (cfg.dt == 0.0 || cfg.horizon == 0.0) {
        const double tau = characteristic_time(sys);
        if (cfg.dt == 0.0) cfg.dt = 1e-3 * tau;
        if (cfg.horizon == 0.0) cfg.horizon = 20.0 * tau;
    }
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) {
        throw DomainViolation("resolve_config: dt must be positive and finite");
    }
    if (!(cfg.horizon > 0.0) || !std::isfinite(cfg.horizon)) {
        throw DomainViolation("resolve_config: horizon must be positive and finite");
    }
    if (!(cfg.tol_conv > 0.0)) {
        throw DomainViolation("resolve_config: tol_conv must be positive");
    }
    if (cfg.monitor_every < 1) {
        throw DomainViolation("resolve_config: monitor_every must be at least 1");
    }
    return cfg;
}

Vector step_rk4(const VectorField& field, double t, const Vector& state, double dt) {
    const Vector k1 = field(t, state);
    const Vector k2 = field(t + 0.5 * dt, state + (0.5 * dt) * k1);
    const Vector k3 = field(t + 0.5 * dt, state + (0.5 * dt) * k2);
    const Vector k4 = field(t + dt, state + dt * k3);
    return state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Vector TrajectoryRecord::detrended_x(int k) const {
    Vector out = x.at(k);
    if (detrend_speed != 0.0) out.array() -= detrend_speed * t.at(k);
    return out;
}

TrajectoryRecord simulate(const GradientSystem& sys, const Vector& x0, IntegratorConfig cfg,
                          Form form, const Vector& drive) {
    const int n = sys.size();
    if (x0.size() != n) {
        throw DomainViolation("simulate: initial state has " + std::to_string(x0.size()) +
                              " entries for " + std::to_string(n) + " nodes");
    }
    if (drive.size() != 0 && drive.size() != n) {
        throw DomainViolation("simulate: drive has " + std::to_string(drive.size()) +
                              " entries for " + std::to_string(n) + " nodes");
    }
    for (int i = 0; i < n; ++i) {
        if (!sys.coupling().domain().contains(x0(i))) {
            throw DomainViolation("simulate: initial state component " + std::to_string(i + 1) +
                                  " = " + std::to_string(x0(i)) + " is outside the coupling domain " +
                                  sys.coupling().domain().describe());
        }
        if (!sys.energy().domain().contains(x0(i))) {
            throw DomainViolation("simulate: initial state component " + std::to_string(i + 1) +
                                  " = " + std::to_string(x0(i)) + " is outside the energy domain " +
                                  sys.energy().domain().describe());
        }
    }
    cfg = resolve_config(sys, cfg);

    TrajectoryRecord rec;
    rec.form = form;
    rec.dt = cfg.dt;
    rec.monitor_every = cfg.monitor_every;
    rec.tol_conv = cfg.tol_conv;
    rec.drive = drive;
    if (drive.size() > 0) {
        const double hi = drive.maxCoeff();
        const double lo = drive.minCoeff();
        rec.drive_uniform = (hi - lo) <= 1e-12 * std::max(1.0, std::abs(hi));
        rec.detrend_speed = rec.drive_uniform ? drive.mean() : 0.0;
        rec.mean_drift_rate = sys.c().c.dot(drive);
    }

    VectorField field;
    if (form == Form::X) {
        if (drive.size() > 0) {
            field = [&sys, drive](double, const Vector& x) -> Vector {
                return drive + sys.direct_field(x);
            };
        } else {
            field = [&sys](double, const Vector& x) -> Vector { return sys.direct_field(x); };
        }
    } else {
        if (drive.size() > 0) {
            const Vector qdrive = sys.to_q(drive);
            field = [&sys, qdrive](double, const Vector& q) -> Vector {
                return qdrive + gradient_vector_field(sys, q);
            };
        } else {
            field = [&sys](double, const Vector& q) -> Vector {
                return gradient_vector_field(sys, q);
            };
        }
    }

    const double valid_spread = sys.coupling().valid_spread();
    const bool has_edges = !sys.edges().empty();

    auto record_sample = [&](double t, const Vector& state) -> void {
        const Vector x_raw = (form == Form::X) ? state : sys.to_x(state);
        const Vector q_raw = (form == Form::X) ? sys.to_q(state) : state;
        Vector x_eff = x_raw;
        if (rec.detrend_speed != 0.0) x_eff.array() -= rec.detrend_speed * t;
        const Vector q_eff = sys.to_q(x_eff);

        const MetricMatrix k = assemble_K(sys, x_eff);
        const Vector g = sys.energy_gradient(q_eff);
        double min_g = std::numeric_limits<double>::infinity();
        for (const UndirectedEdge& e : sys.edges()) min_g = std::min(min_g, -k.k(e.a, e.b));

        rec.t.push_back(t);
        rec.x.push_back(x_raw);
        rec.q.push_back(q_raw);
        rec.energy.push_back(sys.energy_value(q_eff));
        rec.dissipation.push_back(-g.dot(k.k * g));
        rec.weighted_mean.push_back(sys.c().c.dot(x_raw));
        rec.psd_ok.push_back(verify_psd(k).psd ? 1 : 0);
        rec.min_conductance.push_back(has_edges ? min_g : 0.0);
        rec.active_edges.push_back(k.active_edges);

        const double spread = x_raw.maxCoeff() - x_raw.minCoeff();
        if (spread > valid_spread) rec.wrap_hazard = true;
        if (!rec.converged && spread < cfg.tol_conv) {
            rec.converged = true;
            rec.convergence_time = t;
        }
    };

    Vector state = (form == Form::X) ? x0 : sys.to_q(x0);
    double t = 0.0;
    try {
        record_sample(0.0, state);
    } catch (const DomainViolation& e) {
        throw StepDomainViolation(std::string("simulate: ") + e.what(), 0.0);
    }
    if (rec.converged && cfg.stop_at_convergence) return rec;

    const long steps = std::max<long>(1, std::lround(cfg.horizon / cfg.dt));
    for (long k = 1; k <= steps; ++k) {
        try {
            state = step_rk4(field, t, state, cfg.dt);
        } catch (const DomainViolation& e) {
            throw StepDomainViolation("simulate: step from t = " + std::to_string(t) +
                                          " left the admissible domain: " + e.what(),
                                      t);
        }
        t = static_cast<double>(k) * cfg.dt;
        rec.steps_taken = k;
        if (k % cfg.monitor_every == 0 || k == steps) {
            try {
                record_sample(t, state);
            } catch (const DomainViolation& e) {
                throw StepDomainViolation("simulate: state at t = " + std::to_string(t) +
                                              " left the admissible domain: " + e.what(),
                                          t);
            }
            if (rec.converged && cfg.stop_at_convergence) break;
        }
    }
    return rec;
}

ConvergenceReport convergence_report(const TrajectoryRecord& rec, const GradientSystem& sys) {
    ConvergenceReport rep;
    rep.applicable = rec.drive.size() == 0 || rec.drive_uniform;
    rep.converged = rec.converged;
    rep.convergence_time = rec.convergence_time;

    const int m = rec.samples();
    if (m == 0) {
        throw DomainViolation("convergence_report: record holds no samples");
    }
    rep.predicted = sys.c().c.dot(rec.x.front());

    const Vector final_x = rec.detrended_x(m - 1);
    rep.terminal_error = (final_x.array() - rep.predicted).abs().maxCoeff();

    rep.max_energy_increase = 0.0;
    for (int k = 1; k < m; ++k) {
        rep.max_energy_increase =
            std::max(rep.max_energy_increase, rec.energy[k] - rec.energy[k - 1]);
    }
    rep.max_conservation_drift = 0.0;
    const double mean0 = rec.weighted_mean.front();
    for (int k = 0; k < m; ++k) {
        const double line = mean0 + rec.mean_drift_rate * rec.t[k];
        rep.max_conservation_drift =
            std::max(rep.max_conservation_drift, std::abs(rec.weighted_mean[k] - line));
    }

    if (!rep.applicable) {
        rep.verdict = true;
    } else {
        rep.verdict = rep.converged && rep.terminal_error <= rec.tol_conv &&
                      rep.max_energy_increase <= 1e-9 && rep.max_conservation_drift <= 1e-9;
    }
    return rep;
}

}  // namespace gradnet
