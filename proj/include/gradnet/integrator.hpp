#pragma once

#include "gradnet/gradient_system.hpp"
#include "gradnet/types.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace gradnet {

struct IntegratorConfig {
    double dt = 0.0;       // 0 resolves to 1e-3 / max_i [L]_ii
    double horizon = 0.0;  // 0 resolves to 20 / max_i [L]_ii
    double tol_conv = 1e-6;
    int monitor_every = 10;
    bool stop_at_convergence = false;
};

/// Fills zero dt/horizon from the characteristic time 1 / max_i [L]_ii and
/// validates positivity.
IntegratorConfig resolve_config(const GradientSystem& sys, IntegratorConfig cfg);

enum class Form { X, Q };

using VectorField = std::function<Vector(double, const Vector&)>;

/// Classical fourth-order Runge-Kutta update over one step.
Vector step_rk4(const VectorField& field, double t, const Vector& state, double dt);

/// Sampled run. x and q are raw states (q = C x at every sample). Energy,
/// dissipation, metric PSD flags and active-edge lists are evaluated in the
/// rotating frame x - detrend_speed * t * 1 when the drive is uniform, so
/// they reflect the frame in which the flow is a plain gradient descent;
/// undriven runs have detrend_speed 0 and the frames coincide.
struct TrajectoryRecord {
    Form form = Form::X;
    double dt = 0.0;
    int monitor_every = 0;
    double tol_conv = 0.0;
    Vector drive;              // size 0 when undriven
    bool drive_uniform = false;
    double detrend_speed = 0.0;    // rotating-frame shift rate (uniform drive only)
    double mean_drift_rate = 0.0;  // d/dt of c . x, equals c . drive

    std::vector<double> t;
    std::vector<Vector> x;
    std::vector<Vector> q;
    std::vector<double> energy;
    std::vector<double> dissipation;
    std::vector<double> weighted_mean;  // c . x, raw state
    std::vector<char> psd_ok;
    std::vector<double> min_conductance;
    std::vector<std::vector<std::pair<int, int>>> active_edges;

    bool converged = false;
    double convergence_time = 0.0;  // valid only when converged
    bool wrap_hazard = false;       // spread exceeded the coupling's valid window
    long steps_taken = 0;

    int samples() const { return static_cast<int>(t.size()); }
    /// State in the rotating frame at sample k.
    Vector detrended_x(int k) const;
};

/// Integrates either the direct pairwise form (x) or the metric-gradient
/// form (q) with fixed-step RK4. An optional constant drive enters the x
/// form as dx/dt = drive + f(x) and the q form as dq/dt = C drive - K grad E.
/// Convergence is declared when the state spread max_i x_i - min_i x_i drops
/// below tol_conv (spread is invariant under the rotating-frame shift).
/// Throws StepDomainViolation, tagged with the failing time, when a stage or
/// sample leaves the coupling or energy domain.
TrajectoryRecord simulate(const GradientSystem& sys, const Vector& x0, IntegratorConfig cfg,
                          Form form, const Vector& drive = Vector());

struct ConvergenceReport {
    bool applicable;   // undriven or uniform drive
    bool converged;
    double convergence_time;
    double predicted;        // weighted arithmetic mean of the initial state
    double terminal_error;   // max_i |detrended x_i(T) - predicted|
    double max_energy_increase;     // over consecutive samples
    double max_conservation_drift;  // of c . x against the drift line
    bool verdict;
};

/// Compares the attained terminal state against the predicted consensus
/// value and reports energy-monotonicity and conservation residuals. The
/// verdict requires convergence within tol_conv, energy increase and drift
/// both below 1e-9; it is vacuously true when not applicable.
ConvergenceReport convergence_report(const TrajectoryRecord& rec, const GradientSystem& sys);

}  // namespace gradnet
