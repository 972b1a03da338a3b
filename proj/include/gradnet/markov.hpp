#pragma once

#include "gradnet/energy.hpp"
#include "gradnet/gradient_system.hpp"
#include "gradnet/types.hpp"

namespace gradnet {

/// F = C^{-1} K(x): an irreducible, generally non-symmetric Laplacian with
/// C F = F^T C, so that dq/dt = -F^T q reproduces the charge dynamics.
struct GeneratorMatrix {
    Matrix f;
    Vector x;  // evaluation state
};

/// Requires the quadratic energy (grad E(q) = C^{-1} q); throws
/// WrongEnergyKind otherwise.
GeneratorMatrix to_generator(const GradientSystem& sys, const Vector& x);

/// Normalized positive left-kernel vector of F, the invariant measure of the
/// chain; coincides with the stationary vector of the graph Laplacian.
StationaryVector invariant_distribution(const GeneratorMatrix& gen);

/// E(q) = sum_i c_i H(q_i / c_i) for probability vectors q and c. Both must
/// sum to one within 1e-12 and q must be non-negative; an exactly zero q_i
/// contributes the z ln z -> 0 limit for the relative-entropy density.
/// Minimal exactly at q = c for strictly convex H.
double divergence_to_equilibrium(const EnergyFunction& energy, const StationaryVector& c,
                                 const Vector& q);

}  // namespace gradnet
