#pragma once

#include "gradnet/coupling.hpp"
#include "gradnet/gradient_system.hpp"
#include "gradnet/integrator.hpp"
#include "gradnet/types.hpp"

#include <vector>

namespace gradnet {

/// J(x) = (1/2) sum_ij c_i w_ij phi(x_j, x_i) (h(x_j) - h(x_i)), summed over
/// ordered pairs literally. Equals the negated dissipation rate at the same
/// state. Edge terms and densities align with the undirected edge list;
/// densities are populated only when every state component is positive.
struct FisherReport {
    double j = 0.0;
    std::vector<double> edge_terms;
    std::vector<double> edge_densities;
};

FisherReport fisher_information(const GradientSystem& sys, const Vector& x);

/// (a - b) / (ln a - ln b) for positive a, b; midpoint of the pair when the
/// logarithms agree to 1e-8 (exact arguments equal give a back). Lies
/// between the geometric and arithmetic means.
double log_mean(double a, double b);

/// phi(a, b) / (ln a - ln b) for positive a, b with a secant fallback at the
/// diagonal. Equals the logarithmic mean for the linear coupling and
/// sinc(a - b) times the logarithmic mean for the sinusoidal one.
double edge_density(const CouplingFunction& phi, double a, double b);

/// Residual of the dissipation identity dE/dt = -J along a sampled run:
/// central-difference dE/dt plus J at interior samples with uniform spacing.
/// Relative residuals are taken against |J| on samples where |J| is at least
/// 1e-6 of its maximum; max_relative_residual is 0 when no sample qualifies.
struct DeBruijnSeries {
    std::vector<double> t;
    std::vector<double> residual;
    std::vector<double> j;  // J at the same interior samples
    double max_abs_residual = 0.0;
    double max_relative_residual = 0.0;
};

DeBruijnSeries debruijn_residual(const TrajectoryRecord& rec, const GradientSystem& sys);

}  // namespace gradnet
