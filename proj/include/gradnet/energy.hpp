#pragma once

#include "gradnet/coupling.hpp"
#include "gradnet/graph.hpp"
#include "gradnet/types.hpp"

#include <functional>
#include <map>
#include <string>

namespace gradnet {

enum class EnergyKind { Quadratic, RelativeEntropy, PowerLaw, Custom };

/// Scalar density H with derivative h, defining the sum-separable energy
/// E(q) = sum_i c_i H(q_i / c_i). The catalog kinds are strictly convex on
/// their domains. Custom pairs (H, h) are accepted without a convexity
/// requirement so deliberately non-convex densities can be studied;
/// registration only verifies that h matches finite differences of H.
class EnergyFunction {
public:
    static EnergyFunction quadratic();          // H(z) = z^2 / 2 on all reals
    static EnergyFunction relative_entropy();   // H(z) = z ln z on z > 0
    static EnergyFunction power_law(double p);  // H(z) = z^p / (p (p - 1)), p > 1, z > 0
    static EnergyFunction custom(std::function<double(double)> density,
                                 std::function<double(double)> derivative, Interval domain,
                                 std::string name);

    EnergyKind kind() const { return kind_; }
    const Interval& domain() const { return domain_; }
    const std::string& name() const { return name_; }
    const std::map<std::string, double>& params() const { return params_; }

    /// H(z). Throws DomainViolation outside the domain.
    double density(double z) const;
    /// h(z) = dH/dz. Throws DomainViolation outside the domain.
    double derivative(double z) const;

private:
    EnergyFunction(EnergyKind kind, std::string name, Interval domain,
                   std::function<double(double)> density, std::function<double(double)> derivative,
                   std::map<std::string, double> params);

    EnergyKind kind_;
    std::string name_;
    Interval domain_;
    std::function<double(double)> density_;
    std::function<double(double)> derivative_;
    std::map<std::string, double> params_;
};

/// E(q) = sum_i c_i H(q_i / c_i).
double eval_energy(const EnergyFunction& energy, const StationaryVector& c, const Vector& q);

/// Component i equals h(q_i / c_i), the derivative of eval_energy in q_i.
Vector grad_energy(const EnergyFunction& energy, const StationaryVector& c, const Vector& q);

/// phi(a, b) / (h(a) - h(b)), evaluated on the ordered pair (max, min) so the
/// result is bitwise symmetric in its arguments. When |h(a) - h(b)| <= eps_eq
/// the value falls back to a secant at offset 1e-6 max(1, |min|) from the
/// smaller argument. Strictly positive for strictly convex H; a negative
/// value is returned, not thrown, so locally active resistors remain
/// representable. Throws NonFiniteRatio when the fallback degenerates.
double ratio_phi_over_dh(const CouplingFunction& phi, const EnergyFunction& energy, double a,
                         double b, double eps_eq = 1e-8);

/// Sampled strict-convexity probe: h strictly increasing over equispaced
/// points of [lo, hi].
bool h_strictly_increasing_on(const EnergyFunction& energy, double lo, double hi,
                              int samples = 200);

}  // namespace gradnet
