#pragma once

#include "gradnet/types.hpp"

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace gradnet {

enum class CouplingKind { Linear, OddFunction, Gain, Separable, Sinusoidal };

/// Pairwise interaction phi(a, b): zero exactly on the diagonal, sign equal
/// to sign(a - b), magnitude non-decreasing in |a - b| along rays. Sinusoidal
/// satisfies the axioms only for |a - b| below pi; valid_spread() reports the
/// guaranteed window.
class CouplingFunction {
public:
    static CouplingFunction linear();
    static CouplingFunction sinusoidal();
    /// psi applied to a - b, psi(z) = sign(z) |z|^p with p > 0.
    static CouplingFunction odd_power(double p);
    /// psi applied to a - b; psi must be odd with sign(psi(z)) = sign(z).
    static CouplingFunction odd(std::function<double(double)> psi, std::string name);
    /// f(a - b) * (a - b) with f(z) = |tanh(p z)|, p > 0.
    static CouplingFunction gain_tanh(double p);
    /// f(a - b) * (a - b); f must be even and non-negative.
    static CouplingFunction gain(std::function<double(double)> f, std::string name);
    static CouplingFunction separable_identity();
    /// g(a) - g(b) with g(z) = z^p on z > 0, p > 0.
    static CouplingFunction separable_power(double p);
    static CouplingFunction separable_log();
    static CouplingFunction separable_exp();
    /// g(a) - g(b) for a strictly increasing g on the given domain.
    static CouplingFunction separable(std::function<double(double)> g, Interval domain,
                                      std::string name);

    CouplingKind kind() const { return kind_; }
    const Interval& domain() const { return domain_; }
    /// Catalog identifier used by the JSON interface. Callable-backed
    /// couplings carry a caller-chosen name and do not serialize.
    const std::string& name() const { return name_; }
    const std::map<std::string, double>& params() const { return params_; }
    /// Largest |a - b| on which the axioms are guaranteed; infinite for every
    /// catalog kind except Sinusoidal (pi).
    double valid_spread() const { return valid_spread_; }

    /// phi(a, b). Throws DomainViolation if an argument leaves the domain.
    double operator()(double a, double b) const;

private:
    CouplingFunction(CouplingKind kind, std::string name, Interval domain, double valid_spread,
                     std::function<double(double, double)> eval,
                     std::map<std::string, double> params);

    CouplingKind kind_;
    std::string name_;
    Interval domain_;
    double valid_spread_;
    std::function<double(double, double)> eval_;
    std::map<std::string, double> params_;
};

inline double eval_phi(const CouplingFunction& phi, double a, double b) { return phi(a, b); }

struct AxiomViolation {
    std::string axiom;  // "zero_diagonal" | "sign" | "ray_monotonicity"
    double a;
    double b;
    double value;
};

struct AxiomReport {
    bool ok = true;
    std::vector<AxiomViolation> violations;
};

/// density x density pairs (a, b) covering [lo, hi]^2, diagonal included.
std::vector<std::pair<double, double>> coupling_sample_grid(double lo, double hi,
                                                            int density = 50);

/// Samples the three coupling axioms over the grid: zero diagonal, sign
/// agreement with a - b, and |phi| non-decreasing along rays of fixed b.
/// Every grid point must lie in the coupling domain.
AxiomReport check_coupling_axioms(const CouplingFunction& phi,
                                  const std::vector<std::pair<double, double>>& grid);

}  // namespace gradnet
