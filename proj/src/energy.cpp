#include "gradnet/energy.hpp"

#include "gradnet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace gradnet {

EnergyFunction::EnergyFunction(EnergyKind kind, std::string name, Interval domain,
                               std::function<double(double)> density,
                               std::function<double(double)> derivative,
                               std::map<std::string, double> params)
    : kind_(kind),
      name_(std::move(name)),
      domain_(domain),
      density_(std::move(density)),
      derivative_(std::move(derivative)),
      params_(std::move(params)) {}

EnergyFunction EnergyFunction::quadratic() {
    return EnergyFunction(
        EnergyKind::Quadratic, "quadratic", Interval::all_reals(),
        [](double z) { return 0.5 * z * z; }, [](double z) { return z; }, {});
}

EnergyFunction EnergyFunction::relative_entropy() {
    return EnergyFunction(
        EnergyKind::RelativeEntropy, "relative_entropy", Interval::positive_reals(),
        [](double z) { return z * std::log(z); }, [](double z) { return std::log(z) + 1.0; },
        {});
}

EnergyFunction EnergyFunction::power_law(double p) {
    if (!(p > 1.0)) throw Error("power_law energy: exponent must exceed 1");
    return EnergyFunction(
        EnergyKind::PowerLaw, "power_law", Interval::positive_reals(),
        [p](double z) { return std::pow(z, p) / (p * (p - 1.0)); },
        [p](double z) { return std::pow(z, p - 1.0) / (p - 1.0); }, {{"p", p}});
}

EnergyFunction EnergyFunction::custom(std::function<double(double)> density,
                                      std::function<double(double)> derivative, Interval domain,
                                      std::string name) {
    // Registration check: h must match central differences of H at interior
    // sample points to 1e-5 relative.
    double lo = std::isfinite(domain.lo) ? domain.lo : -2.0;
    double hi = std::isfinite(domain.hi) ? domain.hi : 2.0;
    if (!(hi > lo)) throw Error("custom energy: domain window is empty");
    const double pad = 0.05 * (hi - lo);
    lo += pad;
    hi -= pad;
    const int samples = 21;
    for (int k = 0; k < samples; ++k) {
        const double z = lo + (hi - lo) * static_cast<double>(k) / (samples - 1);
        const double step = 1e-6 * std::max(1.0, std::abs(z));
        if (!domain.contains(z - step) || !domain.contains(z + step)) continue;
        const double cdiff = (density(z + step) - density(z - step)) / (2.0 * step);
        const double claimed = derivative(z);
        if (std::abs(claimed - cdiff) > 1e-5 * std::max(1.0, std::abs(cdiff))) {
            std::ostringstream os;
            os << "custom energy " << name << ": derivative disagrees with density at z = " << z
               << " (claimed " << claimed << ", finite difference " << cdiff << ")";
            throw Error(os.str());
        }
    }
    return EnergyFunction(EnergyKind::Custom, std::move(name), domain, std::move(density),
                          std::move(derivative), {});
}

namespace {

void check_domain(const Interval& domain, double z, const std::string& name) {
    if (!domain.contains(z)) {
        std::ostringstream os;
        os << "energy " << name << ": argument " << z << " outside domain " << domain.describe();
        throw DomainViolation(os.str());
    }
}

}  // namespace

double EnergyFunction::density(double z) const {
    check_domain(domain_, z, name_);
    return density_(z);
}

double EnergyFunction::derivative(double z) const {
    check_domain(domain_, z, name_);
    return derivative_(z);
}

double eval_energy(const EnergyFunction& energy, const StationaryVector& c, const Vector& q) {
    if (q.size() != c.size()) throw Error("eval_energy: state size does not match c");
    double total = 0.0;
    for (int i = 0; i < q.size(); ++i) {
        total += c.c(i) * energy.density(q(i) / c.c(i));
    }
    return total;
}

Vector grad_energy(const EnergyFunction& energy, const StationaryVector& c, const Vector& q) {
    if (q.size() != c.size()) throw Error("grad_energy: state size does not match c");
    Vector g(q.size());
    for (int i = 0; i < q.size(); ++i) {
        g(i) = energy.derivative(q(i) / c.c(i));
    }
    return g;
}

double ratio_phi_over_dh(const CouplingFunction& phi, const EnergyFunction& energy, double a,
                         double b, double eps_eq) {
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    const double h_lo = energy.derivative(lo);
    const double h_hi = energy.derivative(hi);
    if (std::abs(h_hi - h_lo) > eps_eq) {
        const double r = phi(hi, lo) / (h_hi - h_lo);
        if (!std::isfinite(r)) {
            throw NonFiniteRatio("coupling/derivative ratio is not finite");
        }
        return r;
    }
    // Secant fallback near the diagonal, anchored at the smaller argument.
    const double delta = 1e-6 * std::max(1.0, std::abs(lo));
    double probe = lo + delta;
    if (!phi.domain().contains(probe) || !energy.domain().contains(probe)) {
        probe = lo - delta;
    }
    if (!phi.domain().contains(probe) || !energy.domain().contains(probe)) {
        throw NonFiniteRatio("ratio fallback: no admissible probe point near the diagonal");
    }
    const double dh = energy.derivative(probe) - h_lo;
    const double r = phi(probe, lo) / dh;
    if (!std::isfinite(r)) {
        throw NonFiniteRatio(
            "ratio fallback degenerated: energy derivative is locally flat (density not "
            "strictly convex here)");
    }
    return r;
}

bool h_strictly_increasing_on(const EnergyFunction& energy, double lo, double hi, int samples) {
    if (!(hi > lo) || samples < 2) throw Error("h_strictly_increasing_on: bad sampling window");
    double prev = energy.derivative(lo);
    for (int k = 1; k < samples; ++k) {
        const double z = lo + (hi - lo) * static_cast<double>(k) / (samples - 1);
        const double cur = energy.derivative(z);
        if (!(cur > prev)) return false;
        prev = cur;
    }
    return true;
}

}  // namespace gradnet
