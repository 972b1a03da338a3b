#include "gradnet/coupling.hpp"

#include "gradnet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

namespace gradnet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

CouplingFunction::CouplingFunction(CouplingKind kind, std::string name, Interval domain,
                                   double valid_spread,
                                   std::function<double(double, double)> eval,
                                   std::map<std::string, double> params)
    : kind_(kind),
      name_(std::move(name)),
      domain_(domain),
      valid_spread_(valid_spread),
      eval_(std::move(eval)),
      params_(std::move(params)) {}

CouplingFunction CouplingFunction::linear() {
    return CouplingFunction(CouplingKind::Linear, "linear", Interval::all_reals(), kInf,
                            [](double a, double b) { return a - b; }, {});
}

CouplingFunction CouplingFunction::sinusoidal() {
    return CouplingFunction(CouplingKind::Sinusoidal, "sinusoidal", Interval::all_reals(),
                            std::numbers::pi,
                            [](double a, double b) { return std::sin(a - b); }, {});
}

CouplingFunction CouplingFunction::odd_power(double p) {
    if (!(p > 0.0)) throw Error("odd_power coupling: exponent must be positive");
    return CouplingFunction(
        CouplingKind::OddFunction, "odd_power", Interval::all_reals(), kInf,
        [p](double a, double b) {
            const double z = a - b;
            return z == 0.0 ? 0.0 : std::copysign(std::pow(std::abs(z), p), z);
        },
        {{"p", p}});
}

CouplingFunction CouplingFunction::odd(std::function<double(double)> psi, std::string name) {
    return CouplingFunction(
        CouplingKind::OddFunction, std::move(name), Interval::all_reals(), kInf,
        [psi = std::move(psi)](double a, double b) { return psi(a - b); }, {});
}

CouplingFunction CouplingFunction::gain_tanh(double p) {
    if (!(p > 0.0)) throw Error("gain_tanh coupling: slope must be positive");
    return CouplingFunction(
        CouplingKind::Gain, "gain_tanh", Interval::all_reals(), kInf,
        [p](double a, double b) {
            const double z = a - b;
            return std::abs(std::tanh(p * z)) * z;
        },
        {{"p", p}});
}

CouplingFunction CouplingFunction::gain(std::function<double(double)> f, std::string name) {
    return CouplingFunction(
        CouplingKind::Gain, std::move(name), Interval::all_reals(), kInf,
        [f = std::move(f)](double a, double b) {
            const double z = a - b;
            return f(z) * z;
        },
        {});
}

CouplingFunction CouplingFunction::separable_identity() {
    return CouplingFunction(CouplingKind::Separable, "separable_identity",
                            Interval::all_reals(), kInf,
                            [](double a, double b) { return a - b; }, {});
}

CouplingFunction CouplingFunction::separable_power(double p) {
    if (!(p > 0.0)) throw Error("separable_power coupling: exponent must be positive");
    return CouplingFunction(
        CouplingKind::Separable, "separable_power", Interval::positive_reals(), kInf,
        [p](double a, double b) { return std::pow(a, p) - std::pow(b, p); }, {{"p", p}});
}

CouplingFunction CouplingFunction::separable_log() {
    return CouplingFunction(CouplingKind::Separable, "separable_log",
                            Interval::positive_reals(), kInf,
                            [](double a, double b) { return std::log(a) - std::log(b); }, {});
}

CouplingFunction CouplingFunction::separable_exp() {
    return CouplingFunction(CouplingKind::Separable, "separable_exp", Interval::all_reals(),
                            kInf,
                            [](double a, double b) { return std::exp(a) - std::exp(b); }, {});
}

CouplingFunction CouplingFunction::separable(std::function<double(double)> g, Interval domain,
                                             std::string name) {
    return CouplingFunction(
        CouplingKind::Separable, std::move(name), domain, kInf,
        [g = std::move(g)](double a, double b) { return g(a) - g(b); }, {});
}

double CouplingFunction::operator()(double a, double b) const {
    if (!domain_.contains(a) || !domain_.contains(b)) {
        std::ostringstream os;
        os << "coupling " << name_ << ": argument outside domain " << domain_.describe();
        throw DomainViolation(os.str());
    }
    return eval_(a, b);
}

std::vector<std::pair<double, double>> coupling_sample_grid(double lo, double hi, int density) {
    if (!(hi > lo)) throw Error("coupling_sample_grid: window must have positive width");
    if (density < 2) throw Error("coupling_sample_grid: density must be at least 2");
    std::vector<double> axis(density);
    for (int k = 0; k < density; ++k) {
        axis[k] = lo + (hi - lo) * static_cast<double>(k) / (density - 1);
    }
    std::vector<std::pair<double, double>> grid;
    grid.reserve(static_cast<size_t>(density) * density);
    for (double a : axis) {
        for (double b : axis) grid.emplace_back(a, b);
    }
    return grid;
}

AxiomReport check_coupling_axioms(const CouplingFunction& phi,
                                  const std::vector<std::pair<double, double>>& grid) {
    AxiomReport report;
    auto violate = [&](const char* axiom, double a, double b, double value) {
        report.ok = false;
        report.violations.push_back({axiom, a, b, value});
    };

    // Rays of fixed b: collect (a, phi) per exact b value.
    std::map<double, std::vector<std::pair<double, double>>> rays;
    for (const auto& [a, b] : grid) {
        const double value = phi(a, b);
        if (a == b) {
            if (std::abs(value) > 1e-12) violate("zero_diagonal", a, b, value);
            continue;
        }
        const bool sign_ok = (a > b) ? (value > 0.0) : (value < 0.0);
        if (!sign_ok) violate("sign", a, b, value);
        rays[b].emplace_back(a, value);
    }

    for (auto& [b, ray] : rays) {
        std::sort(ray.begin(), ray.end());
        // |phi| must not decrease walking away from the diagonal on either side.
        auto scan = [&](auto begin, auto end) {
            double prev = 0.0;
            for (auto it = begin; it != end; ++it) {
                const double mag = std::abs(it->second);
                if (mag < prev - 1e-12) violate("ray_monotonicity", it->first, b, it->second);
                prev = std::max(prev, mag);
            }
        };
        auto split = std::partition_point(ray.begin(), ray.end(),
                                          [&](const auto& p) { return p.first < b; });
        scan(split, ray.end());                                      // a > b, ascending
        scan(std::make_reverse_iterator(split), ray.rend());         // a < b, descending
    }
    return report;
}

}  // namespace gradnet
