#pragma once

#include <Eigen/Dense>

#include <limits>
#include <string>

namespace gradnet {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Closed scalar interval used as the admissible domain of couplings and
/// energy densities. Unbounded ends are +-infinity.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool open_lo = false;  // strict inequality at the lower end (e.g. z > 0)
    bool open_hi = false;

    static Interval all_reals() { return {}; }
    static Interval positive_reals() { return {0.0, std::numeric_limits<double>::infinity(), true, false}; }

    bool contains(double z) const {
        if (open_lo ? !(z > lo) : !(z >= lo)) return false;
        if (open_hi ? !(z < hi) : !(z <= hi)) return false;
        return true;
    }

    std::string describe() const;
};

}  // namespace gradnet
