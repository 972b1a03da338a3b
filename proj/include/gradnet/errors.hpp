#pragma once

#include <stdexcept>
#include <string>

namespace gradnet {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// The zero eigenvalue of a Laplacian is not simple to working precision, or
/// the positive left eigenvector does not exist. Signals a graph that is not
/// strongly connected.
struct SingularStructure : Error {
    using Error::Error;
};

/// An argument left the declared domain of a coupling or energy function.
struct DomainViolation : Error {
    using Error::Error;
};

/// The secant fallback of the coupling/energy ratio degenerated; the energy
/// derivative is locally flat (density not strictly convex there).
struct NonFiniteRatio : Error {
    using Error::Error;
};

/// A metric matrix has a nonzero off-diagonal entry outside the edge set of
/// the incidence matrix it is being factorized against.
struct SparsityMismatch : Error {
    using Error::Error;
};

/// An operation that requires a specific energy kind was invoked with
/// another one.
struct WrongEnergyKind : Error {
    using Error::Error;
};

/// The weight pattern fails detailed balance with respect to the stationary
/// vector.
struct DetailedBalanceViolation : Error {
    using Error::Error;
};

/// A time step left the coupling/energy domain during integration.
struct StepDomainViolation : Error {
    StepDomainViolation(const std::string& msg, double t) : Error(msg), time(t) {}
    double time;
};

/// Scenario file does not match the expected schema.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace gradnet
