#pragma once

#include <stdexcept>
#include <string>

namespace hypcc {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operands belong to different model spaces (field or dimension differ).
struct ModelMismatchError : Error {
    using Error::Error;
};

/// A stored representative violates its normalization contract.
struct RepresentationError : Error {
    using Error::Error;
};

/// A vector expected to be unit (or orthogonal) is not.
struct NormalizationError : Error {
    using Error::Error;
};

/// Two ideal endpoints coincide, so no geodesic joins them.
struct DegenerateGeodesicError : Error {
    using Error::Error;
};

/// A boundary point coincides with the chart center.
struct CenterCollisionError : Error {
    using Error::Error;
};

/// Mismatched Heisenberg dimensions.
struct DimensionMismatchError : Error {
    using Error::Error;
};

/// Argument outside the operation's domain (e.g. eigenvalue not in {-1,-4}).
struct DomainError : Error {
    using Error::Error;
};

/// A stated precondition failed (e.g. tangent not orthogonal).
struct PreconditionError : Error {
    using Error::Error;
};

/// A path violates the horizontality constraint; carries the worst step.
struct ConstraintViolationError : Error {
    ConstraintViolationError(const std::string& msg, int step, double violation)
        : Error(msg), worst_step(step), worst_violation(violation) {}
    int worst_step;
    double worst_violation;
};

/// An iterative solver failed to converge; carries the last iterates/residual.
struct ConvergenceError : Error {
    ConvergenceError(const std::string& msg, double a, double b)
        : Error(msg), last(a), previous(b) {}
    double last;
    double previous;
};

/// Chart inversion or chart consistency failure.
struct ChartError : Error {
    using Error::Error;
};

/// Degenerate triangle input (coincident vertices).
struct DegeneracyError : Error {
    using Error::Error;
};

/// Invalid harness configuration (unknown suite, bad output path, ...).
struct ConfigError : Error {
    using Error::Error;
};

} // namespace hypcc
