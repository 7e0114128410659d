#pragma once

#include <stdexcept>
#include <string>

namespace quiverpoly {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Input vector length does not match the quiver's arrow or vertex count.
struct DimensionError : Error {
    using Error::Error;
};

/// Structural precondition violated (disconnected, cyclic, bad vertex id, ...).
struct StructureError : Error {
    using Error::Error;
};

/// An enumeration would exceed the configured capacity bounds.
struct CapacityError : Error {
    using Error::Error;
};

/// A correctness guarantee's precondition chain failed (e.g. non-generic weight
/// where the recovery guarantee requires genericity).
struct GuaranteeError : Error {
    using Error::Error;
};

/// Malformed quiver file or generator spec.
struct ParseError : Error {
    using Error::Error;
};

/// Computed data violates an invariant that should hold for valid inputs
/// (e.g. duplicate dual vertices, which signals a tightness violation).
struct IntegrityError : Error {
    using Error::Error;
};

/// A bounded deterministic search ran out of candidates.
struct SearchError : Error {
    using Error::Error;
};

/// LP solver exceeded its pivot cap or reached an inconsistent state.
struct SolverError : Error {
    using Error::Error;
};

}  // namespace quiverpoly
