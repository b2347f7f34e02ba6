#pragma once

#include <stdexcept>
#include <string>

namespace fluxgate {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid configuration (bad schedule parameters, violated device invariants,
/// duplicate drives, unknown sweep axis, ...).
struct ConfigError : Error {
    using Error::Error;
};

/// Basis index outside the Hilbert layout.
struct IndexError : Error {
    using Error::Error;
};

/// Operator or state dimension does not match the layout.
struct DimensionError : Error {
    using Error::Error;
};

/// A caller-supplied object violates an operation contract
/// (e.g. a non-Hermitian Hamiltonian passed to the unitary propagator).
struct ContractViolation : Error {
    using Error::Error;
};

/// Lindblad integration drifted beyond tolerance; retry with a smaller dt.
struct StepSizeError : Error {
    using Error::Error;
};

/// Scalar argument outside its mathematical domain (nonpositive rate, ...).
struct DomainError : Error {
    using Error::Error;
};

}  // namespace fluxgate
