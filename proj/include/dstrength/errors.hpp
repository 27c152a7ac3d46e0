#pragma once

#include <stdexcept>
#include <string>

namespace dstrength {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument broke a stated precondition (non-Hermitian input, non-unit vector, ...).
class ContractViolation : public Error {
public:
    using Error::Error;
};

/// A matrix failed the density-matrix invariants (Hermitian, unit trace, PSD).
class InvariantViolation : public Error {
public:
    using Error::Error;
};

class RangeError : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// The requested computation exceeds a hard size guard.
class CapacityError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Invalid Hamiltonian spectrum (degenerate, unsorted, or spread >= 2*pi).
class SpectrumError : public Error {
public:
    using Error::Error;
};

/// A state file or other input could not be parsed.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace dstrength
