#pragma once

#include <stdexcept>
#include <string>

namespace loopgr {

// Base class for every error raised by the library. The CLI maps each
// subclass family onto one exit code (see cli.hpp).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Operands live over different coefficient rings.
class BackendMismatch : public Error {
public:
    using Error::Error;
};

// Family of errors that can be cured by recomputing at a larger precision.
class PrecisionError : public Error {
public:
    using Error::Error;
};

// All known coefficients of a series vanish.
class ZeroToPrecision : public PrecisionError {
public:
    using PrecisionError::PrecisionError;
};

// A shifted denominator is zero on its known window.
class UndetectableValuation : public PrecisionError {
public:
    using PrecisionError::PrecisionError;
};

// The requested answer is not certified at the current working precision.
// `suggested_precision` is the precision a caller should retry with.
class InsufficientPrecision : public PrecisionError {
public:
    InsufficientPrecision(const std::string& what, int suggested_precision)
        : PrecisionError(what + " (retry with precision " + std::to_string(suggested_precision) + ")"),
          suggested_precision_(suggested_precision)
    {
    }

    int suggested_precision() const noexcept { return suggested_precision_; }

private:
    int suggested_precision_;
};

// A matrix whose determinant is exactly zero, or zero on its whole window.
class SingularToPrecision : public Error {
public:
    using Error::Error;
};

// Mathematical domain violations: non-unit leading coefficients, non-unit
// point differences, unsupported group sizes and the like.
class DomainError : public Error {
public:
    using Error::Error;
};

class NonUnitLeading : public DomainError {
public:
    using DomainError::DomainError;
};

class UnboundedPole : public DomainError {
public:
    using DomainError::DomainError;
};

// The h0 table admits no splitting type. Mathematically impossible; signals a
// bug or an uncertified expansion.
class InconsistentH0 : public DomainError {
public:
    using DomainError::DomainError;
};

class NotImplemented : public DomainError {
public:
    using DomainError::DomainError;
};

// Malformed input documents (JSON, ring strings, coefficient literals).
class SchemaError : public Error {
public:
    using Error::Error;
};

} // namespace loopgr
