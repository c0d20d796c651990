#pragma once

#include <stdexcept>
#include <string>

namespace lipcert {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad input: malformed documents, violated invariants, infeasible
/// parameters. CLI maps these to exit code 2.
class InputError : public Error {
public:
    using Error::Error;
};

/// Malformed document (not parseable as the expected format).
class ParseError : public InputError {
public:
    using InputError::InputError;
};

/// Structurally valid input violating a domain invariant. Messages carry a
/// field path where one exists (e.g. "Q: eigenvalue -1 < 0").
class ValidationError : public InputError {
public:
    using InputError::InputError;
};

/// Estimator parameter constraint violated; the message names the
/// violated inequality.
class InvalidParams : public InputError {
public:
    using InputError::InputError;
};

/// Operation not available in the requested dimension.
class DimensionUnsupported : public InputError {
public:
    using InputError::InputError;
};

/// Input data insufficient for classification (too few radii / decades).
class InsufficientProfile : public InputError {
public:
    using InputError::InputError;
};

/// A function evaluation produced a non-finite result.
class NonFiniteValue : public Error {
public:
    using Error::Error;
};

/// Gradient requested where none is defined or implemented.
class GradientUnavailable : public Error {
public:
    using Error::Error;
};

/// Support function of an empty point set.
class EmptyPointSet : public Error {
public:
    using Error::Error;
};

/// Constructive cover could not be verified at the configured resolution.
class CoverConstructionFailed : public Error {
public:
    using Error::Error;
};

}  // namespace lipcert
