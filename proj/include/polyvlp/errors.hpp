#pragma once

#include <stdexcept>
#include <string>

namespace polyvlp {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text (instance files, rationals).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Input parsed but violates a modelling assumption (cone not pointed, c not
/// in the relative interior, shape mismatch, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// The primal feasible set S or the dual feasible set T is empty.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// Desk-scale limits of the enumeration routines were exceeded.
class ScaleError : public Error {
public:
    using Error::Error;
};

/// A function was called outside its documented domain.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Supplied data is inconsistent with what it claims to be, e.g. a cone
/// solution whose witnesses fail the feasibility re-check.
class InconsistentInputError : public Error {
public:
    using Error::Error;
};

/// Degenerate cone handed to the outer approximation setup.
class DegenerateConeError : public Error {
public:
    using Error::Error;
};

/// A verification report found a violated property.
class VerificationError : public Error {
public:
    using Error::Error;
};

/// Should never happen for valid inputs.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace polyvlp
