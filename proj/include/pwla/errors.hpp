#pragma once

#include <stdexcept>
#include <string>

namespace pwla {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a half-map or integral.
class DomainError : public Error {
public:
    using Error::Error;
};

/// The system cannot be brought to the Lienard canonical form (aL12 * aR12 <= 0).
class CanonicalizationError : public Error {
public:
    using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A numerically checked contract (e.g. delta(y0) == 0) is violated beyond tolerance.
class ContractError : public Error {
public:
    using Error::Error;
};

/// The orbit never comes back to the separation line.
class NoReturn : public Error {
public:
    using Error::Error;
};

/// The orbit meets the separation line tangentially.
class Tangency : public Error {
public:
    using Error::Error;
};

/// The orbit reaches the sliding segment of the separation line.
class SlidingEncountered : public Error {
public:
    using Error::Error;
};

/// Malformed input (parameter files, CLI values).
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace pwla
