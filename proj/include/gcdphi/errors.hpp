#pragma once

#include <stdexcept>
#include <string>

namespace gcdphi {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Requested size exceeds a configured or supported limit.
class CapacityError : public Error {
public:
    using Error::Error;
};

// An input violated a documented precondition (e.g. a prime table too short).
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Mathematical domain violation: gcd(0, 0), log of a nonpositive value, ...
class DomainError : public Error {
public:
    using Error::Error;
};

// Unknown spec name, bad parameters, malformed run configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

// A numerical routine could not certify its tolerance.
class NumericError : public Error {
public:
    using Error::Error;
};

}  // namespace gcdphi
