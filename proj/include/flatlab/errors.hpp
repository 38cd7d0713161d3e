#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace flatlab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotPrime : public Error {
public:
    using Error::Error;
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
    using Error::Error;
};

class FieldMismatch : public Error {
public:
    FieldMismatch() : Error("operands belong to different fields") {}
    using Error::Error;
};

class ZeroPolynomial : public Error {
public:
    using Error::Error;
};

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class NotMobius : public Error {
public:
    using Error::Error;
};

class Inseparable : public Error {
public:
    using Error::Error;
};

class WildRamification : public Error {
public:
    using Error::Error;
};

class BadCharacteristic : public Error {
public:
    using Error::Error;
};

class BadPrime : public Error {
public:
    using Error::Error;
};

class WeightDivisibleByP : public Error {
public:
    using Error::Error;
};

class BadWeight : public Error {
public:
    using Error::Error;
};

class NotSemiInvariant : public Error {
public:
    using Error::Error;
};

class SingularCurve : public Error {
public:
    using Error::Error;
};

class IdentityCheckFailed : public Error {
public:
    using Error::Error;
};

class DegreeTooSmall : public Error {
public:
    using Error::Error;
};

/// A forward orbit did not close within the configured step or height limit.
class OrbitLimitExceeded : public Error {
public:
    using Error::Error;
};

/// Raised when an internal consistency check fails; always a bug.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace flatlab
