#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mahler {

struct MahlerError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedPair : MahlerError {
    using MahlerError::MahlerError;
};

// a functional equation residual has an exact order below the checked length
struct EquationMismatch : MahlerError {
    using MahlerError::MahlerError;
};

struct InsufficientSeries : MahlerError {
    using MahlerError::MahlerError;
};

struct OrderExceedsCap : MahlerError {
    std::size_t cap;
    OrderExceedsCap(const std::string& what, std::size_t cap_) : MahlerError(what), cap(cap_) {}
};

struct LiftError : MahlerError {
    long level;
    LiftError(const std::string& what, long m) : MahlerError(what + " at m=" + std::to_string(m)), level(m) {}
};

struct IdentityViolation : LiftError {
    using LiftError::LiftError;
};
struct OrderLawViolation : LiftError {
    using LiftError::LiftError;
};
struct DegreeBoundViolation : LiftError {
    using LiftError::LiftError;
};

struct InvalidPoint : MahlerError {
    using MahlerError::MahlerError;
};
struct NonIntegralForm : MahlerError {
    using MahlerError::MahlerError;
};
struct EnclosureMismatch : MahlerError {
    using MahlerError::MahlerError;
};

struct BoundDomainError : MahlerError {
    using MahlerError::MahlerError;
};

struct FixtureError : MahlerError {
    std::size_t line;
    FixtureError(const std::string& what, std::size_t line_)
        : MahlerError("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

}  // namespace mahler
