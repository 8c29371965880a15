#pragma once

#include <stdexcept>
#include <string>

namespace clftraj {

// Bad argument supplied by the caller (wrong length, unknown id, non-positive constant).
class ArgumentError : public std::invalid_argument {
public:
    explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

// A documented precondition was violated (non-orthonormal input, asymmetric matrix).
class ContractViolation : public std::logic_error {
public:
    explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

// An elementary operation left its numeric domain; carries the operation name.
class NumericDomainError : public std::domain_error {
public:
    NumericDomainError(const std::string& op, const std::string& what)
        : std::domain_error(op + ": " + what), op_(op) {}
    const std::string& op() const noexcept { return op_; }

private:
    std::string op_;
};

// Orbit regime outside what the conversions support (parabolic/hyperbolic).
class UnsupportedOrbitError : public std::domain_error {
public:
    explicit UnsupportedOrbitError(const std::string& what) : std::domain_error(what) {}
};

// Filesystem failure, message includes the offending path.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace clftraj
