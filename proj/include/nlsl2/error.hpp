#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nlsl2 {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (non-finite input,
/// t == 0 for a quadratic, q <= 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A documented precondition does not hold for the supplied data.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// An orbit left the bounded region (|f^k(x)| > escape bound or non-finite).
class DivergenceError : public Error {
public:
    DivergenceError(std::size_t index, double value);

    /// Iterate index k at which f^k(x) escaped.
    std::size_t index() const noexcept { return index_; }
    double value() const noexcept { return value_; }

private:
    std::size_t index_;
    double value_;
};

/// Unitary construction requested for a ladder with a negative N_m^2.
class NotUnitaryError : public Error {
public:
    NotUnitaryError(std::size_t m, double nsq);

    std::size_t m() const noexcept { return m_; }
    double nsq() const noexcept { return nsq_; }

private:
    std::size_t m_;
    double nsq_;
};

/// Root isolation could not produce a validated root.
class RootIsolationError : public Error {
public:
    using Error::Error;
};

/// Malformed serialized input (JSON schema violations, bad CSV grid specs).
class SchemaError : public Error {
public:
    using Error::Error;
};

}  // namespace nlsl2
