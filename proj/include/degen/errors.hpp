#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace degen {

/// Base of every error raised by the library. kind() is the short,
/// machine-parsable category printed by the CLI ("error[kind]: ...").
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual std::string_view kind() const noexcept = 0;
};

/// Malformed arguments: rank mismatches, vectors outside a cone, bad formats.
class InputError : public Error {
public:
    using Error::Error;
    std::string_view kind() const noexcept override { return "input"; }
};

/// The lattice model cannot support the request (e.g. a cone without a
/// strictly positive grading, so enumeration would not terminate).
class ModelError : public Error {
public:
    using Error::Error;
    std::string_view kind() const noexcept override { return "model"; }
};

/// A geometry configuration failed one of its load-time invariants.
/// code() names the invariant, e.g. "gamma_Y1_pairing".
class ValidationError : public Error {
public:
    ValidationError(std::string code, const std::string& message)
        : Error(message), code_(std::move(code)) {}
    std::string_view kind() const noexcept override { return "validation"; }
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

/// Integer arithmetic left the range of std::int64_t.
class OverflowError : public Error {
public:
    using Error::Error;
    std::string_view kind() const noexcept override { return "overflow"; }
};

/// Oracle bounds do not cover the request.
class BoundsError : public Error {
public:
    using Error::Error;
    std::string_view kind() const noexcept override { return "bounds"; }
};

}  // namespace degen
