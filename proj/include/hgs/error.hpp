#pragma once

#include <stdexcept>
#include <string>

namespace hgs {

/// Base class of every error raised by the library. `where()` names the
/// operation (or pipeline stage) that rejected its input.
class Error : public std::runtime_error {
public:
    Error(std::string where, const std::string& message)
        : std::runtime_error(where + ": " + message)
        , where_(std::move(where))
    {
    }

    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

/// Malformed input: out-of-range vertex, bad format, inconsistent sizes.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A size cap of an exhaustive routine was exceeded.
class LimitExceeded : public Error {
public:
    using Error::Error;
};

/// A mathematical precondition does not hold (e.g. Sauer bound not met).
class PreconditionFailed : public Error {
public:
    using Error::Error;
};

/// A multi-step construction could not complete one of its steps.
class StepFailed : public Error {
public:
    using Error::Error;
};

} // namespace hgs
