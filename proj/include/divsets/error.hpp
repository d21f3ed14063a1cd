#pragma once

#include <stdexcept>
#include <string>

namespace divsets {

// Exit codes used by the command-line front end.
enum class ExitCode : int { Ok = 0, Internal = 1, Config = 2, Io = 3 };

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    [[nodiscard]] virtual ExitCode exit_code() const noexcept { return ExitCode::Internal; }
};

// Malformed arguments to a library operation.
class InvalidInput : public Error {
public:
    using Error::Error;
    [[nodiscard]] ExitCode exit_code() const noexcept override { return ExitCode::Config; }
};

// Inconsistent experiment or run configuration.
class ConfigError : public Error {
public:
    using Error::Error;
    [[nodiscard]] ExitCode exit_code() const noexcept override { return ExitCode::Config; }
};

// Unreadable, unwritable or malformed files.
class IoError : public Error {
public:
    using Error::Error;
    [[nodiscard]] ExitCode exit_code() const noexcept override { return ExitCode::Io; }
};

class ParseError : public IoError {
public:
    using IoError::IoError;
};

// Instance files that parse but fall outside what the library supports (e.g. weighted graphs).
class UnsupportedInstance : public IoError {
public:
    using IoError::IoError;
};

// A cached quantity disagrees with its definition. Always a bug.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

// Refusal to run an exponential enumeration beyond its guard.
class ResourceError : public Error {
public:
    using Error::Error;
};

} // namespace divsets
