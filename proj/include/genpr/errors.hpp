#ifndef GENPR_ERRORS_HPP
#define GENPR_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace genpr {

/// Coarse failure categories. The CLI maps these onto process exit codes.
enum class ErrorKind {
    dimension_mismatch,
    insufficient_samples,
    domain,
    numeric,
    format,
    io,
    config,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& what) : Error(ErrorKind::dimension_mismatch, what) {}
};

/// Raised when a cloud has too few points for the requested neighbor index.
class InsufficientSamples : public Error {
public:
    explicit InsufficientSamples(const std::string& what) : Error(ErrorKind::insufficient_samples, what) {}
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

/// An iterative numeric routine failed to reach its tolerance.
class NumericError : public Error {
public:
    explicit NumericError(const std::string& what) : Error(ErrorKind::numeric, what) {}
};

/// Malformed binary or text input. Carries the byte offset where decoding stopped.
class FormatError : public Error {
public:
    FormatError(const std::string& what, std::uint64_t offset)
        : Error(ErrorKind::format, what + " (at byte offset " + std::to_string(offset) + ")"), offset_(offset) {}

    std::uint64_t offset() const noexcept { return offset_; }

private:
    std::uint64_t offset_;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

/// Invalid experiment configuration or command-line value.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(ErrorKind::config, what) {}
};

/// Re-throws a genpr::Error with `prefix` prepended to its message, keeping its dynamic type.
[[noreturn]] inline void rethrow_with_context(const Error& e, const std::string& prefix) {
    const std::string msg = prefix + ": " + e.what();
    switch (e.kind()) {
    case ErrorKind::dimension_mismatch:
        throw DimensionMismatch(msg);
    case ErrorKind::insufficient_samples:
        throw InsufficientSamples(msg);
    case ErrorKind::domain:
        throw DomainError(msg);
    case ErrorKind::numeric:
        throw NumericError(msg);
    case ErrorKind::format: {
        const auto* fe = dynamic_cast<const FormatError*>(&e);
        throw FormatError(prefix + ": " + e.what(), fe ? fe->offset() : 0);
    }
    case ErrorKind::io:
        throw IoError(msg);
    case ErrorKind::config:
        throw ConfigError(msg);
    }
    throw Error(e.kind(), msg);
}

} // namespace genpr

#endif
