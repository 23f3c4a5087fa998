#pragma once

#include <stdexcept>
#include <string>

namespace chd {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input text (wrong arity, unparsable number, truncated file).
class parse_error : public error {
public:
    using error::error;
};

/// Input violates the declared schema (unknown category, bad header, range).
class schema_error : public error {
public:
    using error::error;
};

/// Dimension or arity mismatch between values that must agree.
class shape_error : public error {
public:
    using error::error;
};

/// Non-finite values, singular systems, diverged optimizations.
class numeric_error : public error {
public:
    using error::error;
};

/// Invalid configuration value or unknown configuration key.
class config_error : public error {
public:
    using error::error;
};

/// File system failures (open, read, write).
class io_error : public error {
public:
    using error::error;
};

/// Persisted artifact carries an unsupported format version.
class version_error : public error {
public:
    using error::error;
};

} // namespace chd
