#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace behaviorlab {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input rejected by a precondition (kind mismatch, overfill, bad threshold, ...).
class InputError : public Error {
public:
    using Error::Error;
};

/// Malformed source file. Carries the 1-based line (header is line 1) and column name.
class ParseError : public Error {
public:
    ParseError(std::string file, std::size_t line, std::string column, const std::string& what)
        : Error(file + ":" + std::to_string(line) + ": column '" + column + "': " + what),
          file_(std::move(file)),
          line_(line),
          column_(std::move(column)) {}

    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }
    const std::string& column() const noexcept { return column_; }

private:
    std::string file_;
    std::size_t line_;
    std::string column_;
};

/// A behavior or report file does not match the canonical schema.
class SchemaError : public Error {
public:
    using Error::Error;
};

}  // namespace behaviorlab
