#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pflp {

// Base class for every error this library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input is well-formed but violates a domain constraint.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Malformed text input; carries the 1-based line and the offending field.
class ParseError : public Error {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& field,
               const std::string& what)
        : Error(source + ":" + std::to_string(line) + ": " + field + ": " + what),
          line_(line), field_(field) {}

    std::size_t line() const { return line_; }
    const std::string& field() const { return field_; }

private:
    std::size_t line_;
    std::string field_;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace pflp
