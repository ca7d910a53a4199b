#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace covham {

/// Malformed expression text. `position` is the byte offset of the first
/// offending character.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position)
        : std::runtime_error(message), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Evaluation left the mathematical domain (log of a non-positive value,
/// division by zero, non-integer power of a non-positive base, ...).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A scenario or input failed validation; the message names the field.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SingularMatrixError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace covham
