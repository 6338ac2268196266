#pragma once

#include <stdexcept>
#include <string>

namespace ordercalc {

// Raised when input text does not conform to a documented grammar.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a value is outside an operation's documented domain
// (zero where positive is required, finite where infinite is required, ...).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ordercalc
