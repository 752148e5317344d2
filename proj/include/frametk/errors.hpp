#pragma once

#include <stdexcept>
#include <string>

namespace frametk {

/// Malformed arguments to a numerical routine (bad shape, empty matrix, ...).
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// Input text is not well-formed JSON.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Input is JSON but violates the expected document layout.
class SchemaError : public std::runtime_error {
public:
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

/// An operator fails the hypothesis required by a bound-transfer rule.
class HypothesisError : public std::runtime_error {
public:
    explicit HypothesisError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace frametk
