#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gelfand {

// Malformed input or a broken structural precondition (unknown generator,
// mixed presentations, invalid morphism). The CLI maps these to exit 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// A well-formed input that is mathematically rejected: an assignment that is
// not a character, a state that is not positive. The CLI maps these to exit 2.
class Rejection : public Error {
public:
    Rejection(std::string kind, const std::string& what)
        : Error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

} // namespace gelfand
