#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace modwalk {

// Invalid input data: malformed graph, bad walk, not-a-permutation.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A caller broke an operation's documented precondition.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// An exhaustive routine refused an instance above its size guard, or the
// solver ran out of its state budget.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Instance-file syntax error; line is 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace modwalk
