#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace latinp {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input text could not be turned into a board; carries the offending line.
class ParseError : public Error {
public:
    enum class Kind { Syntax, UnknownLabel, CellOutOfRange, BadCount, NonUniform };

    ParseError(Kind kind, std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), kind_(kind), line_(line)
    {
    }

    Kind kind() const { return kind_; }
    std::size_t line() const { return line_; }

private:
    Kind kind_;
    std::size_t line_;
};

class NotAPuzzle : public Error {
public:
    using Error::Error;
};

class ReplayMismatch : public Error {
public:
    using Error::Error;
};

class ExhaustionRequired : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

} // namespace latinp
