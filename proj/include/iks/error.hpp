#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace iks {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on the arguments was violated (non-prime p, b = 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Input text or JSON could not be parsed.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line = 0, int column = 0)
        : Error(line > 0 ? what + " (line " + std::to_string(line) + ", column " +
                               std::to_string(column) + ")"
                         : what),
          line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

/// A computation would exceed its configured work or memory budget.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(const std::string& what, double required, double budget)
        : Error(what), required_(required), budget_(budget) {}

    double required() const noexcept { return required_; }
    double budget() const noexcept { return budget_; }

private:
    double required_;
    double budget_;
};

/// Two routes that must agree did not. Always an implementation bug.
class VerificationFailure : public Error {
public:
    using Error::Error;
};

}  // namespace iks
