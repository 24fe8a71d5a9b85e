#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace quotmmp {

// Thrown by the text parsers (polynomial grammar, point/subspace files).
// Columns are 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, int column)
        : std::runtime_error(message + " (column " + std::to_string(column) + ")"),
          column_(column) {}

    int column() const { return column_; }

private:
    int column_;
};

// Raised when an enumeration would visit more objects than the configured cap.
// Carries the exact count so callers can report it without re-computing.
class CapExceededError : public std::runtime_error {
public:
    CapExceededError(std::string message, mpz_class count)
        : std::runtime_error(std::move(message)), count_(std::move(count)) {}

    const mpz_class& count() const { return count_; }

private:
    mpz_class count_;
};

}  // namespace quotmmp
