#ifndef STACKMST_ERRORS_HPP
#define STACKMST_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stackmst {

/// Malformed instance or price text. Carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line)
    {
    }

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A structurally invalid instance (bad vertex index, negative cost,
/// red subgraph not spanning, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An enumeration or iteration budget ran out. Exact procedures never fall
/// back to an approximate answer; they throw this instead.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace stackmst

#endif // STACKMST_ERRORS_HPP
