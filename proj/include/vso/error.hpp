#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vso {

/// Invalid parameters, bounds, identifiers or budgets supplied by the caller.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A file could not be opened, read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed cell in a tabular input. Row and column are 1-based; row counts
/// the header as row 1.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t row, std::size_t column, const std::string& what)
        : std::runtime_error("row " + std::to_string(row) + ", column " + std::to_string(column) + ": " + what),
          row_(row), column_(column) {}

    [[nodiscard]] std::size_t row() const noexcept { return row_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

class InsufficientDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Requested metric is undefined for the given benchmark (no tabled optimum).
class UnsupportedMetricError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A ranking matrix has a missing (function, algorithm) cell.
class IncompleteMatrixError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace vso
