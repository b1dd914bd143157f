#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mfa {

/// Mismatched matrix/vector dimensions.
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Weight-matrix column whose entries sum too close to zero to rescale.
struct DegenerateColumnError : std::invalid_argument {
  DegenerateColumnError(std::size_t layer_index, std::size_t column_index, double column_sum)
      : std::invalid_argument("degenerate column: layer " + std::to_string(layer_index) +
                              ", column " + std::to_string(column_index) + " sums to " +
                              std::to_string(column_sum)),
        layer(layer_index),
        column(column_index) {}
  std::size_t layer;
  std::size_t column;
};

/// Malformed row in an input file; line numbers are 1-based.
struct ParseError : std::runtime_error {
  ParseError(const std::string& message, std::size_t line_number)
      : std::runtime_error("line " + std::to_string(line_number) + ": " + message),
        line(line_number) {}
  std::size_t line;
};

/// Iterative method stopped before reaching its tolerance.
struct ConvergenceError : std::runtime_error {
  ConvergenceError(const std::string& message, double residual_value)
      : std::runtime_error(message + " (residual " + std::to_string(residual_value) + ")"),
        residual(residual_value) {}
  double residual;
};

/// Non-finite loss encountered while training.
struct DivergenceError : std::runtime_error {
  explicit DivergenceError(long epoch_number)
      : std::runtime_error("non-finite loss at epoch " + std::to_string(epoch_number)),
        epoch(epoch_number) {}
  long epoch;
};

}  // namespace mfa
