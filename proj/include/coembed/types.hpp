#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace coembed {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Item coordinates, one row per item, one column per embedding dimension.
using Embedding = Eigen::MatrixXd;

/// Malformed input data (bad edge-list line, bad CSV field, ...).
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, long line)
      : std::runtime_error(msg + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  long line() const { return line_; }

private:
  long line_;
};

/// Structurally invalid data: empty graph, zero-degree sample, mismatched
/// cluster/graph sizes, and similar.
class DataError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Numerical failure: diverged optimization, degenerate bandwidth,
/// SVD that did not converge.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace coembed
