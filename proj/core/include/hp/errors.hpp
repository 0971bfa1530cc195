#pragma once

#include <stdexcept>
#include <string>

namespace hp {

// Bad inputs: malformed configs, invalid intervals, out-of-range indices.
// The CLI maps this to exit code 2.
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// Computation that failed after exhausting its escalation budget
// (quadrature non-convergence, rank ambiguity, Newton divergence).
// The CLI maps this to exit code 3.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// A yes/no question whose answer cannot be certified at the current
// precision (e.g. interlacing with overlapping root enclosures).
class undecidable_error : public numerical_error {
 public:
  explicit undecidable_error(const std::string& what) : numerical_error(what) {}
};

}  // namespace hp
