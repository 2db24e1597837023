#pragma once

#include <stdexcept>
#include <string>

namespace twsplit {

/// Malformed input: bad edge, unreadable file, inconsistent config.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The data admit no test, e.g. an edge density of exactly 0 or 1.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative eigensolve ran out of iterations.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double best_estimate)
      : std::runtime_error(what), best_estimate_(best_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }

 private:
  double best_estimate_;
};

}  // namespace twsplit
