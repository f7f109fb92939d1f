#pragma once

#include <stdexcept>
#include <string>

namespace sobmul {

// Iterative scheme failed to converge; carries the best partial estimate.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double partial)
      : std::runtime_error(what), partial_estimate(partial) {}
  double partial_estimate;
};

// Quadrature finished but could not certify the requested accuracy.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double estimate, double achieved)
      : std::runtime_error(what), best_estimate(estimate), achieved_error(achieved) {}
  double best_estimate;
  double achieved_error;
};

// A closed-form path was requested outside its validity conditions.
class UnsupportedCase : public std::runtime_error {
 public:
  explicit UnsupportedCase(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sobmul
