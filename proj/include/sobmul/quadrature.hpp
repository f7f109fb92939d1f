#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace sobmul::quad {

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  long evaluations = 0;
};

struct Options {
  double rel_tol = 1e-10;
  double abs_tol = 1e-300;
  std::size_t limit = 4000;  // max subintervals
  // Declared endpoint behavior: integrand ~ (t-a)^(alpha_a-1) near a and
  // (b-t)^(alpha_b-1) near b.  alpha = 1 means regular; alpha in (0,1)
  // triggers a power substitution that removes the singularity.
  double alpha_a = 1.0;
  double alpha_b = 1.0;
};

enum class InfMap {
  Algebraic,  // t = a + z/(1-z); good default for algebraic decay
  ExpDecay    // t = a - log(1-z); for integrands with exponential decay
};

using Fn = std::function<double(double)>;

QuadResult integrate(const Fn& f, double a, double b, const Options& opt = {});
QuadResult integrate_to_inf(const Fn& f, double a, const Options& opt = {},
                            InfMap map = InfMap::Algebraic);

// Integral of exp(logf) over [a,b], evaluated with a max-shift so that
// integrands whose scale over/underflows double are handled.  Returns the
// log of the integral (-inf if the integral is zero).
struct LogQuadResult {
  double log_value;
  double rel_error_estimate;
  long evaluations;
};
LogQuadResult integrate_log(const Fn& logf, double a, double b, const Options& opt = {});
LogQuadResult integrate_log_to_inf(const Fn& logf, double a, const Options& opt = {},
                                   InfMap map = InfMap::Algebraic);

// Sum of integrals over consecutive segments [breaks[k], breaks[k+1]] and,
// past the last break, over [last + k*tail_spacing, ...].  Stops once
// `consecutive_small` trailing segments each contribute less than
// rel_tol * |total|.  Meant for damped oscillatory integrands split at the
// oscillation zeros.
QuadResult integrate_segments(const Fn& f, const std::vector<double>& breaks,
                              double tail_spacing, double rel_tol,
                              int consecutive_small = 3,
                              std::size_t max_segments = 4000);

}  // namespace sobmul::quad
