#pragma once

#include <stdexcept>
#include <string>

namespace mlqsp {

// Precondition or domain violation. The CLI maps this to exit code 2.
class invalid_argument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An iterative construction (phase solve, filter fit) failed to reach its
// target. Carries the best residual achieved so callers can report
// diagnostics. The CLI maps this to exit code 3.
class solver_failure : public std::runtime_error {
 public:
  solver_failure(const std::string& what, double best_residual)
      : std::runtime_error(what), best_residual(best_residual) {}

  double best_residual;
};

}  // namespace mlqsp
