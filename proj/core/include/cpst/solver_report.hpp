#pragma once

#include <string_view>
#include <vector>

namespace cpst {

enum class Termination {
  converged,          // stopping test met
  max_iterations,     // iteration cap reached
  degenerate,         // iterate collapsed (zero normalization, zero input)
  step_search_failed  // backtracking exhausted its doubling budget
};

std::string_view to_string(Termination t);

/// Iteration trace shared by every iterative solver.
struct SolverReport {
  int iterations = 0;
  Termination termination = Termination::converged;
  std::vector<double> objective;  // one value per iteration
  std::vector<double> residual;   // solver-specific stopping quantity per iteration
  bool degenerate_spectrum = false;
};

}  // namespace cpst
