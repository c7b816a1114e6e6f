#include "cpst/solver_report.hpp"

namespace cpst {

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::converged: return "converged";
    case Termination::max_iterations: return "max_iterations";
    case Termination::degenerate: return "degenerate";
    case Termination::step_search_failed: return "step_search_failed";
  }
  return "unknown";
}

}  // namespace cpst
