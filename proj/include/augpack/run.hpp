#pragma once

#include <string>
#include <vector>

#include "augpack/ai_solver.hpp"
#include "augpack/ani_solver.hpp"
#include "augpack/io.hpp"

namespace augpack {

enum class SolverChoice { kAi, kAni, kAuto, kBoth };

SolverChoice parse_solver_choice(const std::string& s);

struct RunOptions {
  SolverChoice solver = SolverChoice::kAuto;
  AiParams ai;
  AniParams ani;
};

struct Run {
  RunRecord record;
  SolveOutcome outcome;
};

// One entry per solver actually run. Auto runs the ANI pipeline and falls
// back to the AI solver unless the first run is Optimal; its last entry is
// the deciding one.
std::vector<Run> run_solvers(const Instance& inst, const RunOptions& opts);

// 0 Optimal, 2 Unsolved, 3 Inapplicable.
int exit_code(SolveStatus s);

}  // namespace augpack
