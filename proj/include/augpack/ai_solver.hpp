#pragma once

#include <cstdint>

#include "augpack/instance.hpp"
#include "augpack/solution.hpp"

namespace augpack {

struct AiParams {
  int alpha = 15;  // original instance has alpha + 1 items after the split
  int beta = 3;    // bins of the original instance
  double time_limit_s = 0.0;  // <= 0: unlimited
  Count exact_units = 24;     // cap for the final perfect-packing check on R
};

struct AiStats {
  std::uint64_t recursive_calls = 0;
  std::uint64_t base_cases_reached = 0;
  double wall_time_s = 0.0;
  bool timed_out = false;
};

struct AiResult {
  SolveOutcome outcome;
  AiStats stats;
};

// Backtracking over triplet candidates for augmented IRUP instances: items
// are peeled off in full weight triplets while up to two "split" removals and
// the large items of the original core accumulate in a removed set R, which
// must finally fill beta bins exactly. Returns Optimal with a perfect packing,
// Unsolved when the search is exhausted or times out, Inapplicable when the
// instance fails the eligibility gate or the counting preconditions.
AiResult practical_ai_solve(const Instance& inst, const AiParams& params = {});

// Enumerates every (alpha+1)-unit core C with a beta-bin perfect packing and
// peels the rest through items that sit in exactly one full weight triplet.
// Exponential in alpha; only for small instances (throws SizeCapExceeded
// above `max_units`).
SolveOutcome naive_ai_solve(const Instance& inst, const AiParams& params = {},
                            Count max_units = 25);

}  // namespace augpack
