#pragma once

#include <optional>
#include <stdexcept>

#include "augpack/instance.hpp"
#include "augpack/solution.hpp"

namespace augpack {

// Exact bin-completion search for small instances. Used as the test oracle,
// for the 3-bin check of the AI solver and for finishing ANI residuals.

struct ExactLimits {
  Count max_units = 24;
};

class SizeCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A `bins`-bin packing with every bin full, or nullopt if none exists.
// Throws std::invalid_argument unless total weight == bins * W.
std::optional<Solution> find_perfect_packing(const Instance& inst, Count bins,
                                             ExactLimits limits = {});

struct MinBinsResult {
  std::optional<Count> bins;  // nullopt: optimum exceeds the limit
  std::optional<Solution> solution;
};

MinBinsResult exact_min_bins(const Instance& inst, Count upper_limit,
                             ExactLimits limits = {});

// First-fit decreasing; an upper bound and a cheap feasible packing.
Solution first_fit_decreasing(const Instance& inst);

}  // namespace augpack
