#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "augpack/instance.hpp"

namespace augpack {

struct GenParams {
  Count h = 0;               // triplets appended to the original instance
  Weight small_floor = 0;    // lower end of c_k; 0 means W / 10
  bool enforce_large = true; // draw a_k >= W/2
  std::uint64_t seed = 1;
  int max_retries = 100000;  // per triplet
  int alpha = 15;
  int beta = 3;
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// 15-item original instance with W = 20000 and total weight 3W that has no
// 3-bin perfect packing. Its weights are the edges of K6 with every vertex
// star summing to W, so the stars are its only full patterns.
Instance reference_original();

struct OriginalReport {
  bool sum_ok = false;             // total weight == beta * W
  bool size_ok = false;            // alpha units
  bool no_perfect_packing = false;
  std::optional<Count> min_bins;   // exact optimum when checked
  bool lp_assumed = true;          // fractional bound is not verified
  bool valid = false;
  std::vector<std::string> problems;
};

// Integer-side checks only. Throws SizeCapExceeded above the exact cap.
OriginalReport validate_original(const Instance& orig, int alpha = 15, int beta = 3);

struct GeneratedInstance {
  Instance instance;
  std::vector<std::array<Weight, 3>> triplets;  // (a, b, c) in insertion order
  std::vector<std::string> log;
};

// Appends params.h triplets (a_k, b_k, c_k) summing to W. No subset of the
// items present before step k may complete a_k to W, and every a_k differs
// from all large weights already present. Throws GenerationError when the
// retry budget runs out.
GeneratedInstance generate_ani(const Instance& orig, const GenParams& params);

struct Split {
  Weight original = 0;
  Weight first = 0;
  Weight second = 0;
};

struct DerivedAi {
  Instance instance;
  Split split;
};

// Splits one original item so the original part gains a beta-bin perfect
// packing. Splits whose parts collide with existing weights, or that would
// let earlier items complete some a_k, are skipped. Throws GenerationError
// if no split works.
DerivedAi derive_ai(const GeneratedInstance& ani, const Instance& orig, const GenParams& params);

}  // namespace augpack
