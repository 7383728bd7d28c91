#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "augpack/instance.hpp"
#include "augpack/mff_graph.hpp"
#include "augpack/solution.hpp"

namespace augpack {

// Set of mandatory weights for a partial capacity, or the infeasible
// state. Sets stay tiny in practice, so a sorted vector is enough.
class MandatorySet {
 public:
  MandatorySet() = default;  // infeasible
  static MandatorySet bottom() { return {}; }
  static MandatorySet of(std::vector<Weight> weights);

  bool is_bottom() const { return bottom_; }
  std::span<const Weight> weights() const { return weights_; }
  bool contains(Weight w) const;

  // this ∪ {w}; stays infeasible when infeasible.
  MandatorySet with(Weight w) const;
  // Intersection where an infeasible operand acts as the universal set.
  MandatorySet meet(const MandatorySet& other) const;

  friend bool operator==(const MandatorySet&, const MandatorySet&) = default;

 private:
  bool bottom_ = true;
  std::vector<Weight> weights_;
};

// dp[p] for p = 0..W.
using MandatoryTable = std::vector<MandatorySet>;

// Lightest type first over the graph arcs; types with zero demand and arcs
// with m above the demand are skipped.
MandatoryTable mandatory_dp(const AdjGraph& graph, std::span<const Count> demands);

// Packs every complementary pair (w_e + w_f = W) as often as possible.
// `demands` is indexed like `inst` and is reduced in place.
Solution fix_full_pairs(const Instance& inst, std::vector<Count>& demands);

struct TripletCandidate {
  Weight a = 0;
  Weight b = 0;
  Weight c = 0;  // the mandatory weight of a

  friend bool operator==(const TripletCandidate&, const TripletCandidate&) = default;
};

struct Identification {
  std::vector<TripletCandidate> triplets;             // descending a
  std::vector<std::pair<Weight, Weight>> mergeable;   // (a, w), w mandatory for a
  std::vector<Weight> obstructions;                   // large weights in no full pattern
};

Identification identify_triplets(const MandatoryTable& table, const AdjGraph& graph,
                                 std::span<const Count> demands);

enum class FixMode { kChecked, kFast };

// Packs one (a, b, c) triplet if distinct units are available and, in
// checked mode, no full pattern holds a together with units outside the
// triplet only. `graph` must have been built or pruned for demands at least
// as large as the current ones.
bool fix_triplet(const AdjGraph& graph, std::vector<Count>& demands,
                 const TripletCandidate& t, FixMode mode, Solution& partial);

struct AniParams {
  int alpha = 15;
  int beta = 3;
  Count residual_cap = 5;  // largest residual bin bound finished exactly
  FixMode mode = FixMode::kChecked;
  bool merge = false;
  double time_limit_s = 0.0;  // <= 0: unlimited
  Count exact_units = 40;     // unit cap for the residual search
};

struct AniStats {
  std::uint64_t iterations = 0;  // DP runs
  std::uint64_t fixed_triplets = 0;
  std::uint64_t fixed_pairs = 0;
  std::uint64_t merges = 0;
  Count residual_size = 0;  // units left for the exact finish
  Count residual_bins = 0;  // lower bound of the residual
  double dp_ratio = 0.0;    // mean of W * units / |Adj| over DP runs
  bool obstruction = false;
  bool timed_out = false;
  double wall_time_s = 0.0;
};

struct ReduceResult {
  Solution partial;   // fixed full patterns, in input weights
  Instance residual;  // composite items (merge mode) appear as their sum
  AniStats stats;
  // Expands composite weights of residual-packing patterns into input
  // weights; identity unless merging happened.
  std::vector<std::pair<Weight, Pattern>> composites;
};

ReduceResult reduce(const Instance& inst, const AniParams& params = {});

struct AniResult {
  SolveOutcome outcome;
  AniStats stats;
};

AniResult ani_solve(const Instance& inst, const AniParams& params = {});

}  // namespace augpack
