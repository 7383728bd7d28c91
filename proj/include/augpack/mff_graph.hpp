#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "augpack/instance.hpp"

namespace augpack {

// Arc of type i from capacity p to p + m * w_i (m copies of the item).
struct Arc {
  Weight p = 0;
  Count m = 0;

  friend bool operator==(const Arc&, const Arc&) = default;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

// Multiplicity-flow network restricted to arcs lying on a source-to-sink
// path, i.e. on some full pattern. Types follow the instance order
// (decreasing weight). Arc lists are in increasing p; a type's arcs never
// feed each other, so a DP can update a capacity vector in place while
// scanning them.
class AdjGraph {
 public:
  AdjGraph() = default;

  static AdjGraph build(const Instance& inst);

  // Same graph for reduced demands (indexed like the build instance). Only
  // existing arcs are rescanned, O(|Adj| + W) per pass.
  AdjGraph pruned(std::span<const Count> demands) const;

  Weight capacity() const { return capacity_; }
  std::size_t type_count() const { return weights_.size(); }
  Weight weight(std::size_t type) const { return weights_[type]; }
  std::span<const Arc> arcs(std::size_t type) const { return arcs_[type]; }
  std::size_t arc_count() const;

  // Non-empty arc lists keyed by item weight; lets graphs over different
  // type numberings be compared.
  std::map<Weight, std::vector<Arc>> by_weight() const;

  // "weight p m" per arc, one per line, types in order.
  std::string dump() const;

 private:
  void backward();

  Weight capacity_ = 0;
  std::vector<Weight> weights_;
  std::vector<std::vector<Arc>> arcs_;
};

// Does some multiset of units, with availability demands[i] minus
// exclusions[w_i], sum exactly to `target`? Plain bounded subset sum over
// the graph's item types.
bool reach_excluding(const AdjGraph& graph, std::span<const Count> demands, Weight target,
                     const std::map<Weight, Count>& exclusions = {});

// Is there a full pattern containing one unit of `type` whose other units
// avoid `exclusions` (availability demands[i] minus exclusions[w_i], where
// the unit of `type` itself is not counted against its exclusion)? Walks
// the graph arcs only.
bool completes_excluding(const AdjGraph& graph, std::span<const Count> demands,
                         std::size_t type, const std::map<Weight, Count>& exclusions = {});

}  // namespace augpack
