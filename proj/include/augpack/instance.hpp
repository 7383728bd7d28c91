#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace augpack {

using Weight = std::int64_t;
using Count = std::int64_t;

struct ItemType {
  Weight weight = 0;
  Count demand = 0;

  friend bool operator==(const ItemType&, const ItemType&) = default;
};

// A bin packing / cutting stock instance in canonical form: weights are
// distinct and strictly decreasing, every weight lies in [1, W] and every
// demand is positive. Immutable once built.
class Instance {
 public:
  Instance() = default;

  // Merges equal weights, sorts by decreasing weight and checks ranges.
  // Throws std::invalid_argument for out-of-range weights, non-positive
  // demands or capacity, and std::overflow_error when the total weight does
  // not fit in 64 bits.
  static Instance normalize(std::vector<ItemType> raw, Weight capacity,
                            std::string name = {});

  // Same item types as `base` with demands replaced; zero entries are dropped.
  static Instance with_demands(const Instance& base,
                               std::span<const Count> demands);

  Weight capacity() const { return capacity_; }
  std::span<const ItemType> items() const { return items_; }
  std::size_t type_count() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const std::string& name() const { return name_; }

  Weight weight(std::size_t type) const { return items_[type].weight; }
  Count demand(std::size_t type) const { return items_[type].demand; }

  Count unit_count() const { return unit_count_; }
  Weight total_weight() const { return total_weight_; }

  std::optional<std::size_t> index_of(Weight w) const;
  std::vector<Count> demands() const;
  // One entry per unit, in decreasing weight order.
  std::vector<Weight> expanded() const;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.capacity_ == b.capacity_ && a.items_ == b.items_;
  }

 private:
  Weight capacity_ = 1;
  std::vector<ItemType> items_;
  std::string name_;
  Count unit_count_ = 0;
  Weight total_weight_ = 0;
};

// ceil(sum w_i d_i / W); 0 for the empty instance.
Count lower_bound(const Instance& inst);

inline bool is_large(Weight w, Weight capacity) { return 2 * w >= capacity; }

struct EligibilityReport {
  bool divisible = false;
  std::optional<Count> bins;  // D = sum / W when divisible
  Count large_count = 0;      // units with weight >= W/2
  Count large_distinct = 0;   // distinct weights >= W/2
  bool eligible = false;
};

EligibilityReport check_eligibility(const Instance& inst);

}  // namespace augpack
