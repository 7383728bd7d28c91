#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "augpack/instance.hpp"

namespace augpack {

// A full weight triplet, stored as item-type indices of the owning instance
// in non-decreasing index order (so non-increasing weight). A type may occur
// twice or three times when its demand allows.
struct WeightTriplet {
  std::array<std::size_t, 3> types{};

  // How many slots of this triplet use `type`.
  int uses(std::size_t type) const {
    return (types[0] == type) + (types[1] == type) + (types[2] == type);
  }
  friend bool operator==(const WeightTriplet&, const WeightTriplet&) = default;
};

struct Removal {
  std::size_t type = 0;
  Count count = 0;
};

// Weight-level view of an index, independent of type numbering.
struct IndexSnapshot {
  std::vector<std::array<Weight, 3>> live_triplets;    // sorted
  std::vector<std::pair<Weight, int>> tau;              // weights with demand > 0
  std::array<std::vector<Weight>, 3> partitions;        // A1, A2, A3, descending

  friend bool operator==(const IndexSnapshot&, const IndexSnapshot&) = default;
};

// Full weight triplets of an instance together with the per-type live
// triplet count tau and the partitions A_k = { large a : tau(a) = k }.
// Demands shrink through remove_units(); every mutation is journaled so a
// search can roll back to an earlier checkpoint.
class TripletIndex {
 public:
  explicit TripletIndex(const Instance& inst);

  const Instance& instance() const { return *inst_; }
  std::size_t triplet_count() const { return triplets_.size(); }
  std::size_t live_count() const { return live_; }
  const WeightTriplet& triplet(std::size_t id) const { return triplets_[id]; }
  bool alive(std::size_t id) const { return alive_[id] != 0; }
  std::span<const std::size_t> triplets_of(std::size_t type) const {
    return by_type_[type];
  }

  Count demand(std::size_t type) const { return demand_[type]; }
  std::span<const Count> demands() const { return demand_; }
  Count remaining_units() const { return remaining_units_; }
  int tau(std::size_t type) const { return tau_[type]; }
  bool large(std::size_t type) const { return large_[type] != 0; }

  // A_k for k in {1, 2, 3}, as type indices in increasing order.
  std::span<const std::size_t> partition(int k) const;

  // Decrements demands, kills triplets that are no longer realizable and
  // returns the types (with remaining demand) whose tau dropped to 0.
  std::vector<std::size_t> remove_units(std::span<const Removal> removals);
  std::vector<std::size_t> remove_unit(std::size_t type);

  // Weights co-occurring in a live triplet with some a in A2 (plus A3 when
  // split_count == 0), a itself included; increasing type order.
  // Throws std::logic_error when A1 is not empty.
  std::vector<std::size_t> candidate_set(int split_count) const;

  // The single live triplet of a type with tau == 1.
  std::size_t unique_triplet(std::size_t type) const;

  // Number of other live triplets that die if triplet `id` is packed.
  int kill_count(std::size_t id) const;

  bool realizable(std::size_t id) const;

  std::size_t checkpoint() const { return journal_.size(); }
  void rollback(std::size_t mark);

  IndexSnapshot snapshot() const;

  // Compares every piece of mutable state (not the journal).
  bool same_state(const TripletIndex& other) const;

 private:
  enum class Field : unsigned char { kDemand, kAlive };
  struct Entry {
    Field field;
    std::size_t slot;
    Count old_value;
  };

  void set_demand(std::size_t type, Count value);
  void kill(std::size_t id);
  void refresh_partition(std::size_t type);
  int partition_of(std::size_t type) const;

  const Instance* inst_;
  std::vector<WeightTriplet> triplets_;
  std::vector<unsigned char> alive_;
  std::vector<std::vector<std::size_t>> by_type_;
  std::vector<Count> demand_;
  std::vector<int> tau_;
  std::vector<unsigned char> large_;
  std::array<std::vector<std::size_t>, 3> parts_;
  std::vector<int> part_of_;  // 0 = none, else k
  std::size_t live_ = 0;
  Count remaining_units_ = 0;
  std::vector<Entry> journal_;
};

}  // namespace augpack
