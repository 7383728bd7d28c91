#include "augpack/triplet_index.hpp"

#include <algorithm>
#include <unordered_map>

namespace augpack {

TripletIndex::TripletIndex(const Instance& inst)
    : inst_(&inst),
      by_type_(inst.type_count()),
      demand_(inst.demands()),
      tau_(inst.type_count(), 0),
      large_(inst.type_count(), 0),
      part_of_(inst.type_count(), 0) {
  const std::size_t n = inst.type_count();
  const Weight cap = inst.capacity();
  std::unordered_map<Weight, std::size_t> lookup;
  lookup.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i) lookup.emplace(inst.weight(i), i);

  // i <= j <= k in type order means w_i >= w_j >= w_k.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const Weight rest = cap - inst.weight(i) - inst.weight(j);
      if (rest < 1) continue;
      if (rest > inst.weight(j)) break;  // lighter j only makes rest larger
      auto it = lookup.find(rest);
      if (it == lookup.end()) continue;
      WeightTriplet t{{i, j, it->second}};
      bool ok = true;
      for (std::size_t s : t.types) ok = ok && t.uses(s) <= inst.demand(s);
      if (ok) triplets_.push_back(t);
    }
  }

  alive_.assign(triplets_.size(), 1);
  live_ = triplets_.size();
  for (std::size_t id = 0; id < triplets_.size(); ++id) {
    const auto& t = triplets_[id];
    for (int s = 0; s < 3; ++s) {
      if (s > 0 && t.types[s] == t.types[s - 1]) continue;
      by_type_[t.types[s]].push_back(id);
      ++tau_[t.types[s]];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    large_[i] = is_large(inst.weight(i), cap) ? 1 : 0;
    remaining_units_ += demand_[i];
    refresh_partition(i);
  }
}

std::span<const std::size_t> TripletIndex::partition(int k) const {
  if (k < 1 || k > 3) throw std::out_of_range("partition index must be 1..3");
  return parts_[static_cast<std::size_t>(k - 1)];
}

int TripletIndex::partition_of(std::size_t type) const {
  if (!large_[type] || demand_[type] == 0) return 0;
  return tau_[type] >= 1 && tau_[type] <= 3 ? tau_[type] : 0;
}

void TripletIndex::refresh_partition(std::size_t type) {
  const int want = partition_of(type);
  const int have = part_of_[type];
  if (want == have) return;
  if (have != 0) {
    auto& v = parts_[static_cast<std::size_t>(have - 1)];
    v.erase(std::lower_bound(v.begin(), v.end(), type));
  }
  if (want != 0) {
    auto& v = parts_[static_cast<std::size_t>(want - 1)];
    v.insert(std::lower_bound(v.begin(), v.end(), type), type);
  }
  part_of_[type] = want;
}

bool TripletIndex::realizable(std::size_t id) const {
  const auto& t = triplets_[id];
  for (std::size_t s : t.types) {
    if (t.uses(s) > demand_[s]) return false;
  }
  return true;
}

void TripletIndex::set_demand(std::size_t type, Count value) {
  journal_.push_back({Field::kDemand, type, demand_[type]});
  remaining_units_ += value - demand_[type];
  demand_[type] = value;
  refresh_partition(type);
}

void TripletIndex::kill(std::size_t id) {
  journal_.push_back({Field::kAlive, id, 1});
  alive_[id] = 0;
  --live_;
  const auto& t = triplets_[id];
  for (int s = 0; s < 3; ++s) {
    if (s > 0 && t.types[s] == t.types[s - 1]) continue;
    --tau_[t.types[s]];
    refresh_partition(t.types[s]);
  }
}

std::vector<std::size_t> TripletIndex::remove_units(std::span<const Removal> removals) {
  std::vector<std::size_t> touched;
  for (const auto& r : removals) {
    if (r.count == 0) continue;
    if (r.count < 0 || r.count > demand_[r.type]) {
      throw std::invalid_argument("removal exceeds remaining demand");
    }
    set_demand(r.type, demand_[r.type] - r.count);
  }
  for (const auto& r : removals) {
    if (r.count == 0) continue;
    for (std::size_t id : by_type_[r.type]) {
      if (!alive_[id] || realizable(id)) continue;
      for (std::size_t s : triplets_[id].types) touched.push_back(s);
      kill(id);
    }
  }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  std::vector<std::size_t> cascade;
  for (std::size_t s : touched) {
    if (tau_[s] == 0 && demand_[s] > 0) cascade.push_back(s);
  }
  return cascade;
}

std::vector<std::size_t> TripletIndex::remove_unit(std::size_t type) {
  const Removal r{type, 1};
  return remove_units(std::span<const Removal>(&r, 1));
}

std::vector<std::size_t> TripletIndex::candidate_set(int split_count) const {
  if (!parts_[0].empty()) {
    throw std::logic_error("candidate set requested while A1 is not empty");
  }
  std::vector<std::size_t> anchors(parts_[1].begin(), parts_[1].end());
  if (split_count == 0) anchors.insert(anchors.end(), parts_[2].begin(), parts_[2].end());
  std::vector<std::size_t> out;
  for (std::size_t a : anchors) {
    for (std::size_t id : by_type_[a]) {
      if (!alive_[id]) continue;
      for (std::size_t s : triplets_[id].types) out.push_back(s);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t TripletIndex::unique_triplet(std::size_t type) const {
  if (tau_[type] != 1) throw std::logic_error("type does not have exactly one triplet");
  for (std::size_t id : by_type_[type]) {
    if (alive_[id]) return id;
  }
  throw std::logic_error("tau out of sync with live triplets");
}

int TripletIndex::kill_count(std::size_t id) const {
  const auto& t = triplets_[id];
  int killed = 0;
  for (int s = 0; s < 3; ++s) {
    const std::size_t type = t.types[s];
    if (s > 0 && type == t.types[s - 1]) continue;
    const Count left = demand_[type] - t.uses(type);
    for (std::size_t other : by_type_[type]) {
      if (other == id || !alive_[other]) continue;
      if (triplets_[other].uses(type) > left) ++killed;
    }
  }
  return killed;
}

void TripletIndex::rollback(std::size_t mark) {
  while (journal_.size() > mark) {
    const Entry e = journal_.back();
    journal_.pop_back();
    if (e.field == Field::kDemand) {
      remaining_units_ += e.old_value - demand_[e.slot];
      demand_[e.slot] = e.old_value;
      refresh_partition(e.slot);
    } else {
      alive_[e.slot] = 1;
      ++live_;
      const auto& t = triplets_[e.slot];
      for (int s = 0; s < 3; ++s) {
        if (s > 0 && t.types[s] == t.types[s - 1]) continue;
        ++tau_[t.types[s]];
        refresh_partition(t.types[s]);
      }
    }
  }
}

IndexSnapshot TripletIndex::snapshot() const {
  IndexSnapshot snap;
  for (std::size_t id = 0; id < triplets_.size(); ++id) {
    if (!alive_[id]) continue;
    const auto& t = triplets_[id].types;
    snap.live_triplets.push_back(
        {inst_->weight(t[0]), inst_->weight(t[1]), inst_->weight(t[2])});
  }
  std::sort(snap.live_triplets.begin(), snap.live_triplets.end());
  for (std::size_t i = 0; i < demand_.size(); ++i) {
    if (demand_[i] > 0) snap.tau.emplace_back(inst_->weight(i), tau_[i]);
  }
  for (int k = 0; k < 3; ++k) {
    for (std::size_t i : parts_[static_cast<std::size_t>(k)]) {
      snap.partitions[static_cast<std::size_t>(k)].push_back(inst_->weight(i));
    }
  }
  return snap;
}

bool TripletIndex::same_state(const TripletIndex& o) const {
  return triplets_ == o.triplets_ && alive_ == o.alive_ && demand_ == o.demand_ &&
         tau_ == o.tau_ && parts_ == o.parts_ && part_of_ == o.part_of_ &&
         live_ == o.live_ && remaining_units_ == o.remaining_units_;
}

}  // namespace augpack
