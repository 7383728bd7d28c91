#include "augpack/instance.hpp"

#include <algorithm>
#include <stdexcept>

namespace augpack {

Instance Instance::normalize(std::vector<ItemType> raw, Weight capacity,
                             std::string name) {
  if (capacity < 1) throw std::invalid_argument("capacity must be positive");
  for (const auto& it : raw) {
    if (it.weight < 1 || it.weight > capacity) {
      throw std::invalid_argument("weight " + std::to_string(it.weight) +
                                  " outside [1, " + std::to_string(capacity) + "]");
    }
    if (it.demand < 1) {
      throw std::invalid_argument("demand of weight " + std::to_string(it.weight) +
                                  " must be positive");
    }
  }
  std::sort(raw.begin(), raw.end(),
            [](const ItemType& a, const ItemType& b) { return a.weight > b.weight; });

  Instance inst;
  inst.capacity_ = capacity;
  inst.name_ = std::move(name);
  for (const auto& it : raw) {
    if (!inst.items_.empty() && inst.items_.back().weight == it.weight) {
      if (__builtin_add_overflow(inst.items_.back().demand, it.demand,
                                 &inst.items_.back().demand)) {
        throw std::overflow_error("demand overflow");
      }
    } else {
      inst.items_.push_back(it);
    }
  }
  for (const auto& it : inst.items_) {
    Weight contrib = 0;
    if (__builtin_mul_overflow(it.weight, it.demand, &contrib) ||
        __builtin_add_overflow(inst.total_weight_, contrib, &inst.total_weight_) ||
        __builtin_add_overflow(inst.unit_count_, it.demand, &inst.unit_count_)) {
      throw std::overflow_error("total weight does not fit in 64 bits");
    }
  }
  return inst;
}

Instance Instance::with_demands(const Instance& base, std::span<const Count> demands) {
  if (demands.size() != base.type_count()) {
    throw std::invalid_argument("demand vector size mismatch");
  }
  std::vector<ItemType> raw;
  for (std::size_t i = 0; i < demands.size(); ++i) {
    if (demands[i] < 0) throw std::invalid_argument("negative demand");
    if (demands[i] > 0) raw.push_back({base.weight(i), demands[i]});
  }
  return normalize(std::move(raw), base.capacity(), base.name());
}

std::optional<std::size_t> Instance::index_of(Weight w) const {
  auto it = std::lower_bound(items_.begin(), items_.end(), w,
                             [](const ItemType& a, Weight v) { return a.weight > v; });
  if (it == items_.end() || it->weight != w) return std::nullopt;
  return static_cast<std::size_t>(it - items_.begin());
}

std::vector<Count> Instance::demands() const {
  std::vector<Count> d;
  d.reserve(items_.size());
  for (const auto& it : items_) d.push_back(it.demand);
  return d;
}

std::vector<Weight> Instance::expanded() const {
  std::vector<Weight> out;
  out.reserve(static_cast<std::size_t>(unit_count_));
  for (const auto& it : items_) out.insert(out.end(), static_cast<std::size_t>(it.demand), it.weight);
  return out;
}

Count lower_bound(const Instance& inst) {
  const Weight w = inst.capacity();
  return (inst.total_weight() + w - 1) / w;
}

EligibilityReport check_eligibility(const Instance& inst) {
  EligibilityReport r;
  r.divisible = inst.total_weight() % inst.capacity() == 0;
  if (r.divisible) r.bins = inst.total_weight() / inst.capacity();
  for (const auto& it : inst.items()) {
    if (is_large(it.weight, inst.capacity())) {
      r.large_count += it.demand;
      ++r.large_distinct;
    }
  }
  r.eligible = r.divisible && r.large_count >= *r.bins - 3;
  return r;
}

}  // namespace augpack
