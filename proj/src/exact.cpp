#include "augpack/exact.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

namespace augpack {
namespace {

// Bin completion over item types. Every new bin takes the largest remaining
// unit and is completed with lighter-or-equal units; only maximal bins are
// explored, and bins are produced in canonical order so bin permutations and
// identical units never branch twice.
class BinCompletion {
 public:
  BinCompletion(const Instance& inst, Count max_bins)
      : inst_(inst), left_(inst.demands()), max_bins_(max_bins) {
    slack_ = max_bins * inst.capacity() - inst.total_weight();
  }

  bool run() {
    if (slack_ < 0) return false;
    return solve();
  }

  Solution solution() const {
    Solution s;
    for (const auto& b : bins_) s.add(b);
    return s.canonical();
  }

 private:
  bool solve() {
    std::size_t t = 0;
    while (t < left_.size() && left_[t] == 0) ++t;
    if (t == left_.size()) return true;
    if (static_cast<Count>(bins_.size()) >= max_bins_) return false;

    std::string key = state_key();
    if (failed_.contains(key)) return false;

    --left_[t];
    bins_.emplace_back();
    bins_.back().add(inst_.weight(t));
    const bool ok = extend(t, inst_.capacity() - inst_.weight(t));
    if (!ok) {
      bins_.pop_back();
      ++left_[t];
      failed_.insert(std::move(key));
    }
    return ok;
  }

  // Chooses how many units of types j.. to add to the open bin.
  bool extend(std::size_t j, Weight room) {
    if (room == 0 || j == left_.size()) return close(room);
    const Weight w = inst_.weight(j);
    const Count most = std::min(left_[j], room / w);
    for (Count c = most; c >= 0; --c) {
      left_[j] -= c;
      if (c > 0) bins_.back().add(w, c);
      const bool ok = extend(j + 1, room - c * w);
      if (ok) return true;
      if (c > 0) bins_.back().remove(w, c);
      left_[j] += c;
    }
    return false;
  }

  bool close(Weight room) {
    if (waste_ + room > slack_) return false;
    // Maximality: no remaining unit may still fit.
    for (std::size_t k = left_.size(); k-- > 0;) {
      if (left_[k] > 0) {
        if (inst_.weight(k) <= room) return false;
        break;
      }
    }
    waste_ += room;
    const bool ok = solve();
    if (!ok) waste_ -= room;
    return ok;
  }

  std::string state_key() const {
    std::string k;
    k.reserve(left_.size() * 2 + 16);
    for (Count c : left_) k += std::to_string(c) + ',';
    k += '|' + std::to_string(bins_.size()) + '|' + std::to_string(waste_);
    return k;
  }

  const Instance& inst_;
  std::vector<Count> left_;
  Count max_bins_;
  Weight slack_ = 0;
  Weight waste_ = 0;
  std::vector<Pattern> bins_;
  std::unordered_set<std::string> failed_;
};

void check_cap(const Instance& inst, const ExactLimits& limits) {
  if (inst.unit_count() > limits.max_units) {
    throw SizeCapExceeded("exact search limited to " + std::to_string(limits.max_units) +
                          " units, instance has " + std::to_string(inst.unit_count()));
  }
}

}  // namespace

std::optional<Solution> find_perfect_packing(const Instance& inst, Count bins,
                                             ExactLimits limits) {
  if (inst.total_weight() != bins * inst.capacity()) {
    throw std::invalid_argument("perfect packing needs total weight == bins * capacity");
  }
  check_cap(inst, limits);
  BinCompletion bc(inst, bins);
  if (!bc.run()) return std::nullopt;
  return bc.solution();
}

Solution first_fit_decreasing(const Instance& inst) {
  std::vector<Pattern> bins;
  std::vector<Weight> loads;
  for (const auto& it : inst.items()) {
    for (Count u = 0; u < it.demand; ++u) {
      std::size_t b = 0;
      while (b < bins.size() && loads[b] + it.weight > inst.capacity()) ++b;
      if (b == bins.size()) {
        bins.emplace_back();
        loads.push_back(0);
      }
      bins[b].add(it.weight);
      loads[b] += it.weight;
    }
  }
  Solution s;
  for (auto& b : bins) s.add(std::move(b));
  return s.canonical();
}

MinBinsResult exact_min_bins(const Instance& inst, Count upper_limit, ExactLimits limits) {
  check_cap(inst, limits);
  if (inst.empty()) return {0, Solution{}};

  Count lb = lower_bound(inst);
  Count over_half = 0;
  for (const auto& it : inst.items()) {
    if (2 * it.weight > inst.capacity()) over_half += it.demand;
  }
  lb = std::max(lb, over_half);

  Solution ffd = first_fit_decreasing(inst);
  const Count ub = ffd.value;
  for (Count k = lb; k < ub && k <= upper_limit; ++k) {
    BinCompletion bc(inst, k);
    if (bc.run()) return {k, bc.solution()};
  }
  if (ub <= upper_limit) return {ub, std::move(ffd)};
  return {};
}

}  // namespace augpack
