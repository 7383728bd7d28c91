#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace oracle {

Count min_bins(const std::vector<Weight>& units, Weight cap) {
  const std::size_t n = units.size();
  if (n > 16) throw std::invalid_argument("oracle limited to 16 units");
  if (n == 0) return 0;
  const std::uint32_t full = (1u << n) - 1;
  std::vector<Weight> sum(full + 1, 0);
  for (std::uint32_t m = 1; m <= full; ++m) {
    const int low = __builtin_ctz(m);
    sum[m] = sum[m & (m - 1)] + units[static_cast<std::size_t>(low)];
  }
  const Count inf = static_cast<Count>(n) + 1;
  std::vector<Count> best(full + 1, inf);
  best[0] = 0;
  for (std::uint32_t m = 1; m <= full; ++m) {
    const std::uint32_t low = m & (~m + 1);
    const std::uint32_t rest = m & ~low;
    for (std::uint32_t s = rest;; s = (s - 1) & rest) {
      const std::uint32_t bin = s | low;
      if (sum[bin] <= cap) best[m] = std::min(best[m], best[m & ~bin] + 1);
      if (s == 0) break;
    }
  }
  return best[full];
}

std::set<Multiset> full_patterns(const augpack::Instance& inst) {
  std::set<Multiset> out;
  Multiset cur;
  std::function<void(std::size_t, Weight)> walk = [&](std::size_t t, Weight room) {
    if (room == 0) {
      if (!cur.empty()) out.insert(cur);
      return;
    }
    if (t == inst.type_count()) return;
    const Weight w = inst.weight(t);
    for (Count c = 0; c <= inst.demand(t) && c * w <= room; ++c) {
      if (c > 0) cur.emplace_back(w, c);
      walk(t + 1, room - c * w);
      if (c > 0) cur.pop_back();
    }
  };
  walk(0, inst.capacity());
  return out;
}

bool subset_sum(const std::map<Weight, Count>& avail, Weight target) {
  std::vector<std::pair<Weight, Count>> items(avail.begin(), avail.end());
  std::function<bool(std::size_t, Weight)> walk = [&](std::size_t i, Weight left) {
    if (left == 0) return true;
    if (i == items.size()) return false;
    for (Count c = 0; c <= items[i].second && c * items[i].first <= left; ++c) {
      if (walk(i + 1, left - c * items[i].first)) return true;
    }
    return false;
  };
  return walk(0, target);
}

std::vector<std::vector<RefSet>> unit_dp(const augpack::Instance& inst) {
  const std::vector<Weight> units = inst.expanded();
  const Weight cap = inst.capacity();
  const std::size_t n = units.size();
  std::vector<std::vector<RefSet>> dp(n + 1, std::vector<RefSet>(static_cast<std::size_t>(cap) + 1));
  dp[n][static_cast<std::size_t>(cap)] = std::set<Weight>{};
  for (std::size_t u = n; u-- > 0;) {
    const Weight wi = units[u];
    for (Weight w = 0; w <= cap; ++w) {
      const auto& skip = dp[u + 1][static_cast<std::size_t>(w)];
      RefSet val;
      if (w + wi > cap) {
        val = skip;
      } else if (w + wi == cap) {
        val = std::set<Weight>{wi};
      } else {
        RefSet take = dp[u + 1][static_cast<std::size_t>(w + wi)];
        if (take) take->insert(wi);
        if (!skip) {
          val = take;
        } else if (!take) {
          val = skip;
        } else {
          std::set<Weight> both;
          std::set_intersection(skip->begin(), skip->end(), take->begin(), take->end(),
                                std::inserter(both, both.end()));
          val = both;
        }
      }
      dp[u][static_cast<std::size_t>(w)] = val;
    }
  }
  return dp;
}

std::optional<std::size_t> unit_row_for(const augpack::Instance& inst, Weight p) {
  std::map<Weight, Count> heavier;
  std::size_t first_unit = 0;
  for (std::size_t t = 0; t < inst.type_count(); ++t) {
    if (subset_sum(heavier, p)) return first_unit;
    heavier[inst.weight(t)] = inst.demand(t);
    first_unit += static_cast<std::size_t>(inst.demand(t));
  }
  return std::nullopt;
}

augpack::Instance random_instance(std::mt19937_64& rng, Weight cap_lo, Weight cap_hi,
                                  Count max_units) {
  const Weight cap = std::uniform_int_distribution<Weight>(cap_lo, cap_hi)(rng);
  const Count units = std::uniform_int_distribution<Count>(1, max_units)(rng);
  std::vector<augpack::ItemType> raw;
  for (Count i = 0; i < units; ++i) {
    raw.push_back({std::uniform_int_distribution<Weight>(1, cap)(rng), 1});
  }
  return augpack::Instance::normalize(std::move(raw), cap);
}

}  // namespace oracle
