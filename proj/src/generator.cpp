#include "augpack/generator.hpp"

#include <algorithm>
#include <boost/dynamic_bitset.hpp>
#include <random>
#include <set>
#include <sstream>

#include "augpack/exact.hpp"

namespace augpack {
namespace {

using Sums = boost::dynamic_bitset<>;

Sums empty_sums(Weight cap) {
  Sums s(static_cast<std::size_t>(cap) + 1);
  s.set(0);
  return s;
}

void add_unit(Sums& s, Weight w) { s |= s << static_cast<std::size_t>(w); }

Weight effective_floor(const GenParams& p, Weight cap) {
  return p.small_floor > 0 ? p.small_floor : std::max<Weight>(1, cap / 10);
}

std::vector<Weight> units_of(const Instance& inst) { return inst.expanded(); }

}  // namespace

Instance reference_original() {
  const Weight cap = 20000;
  const std::vector<Weight> w = {5126, 4934, 4743, 4531, 4276, 4110, 4079, 3980,
                                 3872, 3702, 3641, 3604, 3381, 3290, 2731};
  std::vector<ItemType> items;
  for (Weight x : w) items.push_back({x, 1});
  return Instance::normalize(std::move(items), cap, "k6-original");
}

OriginalReport validate_original(const Instance& orig, int alpha, int beta) {
  OriginalReport r;
  r.sum_ok = orig.total_weight() == beta * orig.capacity();
  if (!r.sum_ok) r.problems.push_back("total weight is not beta * W");
  r.size_ok = orig.unit_count() == alpha;
  if (!r.size_ok) r.problems.push_back("item count is not alpha");
  if (r.sum_ok) {
    r.no_perfect_packing = !find_perfect_packing(orig, beta).has_value();
    if (!r.no_perfect_packing) r.problems.push_back("a beta-bin perfect packing exists");
    r.min_bins = exact_min_bins(orig, beta + 1).bins;
    if (r.min_bins != beta + 1) r.problems.push_back("optimum is not beta + 1");
  }
  r.valid = r.sum_ok && r.size_ok && r.no_perfect_packing && r.min_bins == beta + 1;
  return r;
}

GeneratedInstance generate_ani(const Instance& orig, const GenParams& params) {
  if (params.h < 0) throw std::invalid_argument("h must be nonnegative");
  const Weight cap = orig.capacity();
  if (cap < 4) throw GenerationError("capacity too small for triplets");
  const Weight floor = effective_floor(params, cap);

  GeneratedInstance out;
  std::vector<Weight> units = units_of(orig);
  std::set<Weight> large;
  for (Weight w : units) {
    if (is_large(w, cap)) large.insert(w);
  }
  Sums sums = empty_sums(cap);
  for (Weight w : units) add_unit(sums, w);

  std::mt19937_64 rng(params.seed);
  const Weight a_lo = params.enforce_large ? (cap + 1) / 2 : (cap + 2) / 3;
  std::uniform_int_distribution<Weight> draw_a(a_lo, cap - 2);

  for (Count k = 1; k <= params.h; ++k) {
    int tries = 0;
    Weight a = 0;
    for (;;) {
      if (tries++ >= params.max_retries) {
        std::ostringstream msg;
        msg << "retry budget exhausted at triplet " << k << " of " << params.h;
        throw GenerationError(msg.str());
      }
      a = draw_a(rng);
      if (large.contains(a)) continue;
      if (sums.test(static_cast<std::size_t>(cap - a))) continue;
      // Both small items must clear the floor.
      if (cap - a - floor < (cap - a + 1) / 2) continue;
      break;
    }
    const Weight r = cap - a;
    const Weight b_lo = (r + 1) / 2;
    const Weight b_hi = r - floor;
    const Weight b = std::uniform_int_distribution<Weight>(b_lo, b_hi)(rng);
    const Weight c = r - b;

    out.triplets.push_back({a, b, c});
    std::ostringstream line;
    line << "triplet " << k << ": " << a << ' ' << b << ' ' << c << " retries " << tries - 1;
    out.log.push_back(line.str());
    for (Weight w : {a, b, c}) {
      units.push_back(w);
      add_unit(sums, w);
      if (is_large(w, cap)) large.insert(w);
    }
  }

  std::vector<ItemType> items;
  for (Weight w : units) items.push_back({w, 1});
  std::ostringstream name;
  name << "ani_h" << params.h << "_s" << params.seed;
  out.instance = Instance::normalize(std::move(items), cap, name.str());
  return out;
}

namespace {

// Assigns the units of `rest` (bitmask over `ws`) to beta - 2 full bins and
// two open groups; calls back with the open group sums.
class SplitSearch {
 public:
  SplitSearch(std::vector<Weight> ws, Weight cap, int full_bins)
      : ws_(std::move(ws)), cap_(cap), full_bins_(full_bins) {}

  template <class Accept>
  bool run(Accept&& accept) {
    const std::uint32_t all = (1u << ws_.size()) - 1;
    return bins(all, full_bins_, accept);
  }

 private:
  Weight sum(std::uint32_t mask) const {
    Weight s = 0;
    for (std::size_t i = 0; i < ws_.size(); ++i) {
      if (mask >> i & 1u) s += ws_[i];
    }
    return s;
  }

  template <class Accept>
  bool bins(std::uint32_t rest, int left, Accept& accept) {
    if (left == 0) return groups(rest, accept);
    if (rest == 0) return false;
    // The lowest remaining unit anchors the next full bin.
    const std::uint32_t low = rest & (~rest + 1);
    const std::uint32_t others = rest & ~low;
    for (std::uint32_t sub = others;; sub = (sub - 1) & others) {
      const std::uint32_t bin = sub | low;
      if (sum(bin) == cap_ && bins(rest & ~bin, left - 1, accept)) return true;
      if (sub == 0) break;
    }
    return false;
  }

  template <class Accept>
  bool groups(std::uint32_t rest, Accept& accept) {
    const Weight total = sum(rest);
    for (std::uint32_t g = rest;; g = (g - 1) & rest) {
      const Weight s1 = sum(g);
      const Weight s2 = total - s1;
      if (s1 < cap_ && s2 < cap_ && accept(s1, s2)) return true;
      if (g == 0) break;
    }
    return false;
  }

  std::vector<Weight> ws_;
  Weight cap_;
  int full_bins_;
};

bool completion_free(const std::vector<Weight>& core,
                     const std::vector<std::array<Weight, 3>>& triplets, Weight cap) {
  Sums sums = empty_sums(cap);
  for (Weight w : core) add_unit(sums, w);
  for (const auto& t : triplets) {
    if (sums.test(static_cast<std::size_t>(cap - t[0]))) return false;
    for (Weight w : t) add_unit(sums, w);
  }
  return true;
}

// Weaker form: no a_k closes a full triplet with a split part and one
// earlier unit. Triplets among the unsplit units are already excluded.
bool triplet_free(const std::vector<Weight>& core, Weight p1, Weight p2,
                  const std::vector<std::array<Weight, 3>>& triplets, Weight cap) {
  std::multiset<Weight> seen(core.begin(), core.end());
  for (const auto& t : triplets) {
    for (Weight p : {p1, p2}) {
      const Weight need = cap - t[0] - p;
      auto it = seen.find(need);
      if (it == seen.end()) continue;
      if (need == p && seen.count(p) < 2) continue;
      return false;
    }
    for (Weight w : t) seen.insert(w);
  }
  return true;
}

}  // namespace

DerivedAi derive_ai(const GeneratedInstance& ani, const Instance& orig, const GenParams& params) {
  const Weight cap = orig.capacity();
  const std::vector<Weight> core = orig.expanded();
  if (core.size() > 20) throw GenerationError("original instance too large to split");
  if (params.beta < 2) throw GenerationError("splitting needs beta >= 2");

  std::set<Weight> taken;
  for (const auto& it : ani.instance.items()) taken.insert(it.weight);

  // Prefer splits that keep the full no-completion condition.
  for (bool strict : {true, false}) {
    for (std::size_t o = 0; o < core.size(); ++o) {
      const Weight wo = core[o];
      if (wo < 2) continue;
      if (o > 0 && core[o - 1] == wo) continue;
      std::vector<Weight> rest = core;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(o));
      std::optional<DerivedAi> found;
      SplitSearch search(rest, cap, params.beta - 2);
      search.run([&](Weight s1, Weight s2) {
        const Weight p1 = cap - s1;
        const Weight p2 = cap - s2;
        if (p1 < 1 || p2 < 1 || p1 + p2 != wo || p1 == p2) return false;
        if (taken.contains(p1) || taken.contains(p2)) return false;
        std::vector<Weight> split_core = rest;
        split_core.push_back(p1);
        split_core.push_back(p2);
        if (strict ? !completion_free(split_core, ani.triplets, cap)
                   : !triplet_free(split_core, p1, p2, ani.triplets, cap)) {
          return false;
        }

        std::vector<ItemType> items;
        for (Weight w : split_core) items.push_back({w, 1});
        for (const auto& t : ani.triplets) {
          for (Weight w : t) items.push_back({w, 1});
        }
        std::ostringstream name;
        name << "ai_h" << ani.triplets.size() << "_s" << params.seed;
        found = DerivedAi{Instance::normalize(std::move(items), cap, name.str()),
                          {wo, std::max(p1, p2), std::min(p1, p2)}};
        return true;
      });
      if (found) return *found;
    }
  }
  throw GenerationError("no item of the original instance admits a valid split");
}

}  // namespace augpack
