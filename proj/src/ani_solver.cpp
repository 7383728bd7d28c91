#include "augpack/ani_solver.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <stdexcept>

#include "augpack/exact.hpp"

namespace augpack {

MandatorySet MandatorySet::of(std::vector<Weight> weights) {
  MandatorySet s;
  s.bottom_ = false;
  std::sort(weights.begin(), weights.end());
  weights.erase(std::unique(weights.begin(), weights.end()), weights.end());
  s.weights_ = std::move(weights);
  return s;
}

bool MandatorySet::contains(Weight w) const {
  return !bottom_ && std::binary_search(weights_.begin(), weights_.end(), w);
}

MandatorySet MandatorySet::with(Weight w) const {
  if (bottom_) return *this;
  MandatorySet s = *this;
  auto it = std::lower_bound(s.weights_.begin(), s.weights_.end(), w);
  if (it == s.weights_.end() || *it != w) s.weights_.insert(it, w);
  return s;
}

MandatorySet MandatorySet::meet(const MandatorySet& other) const {
  if (bottom_) return other;
  if (other.bottom_) return *this;
  MandatorySet s;
  s.bottom_ = false;
  std::set_intersection(weights_.begin(), weights_.end(), other.weights_.begin(),
                        other.weights_.end(), std::back_inserter(s.weights_));
  return s;
}

MandatoryTable mandatory_dp(const AdjGraph& graph, std::span<const Count> demands) {
  if (demands.size() != graph.type_count()) {
    throw std::invalid_argument("demand vector does not match graph types");
  }
  const Weight cap = graph.capacity();
  MandatoryTable dp(static_cast<std::size_t>(cap) + 1);
  dp[cap] = MandatorySet::of({});
  for (std::size_t i = graph.type_count(); i-- > 0;) {
    if (demands[i] == 0) continue;
    const Weight w = graph.weight(i);
    for (const Arc& a : graph.arcs(i)) {
      if (a.m > demands[i]) continue;
      const MandatorySet& next = dp[a.p + a.m * w];
      if (next.is_bottom()) continue;
      if (dp[a.p].is_bottom() || a.p + w == cap) {
        dp[a.p] = next.with(w);
      } else {
        dp[a.p] = dp[a.p].meet(next.with(w));
      }
    }
  }
  return dp;
}

Solution fix_full_pairs(const Instance& inst, std::vector<Count>& demands) {
  Solution fixed;
  const Weight cap = inst.capacity();
  for (std::size_t e = 0; e < inst.type_count(); ++e) {
    const Weight we = inst.weight(e);
    if (2 * we < cap) break;
    auto f = inst.index_of(cap - we);
    if (!f) continue;
    const Count times = *f == e ? demands[e] / 2 : std::min(demands[e], demands[*f]);
    if (times == 0) continue;
    demands[e] -= *f == e ? 2 * times : times;
    if (*f != e) demands[*f] -= times;
    fixed.add(Pattern{we, cap - we}, times);
  }
  return fixed;
}

namespace {

std::optional<std::size_t> type_of(const AdjGraph& g, Weight w) {
  // Graph types are in decreasing weight order.
  std::size_t lo = 0, hi = g.type_count();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (g.weight(mid) > w) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < g.type_count() && g.weight(lo) == w) return lo;
  return std::nullopt;
}

// Types and per-type unit counts of a weight multiset, if every weight is a
// graph type with enough demand.
std::optional<std::map<std::size_t, Count>> units_for(const AdjGraph& g,
                                                      std::span<const Count> demands,
                                                      std::initializer_list<Weight> ws) {
  std::map<std::size_t, Count> need;
  for (Weight w : ws) {
    auto t = type_of(g, w);
    if (!t) return std::nullopt;
    ++need[*t];
  }
  for (const auto& [t, c] : need) {
    if (demands[t] < c) return std::nullopt;
  }
  return need;
}

}  // namespace

Identification identify_triplets(const MandatoryTable& table, const AdjGraph& graph,
                                 std::span<const Count> demands) {
  Identification out;
  const Weight cap = graph.capacity();
  for (std::size_t a = 0; a < graph.type_count(); ++a) {
    const Weight wa = graph.weight(a);
    if (!is_large(wa, cap)) break;
    if (demands[a] == 0) continue;
    const MandatorySet& s = table[wa];
    if (s.is_bottom()) {
      out.obstructions.push_back(wa);
      continue;
    }
    std::vector<Weight> seen;  // b of emitted triplets; (a, b, c) and (a, c, b) coincide
    for (Weight wc : s.weights()) {
      if (units_for(graph, demands, {wa, wc})) out.mergeable.emplace_back(wa, wc);
      const Weight wb = cap - wa - wc;
      if (wb < 1 || std::find(seen.begin(), seen.end(), wc) != seen.end()) continue;
      if (units_for(graph, demands, {wa, wb, wc})) {
        out.triplets.push_back({wa, wb, wc});
        seen.push_back(wb);
      }
    }
  }
  return out;
}

bool fix_triplet(const AdjGraph& graph, std::vector<Count>& demands,
                 const TripletCandidate& t, FixMode mode, Solution& partial) {
  if (t.a + t.b + t.c != graph.capacity()) {
    throw std::invalid_argument("triplet weights do not sum to the capacity");
  }
  auto need = units_for(graph, demands, {t.a, t.b, t.c});
  if (!need) return false;
  if (mode == FixMode::kChecked) {
    std::map<Weight, Count> excl;
    ++excl[t.a];
    ++excl[t.b];
    ++excl[t.c];
    if (completes_excluding(graph, demands, *type_of(graph, t.a), excl)) return false;
  }
  for (const auto& [type, c] : *need) demands[type] -= c;
  partial.add(Pattern{t.a, t.b, t.c});
  return true;
}

namespace {

using Clock = std::chrono::steady_clock;

// Composite units created by merging, per working weight. Units of a weight
// are interchangeable, so composites are handed out in any order.
class CompositePool {
 public:
  void push(Weight w, Pattern content) { pool_[w].push_back(std::move(content)); }

  // Content of one unit of weight w, consuming a composite if one is left.
  Pattern take(Weight w) {
    auto it = pool_.find(w);
    if (it == pool_.end() || it->second.empty()) return Pattern{w};
    Pattern p = std::move(it->second.back());
    it->second.pop_back();
    return p;
  }

  bool empty() const {
    return std::all_of(pool_.begin(), pool_.end(), [](const auto& e) { return e.second.empty(); });
  }

  Solution expand(const Solution& sol) {
    if (empty()) return sol;
    Solution out;
    for (const auto& use : sol.patterns) {
      for (Count k = 0; k < use.multiplicity; ++k) {
        Pattern p;
        for (const auto& [w, c] : use.pattern.entries()) {
          for (Count u = 0; u < c; ++u) {
            for (const auto& [iw, ic] : take(w).entries()) p.add(iw, ic);
          }
        }
        out.add(std::move(p));
      }
    }
    return out.canonical();
  }

  std::vector<std::pair<Weight, Pattern>> drain() {
    std::vector<std::pair<Weight, Pattern>> out;
    for (auto& [w, v] : pool_) {
      for (auto& p : v) out.emplace_back(w, std::move(p));
    }
    pool_.clear();
    return out;
  }

 private:
  std::map<Weight, std::vector<Pattern>> pool_;
};

Count ceil_bins(Weight total, Weight cap) { return (total + cap - 1) / cap; }

// Merges one mandatory pair into a composite unit. Returns false when no
// pair could be merged.
bool merge_one(Instance& cur, std::vector<Count>& demands, const Identification& ident,
               CompositePool& pool, Solution& partial) {
  const Weight cap = cur.capacity();
  for (const auto& [wa, ww] : ident.mergeable) {
    auto ia = cur.index_of(wa);
    auto iw = cur.index_of(ww);
    if (!ia || !iw) continue;
    if (demands[*ia] < 1 || demands[*iw] < (*ia == *iw ? 2 : 1)) continue;
    --demands[*ia];
    --demands[*iw];
    const Weight sum = wa + ww;
    if (sum == cap) {
      partial.add(Pattern{wa, ww});
      return true;
    }
    Pattern content = pool.take(wa);
    for (const auto& [w, c] : pool.take(ww).entries()) content.add(w, c);
    pool.push(sum, std::move(content));
    std::vector<ItemType> items;
    for (std::size_t t = 0; t < cur.type_count(); ++t) {
      if (demands[t] > 0) items.push_back({cur.weight(t), demands[t]});
    }
    items.push_back({sum, 1});
    cur = Instance::normalize(std::move(items), cap, cur.name());
    demands = cur.demands();
    return true;
  }
  return false;
}

}  // namespace

ReduceResult reduce(const Instance& inst, const AniParams& params) {
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  ReduceResult res;
  AniStats& st = res.stats;
  Instance cur = inst;
  std::vector<Count> demands = cur.demands();
  const Weight cap = cur.capacity();
  CompositePool pool;
  Solution partial;

  AdjGraph graph = AdjGraph::build(cur);
  bool fresh = true;
  double ratio_sum = 0.0;
  std::uint64_t ratio_runs = 0;

  for (;;) {
    if (params.time_limit_s > 0 && elapsed() > params.time_limit_s) {
      st.timed_out = true;
      break;
    }
    Solution pairs = fix_full_pairs(cur, demands);
    st.fixed_pairs += static_cast<std::uint64_t>(pairs.value);
    partial.append(pairs);

    Weight left = 0;
    Count units = 0;
    for (std::size_t t = 0; t < cur.type_count(); ++t) {
      left += demands[t] * cur.weight(t);
      units += demands[t];
    }
    if (ceil_bins(left, cap) <= params.beta) break;

    if (!fresh) graph = graph.pruned(demands);
    fresh = false;
    ++st.iterations;
    if (graph.arc_count() > 0) {
      ratio_sum += static_cast<double>(cap) * static_cast<double>(units) /
                   static_cast<double>(graph.arc_count());
      ++ratio_runs;
    }
    const MandatoryTable table = mandatory_dp(graph, demands);
    const Identification ident = identify_triplets(table, graph, demands);
    if (!ident.obstructions.empty()) {
      st.obstruction = true;
      break;
    }

    std::uint64_t fixed = 0;
    for (const auto& t : ident.triplets) {
      if (fix_triplet(graph, demands, t, params.mode, partial)) ++fixed;
    }
    st.fixed_triplets += fixed;
    if (fixed > 0) continue;
    if (params.merge && merge_one(cur, demands, ident, pool, partial)) {
      ++st.merges;
      graph = AdjGraph::build(cur);
      fresh = true;
      continue;
    }
    break;
  }

  res.partial = pool.expand(partial.canonical());
  res.residual = Instance::with_demands(cur, demands);
  res.composites = pool.drain();
  st.residual_size = res.residual.unit_count();
  st.residual_bins = lower_bound(res.residual);
  st.dp_ratio = ratio_runs ? ratio_sum / static_cast<double>(ratio_runs) : 0.0;
  st.wall_time_s = elapsed();
  return res;
}

AniResult ani_solve(const Instance& inst, const AniParams& params) {
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };
  AniResult out;

  const auto elig = check_eligibility(inst);
  if (!elig.eligible) {
    out.outcome = SolveOutcome::inapplicable("instance is not eligible");
    out.stats.wall_time_s = elapsed();
    return out;
  }

  ReduceResult red = reduce(inst, params);
  out.stats = red.stats;
  auto finish = [&](SolveOutcome o) {
    out.outcome = std::move(o);
    out.stats.wall_time_s = elapsed();
    return out;
  };
  if (red.stats.timed_out) return finish(SolveOutcome::unsolved("time limit reached"));

  const Count d_res = red.stats.residual_bins;
  if (d_res > params.residual_cap) {
    return finish(SolveOutcome::unsolved("residual needs more than " +
                                         std::to_string(params.residual_cap) + " bins"));
  }

  CompositePool pool;
  for (auto& [w, p] : red.composites) pool.push(w, std::move(p));
  auto assemble = [&](const Solution& residual_sol, Certificate cert) {
    Solution full = red.partial;
    full.append(pool.expand(residual_sol));
    full = full.canonical();
    const auto rep = verify_solution(inst, full);
    if (!rep.valid) throw std::logic_error("ANI solver produced an invalid packing");
    SolveOutcome o;
    o.status = SolveStatus::kOptimal;
    o.solution = std::move(full);
    o.certificate = cert;
    return o;
  };

  const ExactLimits limits{params.exact_units};
  try {
    if (red.residual.empty()) return finish(assemble(Solution{}, Certificate::kPerfectPacking));
    if (!red.stats.obstruction) {
      auto pp = find_perfect_packing(red.residual, d_res, limits);
      if (pp) return finish(assemble(*pp, Certificate::kPerfectPacking));
    }
    if (params.time_limit_s > 0 && elapsed() > params.time_limit_s) {
      out.stats.timed_out = true;
      return finish(SolveOutcome::unsolved("time limit reached"));
    }
    auto mb = exact_min_bins(red.residual, d_res + 1, limits);
    if (mb.bins && *mb.bins == d_res) {
      return finish(assemble(*mb.solution, Certificate::kPerfectPacking));
    }
    if (mb.bins && *mb.bins == d_res + 1) {
      return finish(assemble(*mb.solution, Certificate::kNoPerfectPackingReduction));
    }
  } catch (const SizeCapExceeded& e) {
    return finish(SolveOutcome::unsolved(e.what()));
  }
  return finish(SolveOutcome::unsolved("residual needs more than one extra bin"));
}

}  // namespace augpack
