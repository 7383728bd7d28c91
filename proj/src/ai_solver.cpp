#include "augpack/ai_solver.hpp"

#include <chrono>
#include <limits>

#include "augpack/exact.hpp"
#include "augpack/triplet_index.hpp"

namespace augpack {
namespace {

using Clock = std::chrono::steady_clock;

struct TimeUp {};

Pattern triplet_pattern(const Instance& inst, const WeightTriplet& t) {
  return Pattern{inst.weight(t.types[0]), inst.weight(t.types[1]),
                 inst.weight(t.types[2])};
}

class PracticalSearch {
 public:
  PracticalSearch(const Instance& inst, const AiParams& params, Count n_b_max)
      : inst_(inst),
        index_(inst),
        params_(params),
        removed_(inst.type_count(), 0),
        n_b_max_(n_b_max),
        start_(Clock::now()) {}

  bool run() {
    // Types outside every triplet can only belong to the original core.
    std::vector<std::size_t> idle;
    for (std::size_t t = 0; t < inst_.type_count(); ++t) {
      if (index_.tau(t) == 0) idle.push_back(t);
    }
    for (std::size_t t : idle) move_to_removed(t, index_.demand(t));
    try {
      return search(0);
    } catch (const TimeUp&) {
      stats_.timed_out = true;
      return false;
    }
  }

  const AiStats& stats() const { return stats_; }
  AiStats& stats() { return stats_; }
  const Solution& solution() const { return solution_; }

 private:
  struct Mark {
    std::size_t index;
    std::size_t removed_log;
    std::size_t fixed;
    Count n_b;
    Count r_units;
    Weight r_weight;
  };

  Mark mark() const {
    return {index_.checkpoint(), removed_log_.size(), fixed_.size(), n_b_, r_units_, r_weight_};
  }

  void rollback(const Mark& m) {
    index_.rollback(m.index);
    while (removed_log_.size() > m.removed_log) {
      const auto [t, c] = removed_log_.back();
      removed_.at(t) -= c;
      removed_log_.pop_back();
    }
    fixed_.resize(m.fixed);
    n_b_ = m.n_b;
    r_units_ = m.r_units;
    r_weight_ = m.r_weight;
  }

  void to_removed(std::size_t type, Count count) {
    removed_[type] += count;
    removed_log_.emplace_back(type, count);
    r_units_ += count;
    r_weight_ += count * inst_.weight(type);
    if (index_.large(type)) n_b_ += count;
  }

  // Units that lose their last triplet cannot be packed in one either, so
  // they follow into R.
  void absorb(std::vector<std::size_t> cascade) {
    for (std::size_t t : cascade) {
      const Count c = index_.demand(t);
      if (c == 0) continue;
      index_.remove_units(std::vector<Removal>{{t, c}});
      to_removed(t, c);
    }
  }

  void move_to_removed(std::size_t type, Count count) {
    if (count == 0) return;
    auto cascade = index_.remove_units(std::vector<Removal>{{type, count}});
    to_removed(type, count);
    absorb(std::move(cascade));
  }

  void fix(std::size_t id) {
    const auto& t = index_.triplet(id);
    std::vector<Removal> rm;
    for (int s = 0; s < 3; ++s) {
      if (s > 0 && t.types[s] == t.types[s - 1]) continue;
      rm.push_back({t.types[s], t.uses(t.types[s])});
    }
    fixed_.push_back(id);
    absorb(index_.remove_units(rm));
  }

  bool base_case() {
    ++stats_.base_cases_reached;
    const Weight target = params_.beta * inst_.capacity();
    if (r_weight_ != target || r_units_ > params_.exact_units) return false;
    Instance core = Instance::with_demands(inst_, removed_);
    auto packing = find_perfect_packing(core, params_.beta, {params_.exact_units});
    if (!packing) return false;
    solution_ = Solution{};
    for (std::size_t id : fixed_) solution_.add(triplet_pattern(inst_, index_.triplet(id)));
    solution_.append(*packing);
    solution_ = solution_.canonical();
    return true;
  }

  bool search(int splits) {
    ++stats_.recursive_calls;
    if (params_.time_limit_s > 0 &&
        std::chrono::duration<double>(Clock::now() - start_).count() > params_.time_limit_s) {
      throw TimeUp{};
    }
    if (index_.remaining_units() == 0) return base_case();
    if (index_.live_count() == 0 || n_b_ > n_b_max_ || r_units_ > params_.alpha + 1 ||
        r_weight_ > params_.beta * inst_.capacity()) {
      return false;
    }

    const auto a1 = index_.partition(1);
    if (a1.empty()) {
      if (splits == 2) return false;
      // Candidates come back heaviest first (type order).
      for (std::size_t d : index_.candidate_set(splits)) {
        const Mark m = mark();
        move_to_removed(d, 1);
        if (search(splits + 1)) return true;
        rollback(m);
      }
      return false;
    }

    // Prefer the A1 type whose triplet disturbs the fewest other triplets.
    std::size_t pick = a1.front();
    int best = std::numeric_limits<int>::max();
    for (std::size_t a : a1) {
      const int k = index_.kill_count(index_.unique_triplet(a));
      if (k < best) {
        best = k;
        pick = a;
      }
    }
    const std::size_t id = index_.unique_triplet(pick);

    const Mark m = mark();
    fix(id);
    if (search(splits)) return true;
    rollback(m);
    move_to_removed(pick, 1);
    return search(splits);
  }

  const Instance& inst_;
  TripletIndex index_;
  AiParams params_;
  std::vector<Count> removed_;
  std::vector<std::pair<std::size_t, Count>> removed_log_;
  std::vector<std::size_t> fixed_;
  Count n_b_ = 0;
  Count n_b_max_;
  Count r_units_ = 0;
  Weight r_weight_ = 0;
  AiStats stats_;
  Solution solution_;
  Clock::time_point start_;
};

// Peels I' through types that belong to exactly one live triplet.
std::optional<Solution> peel(const Instance& rest) {
  TripletIndex index(rest);
  Solution sol;
  while (index.remaining_units() > 0) {
    std::size_t best = rest.type_count();
    for (std::size_t t = 0; t < rest.type_count(); ++t) {
      if (index.demand(t) == 0) continue;
      if (best == rest.type_count() || index.tau(t) < index.tau(best)) best = t;
    }
    if (index.tau(best) != 1) return std::nullopt;
    const std::size_t id = index.unique_triplet(best);
    const auto& t = index.triplet(id);
    std::vector<Removal> rm;
    for (int s = 0; s < 3; ++s) {
      if (s > 0 && t.types[s] == t.types[s - 1]) continue;
      rm.push_back({t.types[s], t.uses(t.types[s])});
    }
    sol.add(triplet_pattern(rest, t));
    index.remove_units(rm);
  }
  return sol;
}

class CoreEnumerator {
 public:
  CoreEnumerator(const Instance& inst, const AiParams& params)
      : inst_(inst), params_(params), take_(inst.type_count(), 0) {}

  std::optional<Solution> run() {
    if (walk(0, params_.alpha + 1, params_.beta * inst_.capacity())) return found_;
    return std::nullopt;
  }

 private:
  bool walk(std::size_t type, Count units, Weight weight) {
    if (units == 0) return weight == 0 && try_core();
    if (type == inst_.type_count() || weight <= 0) return false;
    const Count most = std::min(units, inst_.demand(type));
    for (Count c = most; c >= 0; --c) {
      take_[type] = c;
      if (walk(type + 1, units - c, weight - c * inst_.weight(type))) return true;
    }
    take_[type] = 0;
    return false;
  }

  bool try_core() {
    std::vector<Count> rest(inst_.type_count());
    for (std::size_t t = 0; t < rest.size(); ++t) rest[t] = inst_.demand(t) - take_[t];
    auto peeled = peel(Instance::with_demands(inst_, rest));
    if (!peeled) return false;
    auto core = find_perfect_packing(Instance::with_demands(inst_, take_), params_.beta,
                                     {params_.alpha + 1});
    if (!core) return false;
    found_ = *peeled;
    found_.append(*core);
    found_ = found_.canonical();
    return true;
  }

  const Instance& inst_;
  const AiParams& params_;
  std::vector<Count> take_;
  Solution found_;
};

}  // namespace

AiResult practical_ai_solve(const Instance& inst, const AiParams& params) {
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };
  AiResult res;

  const auto elig = check_eligibility(inst);
  if (!elig.eligible) {
    res.outcome = SolveOutcome::inapplicable("instance is not eligible");
    res.stats.wall_time_s = elapsed();
    return res;
  }
  const Count core = params.alpha + 1;
  const Count extra = inst.unit_count() - core;
  if (extra < 0 || extra % 3 != 0) {
    res.outcome = SolveOutcome::inapplicable("unit count is not alpha + 1 + 3h");
    res.stats.wall_time_s = elapsed();
    return res;
  }
  const Count h = extra / 3;
  const Count n_b_max = elig.large_distinct - h;
  if (n_b_max < 0) {
    res.outcome = SolveOutcome::inapplicable("fewer distinct large weights than triplets");
    res.stats.wall_time_s = elapsed();
    return res;
  }

  PracticalSearch search(inst, params, n_b_max);
  const bool ok = search.run();
  res.stats = search.stats();
  res.stats.wall_time_s = elapsed();
  if (!ok) {
    res.outcome = SolveOutcome::unsolved(res.stats.timed_out ? "time limit reached"
                                                             : "search exhausted");
    return res;
  }
  const auto rep = verify_solution(inst, search.solution());
  if (!rep.valid || !rep.all_full) {
    throw std::logic_error("AI solver produced an invalid packing");
  }
  res.outcome.status = SolveStatus::kOptimal;
  res.outcome.solution = search.solution();
  res.outcome.certificate = Certificate::kPerfectPacking;
  return res;
}

SolveOutcome naive_ai_solve(const Instance& inst, const AiParams& params, Count max_units) {
  if (inst.unit_count() > max_units) {
    throw SizeCapExceeded("naive AI solver limited to " + std::to_string(max_units) + " units");
  }
  const Count extra = inst.unit_count() - (params.alpha + 1);
  if (extra < 0 || extra % 3 != 0) {
    return SolveOutcome::inapplicable("unit count is not alpha + 1 + 3h");
  }
  CoreEnumerator cores(inst, params);
  auto sol = cores.run();
  if (!sol) return SolveOutcome::unsolved("no core admits a triplet peeling");
  SolveOutcome out;
  out.status = SolveStatus::kOptimal;
  out.solution = std::move(sol);
  out.certificate = Certificate::kPerfectPacking;
  return out;
}

}  // namespace augpack
