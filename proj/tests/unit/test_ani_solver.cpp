#include <random>

#include "augpack/ani_solver.hpp"
#include "augpack/exact.hpp"
#include "augpack/generator.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace augpack;

namespace {

Instance small_example() { return Instance::normalize({{7, 1}, {5, 1}, {3, 1}, {2, 1}}, 10); }

bool same(const MandatorySet& got, const oracle::RefSet& want) {
  if (!want) return got.is_bottom();
  if (got.is_bottom()) return false;
  return std::vector<Weight>(got.weights().begin(), got.weights().end()) ==
         std::vector<Weight>(want->begin(), want->end());
}

Instance random_small(std::mt19937_64& rng, Weight cap_hi, int max_units) {
  const Weight cap = std::uniform_int_distribution<Weight>(6, cap_hi)(rng);
  std::vector<ItemType> raw;
  const int units = std::uniform_int_distribution<int>(2, max_units)(rng);
  for (int u = 0; u < units; ++u) {
    raw.push_back({std::uniform_int_distribution<Weight>(1, cap - 1)(rng), 1});
  }
  return Instance::normalize(raw, cap);
}

}  // namespace

TEST_CASE("mandatory set algebra") {
  const auto bot = MandatorySet::bottom();
  const auto a = MandatorySet::of({3, 5});
  const auto b = MandatorySet::of({5, 7});
  CHECK(bot.meet(bot).is_bottom());
  CHECK(bot.meet(a) == a);
  CHECK(a.meet(bot) == a);
  CHECK(a.meet(b) == MandatorySet::of({5}));
  CHECK(bot.with(4).is_bottom());
  CHECK(a.with(4) == MandatorySet::of({3, 4, 5}));
  CHECK(MandatorySet::of({}).with(2).contains(2));
}

TEST_CASE("mandatory_dp: W=10 example") {
  const Instance inst = small_example();
  const AdjGraph g = AdjGraph::build(inst);
  const auto dp = mandatory_dp(g, inst.demands());
  CHECK(dp[7] == MandatorySet::of({3}));
  CHECK(dp[5] == MandatorySet::of({2, 3}));
  CHECK(dp[8] == MandatorySet::of({2}));
  CHECK(dp[0] == MandatorySet::of({3}));
  CHECK(dp[10] == MandatorySet::of({}));
  CHECK(dp[1].is_bottom());
}

TEST_CASE("mandatory_dp: trivial graphs") {
  const Instance none = Instance::normalize({{4, 1}, {3, 1}}, 10);
  const auto dp = mandatory_dp(AdjGraph::build(none), none.demands());
  CHECK(dp[10] == MandatorySet::of({}));
  for (Weight p = 0; p < 10; ++p) CHECK(dp[p].is_bottom());

  const Instance pair = Instance::normalize({{6, 1}, {4, 1}}, 10);
  const auto dq = mandatory_dp(AdjGraph::build(pair), pair.demands());
  CHECK(dq[6] == MandatorySet::of({4}));
}

TEST_CASE("mandatory_dp equals the unit-level table") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 200; ++it) {
    const Instance inst = random_small(rng, 200, 14);
    const auto dp = mandatory_dp(AdjGraph::build(inst), inst.demands());
    const auto ref = oracle::unit_dp(inst);
    for (Weight p = 0; p <= inst.capacity(); ++p) {
      const auto row = oracle::unit_row_for(inst, p);
      if (p == inst.capacity()) {
        CHECK(dp[p] == MandatorySet::of({}));
      } else if (!row) {
        CHECK(dp[p].is_bottom());
      } else {
        CHECK(same(dp[p], ref[*row][static_cast<std::size_t>(p)]));
      }
    }
    for (std::size_t a = 0; a < inst.type_count(); ++a) {
      if (2 * inst.weight(a) <= inst.capacity()) continue;
      CHECK(same(dp[inst.weight(a)], ref[0][static_cast<std::size_t>(inst.weight(a))]));
    }
  }
}

TEST_CASE("fix_full_pairs examples") {
  const Instance a = Instance::normalize({{7, 2}, {3, 3}}, 10);
  auto d = a.demands();
  auto fixed = fix_full_pairs(a, d);
  CHECK(fixed.value == 2);
  CHECK(d == std::vector<Count>{0, 1});

  const Instance b = Instance::normalize({{5, 5}}, 10);
  auto e = b.demands();
  CHECK(fix_full_pairs(b, e).value == 2);
  CHECK(e == std::vector<Count>{1});

  const Instance c = Instance::normalize({{6, 1}, {3, 2}}, 10);
  auto f = c.demands();
  CHECK(fix_full_pairs(c, f).value == 0);
  CHECK(f == c.demands());
}

TEST_CASE("identify_triplets: W=10 example") {
  const Instance inst = small_example();
  const AdjGraph g = AdjGraph::build(inst);
  const auto dp = mandatory_dp(g, inst.demands());
  const auto id = identify_triplets(dp, g, inst.demands());
  REQUIRE(id.triplets.size() == 1);
  CHECK(id.triplets[0] == TripletCandidate{5, 3, 2});
  CHECK(std::find(id.mergeable.begin(), id.mergeable.end(), std::pair<Weight, Weight>{7, 3}) !=
        id.mergeable.end());
  CHECK(id.obstructions.empty());

  const Instance lone = Instance::normalize({{8, 1}, {1, 1}}, 10);
  const AdjGraph gl = AdjGraph::build(lone);
  const auto il = identify_triplets(mandatory_dp(gl, lone.demands()), gl, lone.demands());
  CHECK(il.obstructions == std::vector<Weight>{8});
}

TEST_CASE("fix_triplet modes") {
  const Instance inst = small_example();
  const AdjGraph g = AdjGraph::build(inst);
  auto d = inst.demands();
  Solution partial;
  CHECK_FALSE(reach_excluding(g, d, 5, {{5, 1}, {3, 1}, {2, 1}}));
  CHECK(fix_triplet(g, d, {5, 3, 2}, FixMode::kChecked, partial));
  CHECK(d == std::vector<Count>{1, 0, 0, 0});
  CHECK(partial.value == 1);

  auto d2 = inst.demands();
  Solution p2;
  CHECK(fix_triplet(g, d2, {5, 3, 2}, FixMode::kFast, p2));

  // a = 6 also completes as 6 + 3 + 3 without the triplet's units.
  const Instance alt = Instance::normalize({{6, 1}, {4, 1}, {3, 2}, {2, 1}}, 12);
  const AdjGraph ga = AdjGraph::build(alt);
  auto da = alt.demands();
  Solution pa;
  CHECK_FALSE(fix_triplet(ga, da, {6, 4, 2}, FixMode::kChecked, pa));
  CHECK(da == alt.demands());
  CHECK(fix_triplet(ga, da, {6, 4, 2}, FixMode::kFast, pa));

  auto dz = inst.demands();
  dz[2] = 0;
  Solution pz;
  CHECK_FALSE(fix_triplet(g, dz, {5, 3, 2}, FixMode::kFast, pz));
}

TEST_CASE("mandatory weights admit a co-packed perfect packing") {
  std::mt19937_64 rng(23);
  int checked = 0;
  for (int it = 0; it < 3000 && checked < 60; ++it) {
    const Instance inst = random_small(rng, 30, 10);
    if (inst.total_weight() % inst.capacity() != 0) continue;
    const Count k = inst.total_weight() / inst.capacity();
    if (!find_perfect_packing(inst, k)) continue;
    const AdjGraph g = AdjGraph::build(inst);
    const auto dp = mandatory_dp(g, inst.demands());
    for (std::size_t a = 0; a < inst.type_count(); ++a) {
      const Weight wa = inst.weight(a);
      // At 2 w_a = W a pairs with itself; full pairs are fixed before the DP runs.
      if (2 * wa <= inst.capacity() || dp[wa].is_bottom()) continue;
      for (Weight wb : dp[wa].weights()) {
        auto b = inst.index_of(wb);
        if (!b || (*b == a && inst.demand(a) < 2)) continue;
        // Pack a and b together, then the rest perfectly.
        auto d = inst.demands();
        --d[a];
        --d[*b];
        const Weight room = inst.capacity() - wa - wb;
        bool ok = false;
        if (room == 0) {
          ok = k == 1 || find_perfect_packing(Instance::with_demands(inst, d), k - 1).has_value();
        } else {
          // Guess the rest of the bin with a dummy item of the leftover room.
          const Instance rest = Instance::with_demands(inst, d);
          std::vector<ItemType> items(rest.items().begin(), rest.items().end());
          items.push_back({inst.capacity() - room, 1});
          const Instance glued = Instance::normalize(items, inst.capacity());
          ok = find_perfect_packing(glued, k).has_value();
        }
        CHECK(ok);
        ++checked;
      }
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("reduction keeps the optimum on small instances") {
  std::mt19937_64 rng(31);
  int reduced = 0;
  for (int it = 0; it < 1500; ++it) {
    const Instance inst = random_small(rng, 40, 14);
    if (inst.total_weight() % inst.capacity() != 0) continue;
    AniParams p;
    p.beta = 0;
    const ReduceResult red = reduce(inst, p);
    const Count fixed = red.partial.value;
    if (fixed == 0) continue;
    ++reduced;
    const Count whole = *exact_min_bins(inst, 100).bins;
    const Count rest = *exact_min_bins(red.residual, 100).bins;
    CHECK(whole == fixed + rest);
    for (const auto& use : red.partial.patterns) CHECK(use.pattern.is_full(inst.capacity()));
  }
  CHECK(reduced > 20);
}

TEST_CASE("ani_solve on generated instances") {
  const Instance orig = reference_original();
  for (Count h = 0; h <= 3; ++h) {
    GenParams gp;
    gp.h = h;
    gp.seed = 40 + static_cast<std::uint64_t>(h);
    const auto gen = generate_ani(orig, gp);
    const auto res = ani_solve(gen.instance);
    REQUIRE(res.outcome.status == SolveStatus::kOptimal);
    CHECK(res.outcome.certificate == Certificate::kNoPerfectPackingReduction);
    CHECK(res.outcome.solution->value == 3 + h + 1);
    CHECK(res.stats.residual_size == 15);
    CHECK(res.stats.fixed_triplets == static_cast<std::uint64_t>(h));
    CHECK(verify_solution(gen.instance, *res.outcome.solution).valid);
  }
}

TEST_CASE("ani_solve gates and small cases") {
  const Instance odd = Instance::normalize({{6, 1}, {5, 1}}, 10);
  CHECK(ani_solve(odd).outcome.status == SolveStatus::kInapplicable);

  const Instance tiny = Instance::normalize({{7, 1}, {3, 1}}, 10);
  auto r = ani_solve(tiny);
  REQUIRE(r.outcome.status == SolveStatus::kOptimal);
  CHECK(r.outcome.solution->value == 1);
  CHECK(r.stats.iterations == 0);

  AniParams fast;
  fast.mode = FixMode::kFast;
  GenParams gp;
  gp.h = 2;
  const auto gen = generate_ani(reference_original(), gp);
  auto f = ani_solve(gen.instance, fast);
  REQUIRE(f.outcome.status == SolveStatus::kOptimal);
  CHECK(f.outcome.solution->value == 6);
}

TEST_CASE("merge mode stays sound") {
  std::mt19937_64 rng(37);
  AniParams p;
  p.merge = true;
  int optimal = 0;
  for (int it = 0; it < 400; ++it) {
    const Instance inst = random_small(rng, 40, 14);
    const auto r = ani_solve(inst, p);
    if (r.outcome.status != SolveStatus::kOptimal) continue;
    ++optimal;
    CHECK(verify_solution(inst, *r.outcome.solution).valid);
    CHECK(r.outcome.solution->value == *exact_min_bins(inst, 100).bins);
  }
  CHECK(optimal > 0);
}
