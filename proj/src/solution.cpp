#include "augpack/solution.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace augpack {

Pattern::Pattern(std::initializer_list<Weight> units) {
  for (Weight w : units) add(w);
}

void Pattern::add(Weight w, Count count) {
  if (count == 0) return;
  auto it = std::lower_bound(entries_.begin(), entries_.end(), w,
                             [](const auto& e, Weight v) { return e.first > v; });
  if (it != entries_.end() && it->first == w) {
    it->second += count;
  } else {
    entries_.insert(it, {w, count});
  }
}

void Pattern::remove(Weight w, Count count) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), w,
                             [](const auto& e, Weight v) { return e.first > v; });
  if (it == entries_.end() || it->first != w || it->second < count) {
    throw std::logic_error("removing units not present in pattern");
  }
  it->second -= count;
  if (it->second == 0) entries_.erase(it);
}

Weight Pattern::load() const {
  Weight s = 0;
  for (const auto& [w, c] : entries_) s += w * c;
  return s;
}

Count Pattern::size() const {
  Count s = 0;
  for (const auto& e : entries_) s += e.second;
  return s;
}

void Solution::add(Pattern p, Count multiplicity) {
  patterns.push_back({std::move(p), multiplicity});
  value += multiplicity;
}

void Solution::append(const Solution& other) {
  patterns.insert(patterns.end(), other.patterns.begin(), other.patterns.end());
  value += other.value;
}

Count Solution::bins() const {
  Count s = 0;
  for (const auto& p : patterns) s += p.multiplicity;
  return s;
}

Solution Solution::canonical() const {
  std::map<Pattern, Count, std::greater<>> merged;
  for (const auto& p : patterns) merged[p.pattern] += p.multiplicity;
  Solution out;
  for (auto& [pat, m] : merged) out.add(pat, m);
  return out;
}

VerificationReport verify_solution(const Instance& inst, const Solution& sol) {
  VerificationReport rep;
  auto fail = [&](ViolationKind k, std::string msg) {
    rep.valid = false;
    rep.violations.push_back({k, std::move(msg)});
  };

  std::vector<Count> used(inst.type_count(), 0);
  Count bins = 0;
  for (std::size_t i = 0; i < sol.patterns.size(); ++i) {
    const auto& use = sol.patterns[i];
    const std::string where = "pattern " + std::to_string(i + 1);
    if (use.multiplicity < 1) {
      fail(ViolationKind::kBadMultiplicity,
           where + ": multiplicity " + std::to_string(use.multiplicity));
      continue;
    }
    bins += use.multiplicity;
    const Weight load = use.pattern.load();
    if (load > inst.capacity()) {
      fail(ViolationKind::kCapacity, where + ": load " + std::to_string(load) +
                                         " exceeds capacity " +
                                         std::to_string(inst.capacity()));
    }
    if (load != inst.capacity()) rep.all_full = false;
    for (const auto& [w, c] : use.pattern.entries()) {
      auto idx = inst.index_of(w);
      if (!idx) {
        fail(ViolationKind::kUnknownWeight,
             where + ": weight " + std::to_string(w) + " not in instance");
        continue;
      }
      used[*idx] += c * use.multiplicity;
    }
  }
  for (std::size_t t = 0; t < inst.type_count(); ++t) {
    if (used[t] != inst.demand(t)) {
      fail(ViolationKind::kDemand, "weight " + std::to_string(inst.weight(t)) +
                                       ": packed " + std::to_string(used[t]) +
                                       ", demand " + std::to_string(inst.demand(t)));
    }
  }
  if (bins != sol.value) {
    fail(ViolationKind::kValueMismatch, "declared value " + std::to_string(sol.value) +
                                            " but patterns use " + std::to_string(bins) +
                                            " bins");
  }
  rep.bins = bins;
  if (!rep.valid) rep.all_full = false;
  return rep;
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kCapacity: return "capacity";
    case ViolationKind::kDemand: return "demand";
    case ViolationKind::kUnknownWeight: return "unknown-weight";
    case ViolationKind::kValueMismatch: return "value-mismatch";
    case ViolationKind::kBadMultiplicity: return "bad-multiplicity";
  }
  return "?";
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal: return "Optimal";
    case SolveStatus::kUnsolved: return "Unsolved";
    case SolveStatus::kInapplicable: return "Inapplicable";
  }
  return "?";
}

std::string to_string(Certificate c) {
  switch (c) {
    case Certificate::kPerfectPacking: return "PerfectPacking";
    case Certificate::kNoPerfectPackingReduction: return "NoPerfectPackingReduction";
  }
  return "?";
}

}  // namespace augpack
