#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "augpack/instance.hpp"

namespace augpack {

// Contents of one bin: (weight, count) entries, strictly decreasing weight.
class Pattern {
 public:
  Pattern() = default;
  Pattern(std::initializer_list<Weight> units);

  void add(Weight w, Count count = 1);
  // Removes units of weight w; the entry disappears when its count hits 0.
  void remove(Weight w, Count count = 1);
  const std::vector<std::pair<Weight, Count>>& entries() const { return entries_; }
  Weight load() const;
  Count size() const;
  bool empty() const { return entries_.empty(); }
  bool is_full(Weight capacity) const { return load() == capacity; }

  friend bool operator==(const Pattern&, const Pattern&) = default;
  friend auto operator<=>(const Pattern&, const Pattern&) = default;

 private:
  std::vector<std::pair<Weight, Count>> entries_;
};

struct PatternUse {
  Pattern pattern;
  Count multiplicity = 1;

  friend bool operator==(const PatternUse&, const PatternUse&) = default;
};

struct Solution {
  std::vector<PatternUse> patterns;
  Count value = 0;

  void add(Pattern p, Count multiplicity = 1);
  void append(const Solution& other);
  Count bins() const;
  // Merges identical patterns and sorts; value is recomputed.
  Solution canonical() const;

  friend bool operator==(const Solution&, const Solution&) = default;
};

enum class ViolationKind {
  kCapacity,
  kDemand,
  kUnknownWeight,
  kValueMismatch,
  kBadMultiplicity,
};

struct Violation {
  ViolationKind kind;
  std::string detail;
};

struct VerificationReport {
  bool valid = true;
  bool all_full = true;
  Count bins = 0;
  std::vector<Violation> violations;
};

// Checks demand-exactness, capacity and value consistency. Never throws on
// bad solutions; every problem lands in `violations`.
VerificationReport verify_solution(const Instance& inst, const Solution& sol);

std::string to_string(ViolationKind kind);

enum class SolveStatus { kOptimal, kUnsolved, kInapplicable };
enum class Certificate { kPerfectPacking, kNoPerfectPackingReduction };

std::string to_string(SolveStatus s);
std::string to_string(Certificate c);

struct SolveOutcome {
  SolveStatus status = SolveStatus::kUnsolved;
  std::optional<Solution> solution;
  std::optional<Certificate> certificate;
  std::string note;

  static SolveOutcome inapplicable(std::string why) {
    return {SolveStatus::kInapplicable, std::nullopt, std::nullopt, std::move(why)};
  }
  static SolveOutcome unsolved(std::string why) {
    return {SolveStatus::kUnsolved, std::nullopt, std::nullopt, std::move(why)};
  }
};

}  // namespace augpack
