#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "augpack/ai_solver.hpp"
#include "augpack/ani_solver.hpp"
#include "augpack/instance.hpp"
#include "augpack/solution.hpp"

namespace augpack {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(line > 0 ? what + " at line " + std::to_string(line) : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct ParsedInstance {
  Instance instance;
  bool cutting_stock = false;  // item lines carried demands
  std::vector<std::string> notes;
};

// BPPLib text: item-type count n, capacity W, then n lines "w" or "w d".
// Blank lines are skipped; content after the n item lines is ignored and
// noted.
ParsedInstance parse_instance(std::string_view text, std::string name = {});
ParsedInstance read_instance_file(const std::filesystem::path& path);

// "w" lines when every demand is 1, else "w d" lines.
std::string write_instance(const Instance& inst);

// One pattern per line, "[m:] count x weight, count x weight".
std::string write_solution_text(const Solution& sol);
std::string write_solution_json(const Solution& sol);
// Accepts both formats (JSON when the first non-space character is '{').
// Text input may carry a "value: N" line; otherwise value = bin count.
Solution parse_solution(std::string_view text);

struct RunRecord {
  std::string name;
  std::string group;  // class label for aggregation
  std::string solver; // "ai" or "ani"
  bool eligible = false;
  SolveStatus status = SolveStatus::kUnsolved;
  std::optional<Count> value;
  std::optional<Certificate> certificate;
  double time_s = 0.0;
  std::optional<AiStats> ai;
  std::optional<AniStats> ani;
};

struct Aggregate {
  std::string group;
  std::string solver;
  Count instances = 0;
  Count eligible = 0;
  Count solved = 0;
  double avg_time_s = 0.0;  // over all instances
  // Over eligible instances:
  double avg_recursive_calls = 0.0;
  double reach_base = 0.0;  // fraction with at least one base case
  double avg_base_cases = 0.0;
  double avg_iterations = 0.0;
  double avg_fixed_triplets = 0.0;
  double avg_residual_size = 0.0;
  double avg_dp_ratio = 0.0;
};

// Groups by (group, solver) in first-appearance order.
std::vector<Aggregate> aggregate(const std::vector<RunRecord>& rows);

std::string batch_csv(const std::vector<RunRecord>& rows);
std::string batch_json(const std::vector<RunRecord>& rows);
std::string record_json(const RunRecord& row);

}  // namespace augpack
