#include "augpack/run.hpp"

#include <stdexcept>

namespace augpack {

SolverChoice parse_solver_choice(const std::string& s) {
  if (s == "ai") return SolverChoice::kAi;
  if (s == "ani") return SolverChoice::kAni;
  if (s == "auto") return SolverChoice::kAuto;
  if (s == "both") return SolverChoice::kBoth;
  throw std::invalid_argument("unknown solver '" + s + "'");
}

namespace {

RunRecord base_record(const Instance& inst, const char* solver, bool eligible,
                      const SolveOutcome& o) {
  RunRecord r;
  r.name = inst.name();
  r.solver = solver;
  r.eligible = eligible;
  r.status = o.status;
  if (o.solution) r.value = o.solution->value;
  r.certificate = o.certificate;
  return r;
}

Run run_ai(const Instance& inst, const AiParams& p, bool eligible) {
  AiResult res = practical_ai_solve(inst, p);
  RunRecord r = base_record(inst, "ai", eligible, res.outcome);
  r.time_s = res.stats.wall_time_s;
  r.ai = res.stats;
  return {std::move(r), std::move(res.outcome)};
}

Run run_ani(const Instance& inst, const AniParams& p, bool eligible) {
  AniResult res = ani_solve(inst, p);
  RunRecord r = base_record(inst, "ani", eligible, res.outcome);
  r.time_s = res.stats.wall_time_s;
  r.ani = res.stats;
  return {std::move(r), std::move(res.outcome)};
}

}  // namespace

std::vector<Run> run_solvers(const Instance& inst, const RunOptions& opts) {
  const bool eligible = check_eligibility(inst).eligible;
  std::vector<Run> out;
  switch (opts.solver) {
    case SolverChoice::kAi:
      out.push_back(run_ai(inst, opts.ai, eligible));
      break;
    case SolverChoice::kAni:
      out.push_back(run_ani(inst, opts.ani, eligible));
      break;
    case SolverChoice::kBoth:
      out.push_back(run_ani(inst, opts.ani, eligible));
      out.push_back(run_ai(inst, opts.ai, eligible));
      break;
    case SolverChoice::kAuto:
      out.push_back(run_ani(inst, opts.ani, eligible));
      if (out.back().outcome.status == SolveStatus::kUnsolved) {
        out.push_back(run_ai(inst, opts.ai, eligible));
      }
      break;
  }
  return out;
}

int exit_code(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal:
      return 0;
    case SolveStatus::kUnsolved:
      return 2;
    case SolveStatus::kInapplicable:
      return 3;
  }
  return 2;
}

}  // namespace augpack
