// augpack: solve, benchmark, generate and verify AI/ANI bin packing instances.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <regex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "augpack/exact.hpp"
#include "augpack/generator.hpp"
#include "augpack/io.hpp"
#include "augpack/run.hpp"

namespace fs = std::filesystem;
using namespace augpack;

namespace {

constexpr int kIoError = 1;
constexpr int kInvalidSolution = 4;

struct SolverFlags {
  std::string solver = "auto";
  int alpha = 15;
  int beta = 3;
  bool fast = false;
  bool merge = false;
  Count residual_cap = 5;
  double time_limit = 0.0;
  std::uint64_t seed = 1;

  void attach(CLI::App* app) {
    app->add_option("--solver", solver, "ai, ani, auto or both")
        ->check(CLI::IsMember({"ai", "ani", "auto", "both"}));
    app->add_option("--alpha", alpha, "original instance has alpha+1 items in AI form");
    app->add_option("--beta", beta, "bins of the original instance");
    app->add_flag("--fast", fast, "fix identified triplets without the completion check");
    app->add_flag("--merge", merge, "merge mandatory pairs when no triplet can be fixed");
    app->add_option("--residual-cap", residual_cap, "largest residual bin count finished exactly");
    app->add_option("--time-limit", time_limit, "seconds per solver run (0 = none)");
    app->add_option("--seed", seed, "accepted for reproducible runs; solvers are deterministic");
  }

  RunOptions options() const {
    RunOptions o;
    o.solver = parse_solver_choice(solver);
    o.ai.alpha = alpha;
    o.ai.beta = beta;
    o.ai.time_limit_s = time_limit;
    o.ani.alpha = alpha;
    o.ani.beta = beta;
    o.ani.mode = fast ? FixMode::kFast : FixMode::kChecked;
    o.ani.merge = merge;
    o.ani.residual_cap = residual_cap;
    o.ani.time_limit_s = time_limit;
    return o;
  }
};

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

SolveStatus best_status(const std::vector<Run>& runs) {
  SolveStatus s = SolveStatus::kInapplicable;
  for (const auto& r : runs) {
    if (r.outcome.status == SolveStatus::kOptimal) return SolveStatus::kOptimal;
    if (r.outcome.status == SolveStatus::kUnsolved) s = SolveStatus::kUnsolved;
  }
  return s;
}

int cmd_solve(const std::string& path, const SolverFlags& flags, const std::string& stats_out,
              const std::string& solution_out, bool solution_json) {
  ParsedInstance parsed = read_instance_file(path);
  for (const auto& n : parsed.notes) std::cerr << "note: " << n << '\n';
  const auto runs = run_solvers(parsed.instance, flags.options());
  for (const auto& r : runs) {
    std::cout << "[" << r.record.solver << "]\n"
              << "status: " << to_string(r.outcome.status) << '\n';
    if (r.outcome.solution) std::cout << "value: " << r.outcome.solution->value << '\n';
    if (r.outcome.certificate) std::cout << "certificate: " << to_string(*r.outcome.certificate) << '\n';
    if (!r.outcome.note.empty()) std::cout << "note: " << r.outcome.note << '\n';
    std::cout << "time: " << r.record.time_s << " s\n";
  }
  if (!stats_out.empty()) {
    std::vector<RunRecord> recs;
    for (const auto& r : runs) recs.push_back(r.record);
    write_file(stats_out, recs.size() == 1 ? record_json(recs.front()) : batch_json(recs));
  }
  if (!solution_out.empty()) {
    for (const auto& r : runs) {
      if (!r.outcome.solution) continue;
      write_file(solution_out, solution_json ? write_solution_json(*r.outcome.solution)
                                             : write_solution_text(*r.outcome.solution));
      break;
    }
  }
  return exit_code(best_status(runs));
}

int cmd_batch(const std::string& dir, const SolverFlags& flags, const std::string& class_regex,
              int jobs, const std::string& csv_out, const std::string& json_out) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  const std::regex group_re(class_regex);
  const RunOptions opts = flags.options();

  std::vector<std::vector<RunRecord>> slots(files.size());
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      const std::string fname = files[i].filename().string();
      try {
        ParsedInstance parsed = read_instance_file(files[i]);
        std::smatch m;
        std::string group = "all";
        if (std::regex_search(fname, m, group_re) && m.size() > 1) group = m[1].str();
        for (auto& r : run_solvers(parsed.instance, opts)) {
          r.record.name = fname;
          r.record.group = group;
          slots[i].push_back(std::move(r.record));
        }
      } catch (const std::exception& e) {
        std::lock_guard lock(err_mu);
        std::cerr << "warning: skipped " << fname << ": " << e.what() << '\n';
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < std::max(1, jobs); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::vector<RunRecord> rows;
  for (auto& s : slots) {
    for (auto& r : s) rows.push_back(std::move(r));
  }
  const std::string csv = batch_csv(rows);
  if (csv_out.empty()) {
    std::cout << csv;
  } else {
    write_file(csv_out, csv);
  }
  if (!json_out.empty()) write_file(json_out, batch_json(rows));
  return 0;
}

int cmd_generate(const std::string& cls, Count h, std::uint64_t seed, Weight floor,
                 bool no_large, const std::string& original, const std::string& out,
                 const std::string& log_out) {
  Instance orig = original.empty() ? reference_original() : read_instance_file(original).instance;
  GenParams p;
  p.h = h;
  p.seed = seed;
  p.small_floor = floor;
  p.enforce_large = !no_large;
  GeneratedInstance ani = generate_ani(orig, p);
  std::vector<std::string> log = ani.log;
  Instance result = ani.instance;
  if (cls == "ai") {
    DerivedAi ai = derive_ai(ani, orig, p);
    log.push_back("split " + std::to_string(ai.split.original) + " -> " +
                  std::to_string(ai.split.first) + " + " + std::to_string(ai.split.second));
    result = ai.instance;
  }
  const std::string text = write_instance(result);
  if (out.empty()) {
    std::cout << text;
  } else {
    write_file(out, text);
  }
  std::string log_text;
  for (const auto& l : log) log_text += l + '\n';
  if (!log_out.empty()) {
    write_file(log_out, log_text);
  } else {
    std::cerr << log_text;
  }
  return 0;
}

int cmd_verify(const std::string& inst_path, const std::string& sol_path) {
  Instance inst = read_instance_file(inst_path).instance;
  Solution sol = parse_solution(read_file(sol_path));
  const auto rep = verify_solution(inst, sol);
  std::cout << "valid: " << (rep.valid ? "yes" : "no") << '\n'
            << "all full: " << (rep.all_full ? "yes" : "no") << '\n'
            << "bins: " << rep.bins << '\n'
            << "lower bound: " << lower_bound(inst) << '\n';
  for (const auto& v : rep.violations) {
    std::cout << "violation " << to_string(v.kind) << ": " << v.detail << '\n';
  }
  return rep.valid ? 0 : kInvalidSolution;
}

int cmd_eligibility(const std::vector<std::string>& paths) {
  int rc = 0;
  for (const auto& p : paths) {
    try {
      Instance inst = read_instance_file(p).instance;
      const auto r = check_eligibility(inst);
      std::cout << p << ": divisible=" << (r.divisible ? 1 : 0)
                << " D=" << (r.bins ? std::to_string(*r.bins) : "-")
                << " large=" << r.large_count << " large_distinct=" << r.large_distinct
                << " eligible=" << (r.eligible ? 1 : 0) << '\n';
    } catch (const std::exception& e) {
      std::cerr << p << ": " << e.what() << '\n';
      rc = kIoError;
    }
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver and tooling for AI/ANI bin packing instances"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "solve one instance file");
  std::string solve_path, stats_out, solution_out;
  bool solution_json = false;
  SolverFlags solve_flags;
  solve->add_option("instance", solve_path)->required();
  solve_flags.attach(solve);
  solve->add_option("--stats-out", stats_out, "write run statistics as JSON");
  solve->add_option("--solution-out", solution_out, "write the packing");
  solve->add_flag("--json-solution", solution_json, "write the packing as JSON");

  auto* batch = app.add_subcommand("batch", "solve every instance file in a directory");
  std::string batch_dir, class_regex = "^([^_.]+)", csv_out, json_out;
  int jobs = 1;
  SolverFlags batch_flags;
  batch->add_option("dir", batch_dir)->required()->check(CLI::ExistingDirectory);
  batch_flags.attach(batch);
  batch->add_option("--class-regex", class_regex, "first capture group names the class");
  batch->add_option("--jobs,-j", jobs, "instances solved concurrently");
  batch->add_option("--csv", csv_out, "CSV output path (default stdout)");
  batch->add_option("--json", json_out, "JSON output path");

  auto* gen = app.add_subcommand("generate", "generate an ANI or AI instance");
  std::string gen_class = "ani", gen_original, gen_out, gen_log;
  Count gen_h = 0;
  std::uint64_t gen_seed = 1;
  Weight gen_floor = 0;
  bool gen_no_large = false;
  gen->add_option("--class", gen_class)->check(CLI::IsMember({"ani", "ai"}));
  gen->add_option("--triplets,-t", gen_h, "number of appended triplets h")->required();
  gen->add_option("--seed", gen_seed);
  gen->add_option("--floor", gen_floor, "smallest c weight (0 = W/10)");
  gen->add_flag("--no-large", gen_no_large, "allow a weights below W/2");
  gen->add_option("--original", gen_original, "original instance file (default: built-in)");
  gen->add_option("--out,-o", gen_out, "instance output path (default stdout)");
  gen->add_option("--log", gen_log, "construction log path (default stderr)");

  auto* verify = app.add_subcommand("verify", "check a solution against an instance");
  std::string ver_inst, ver_sol;
  verify->add_option("instance", ver_inst)->required();
  verify->add_option("solution", ver_sol)->required();

  auto* elig = app.add_subcommand("eligibility", "report the eligibility gate per file");
  std::vector<std::string> elig_paths;
  elig->add_option("files", elig_paths)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return cmd_solve(solve_path, solve_flags, stats_out, solution_out, solution_json);
    if (*batch) return cmd_batch(batch_dir, batch_flags, class_regex, jobs, csv_out, json_out);
    if (*gen) {
      return cmd_generate(gen_class, gen_h, gen_seed, gen_floor, gen_no_large, gen_original,
                          gen_out, gen_log);
    }
    if (*verify) return cmd_verify(ver_inst, ver_sol);
    if (*elig) return cmd_eligibility(elig_paths);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const GenerationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  }
  return 0;
}
