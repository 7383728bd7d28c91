#include "augpack/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace augpack {
namespace {

using nlohmann::json;

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::int64_t to_int(std::string_view tok, int line, const char* what) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec == std::errc::result_out_of_range) {
    throw ParseError(std::string(what) + " out of range", line);
  }
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("malformed " + std::string(what) + " '" + std::string(tok) + "'", line);
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

struct Line {
  int number;
  std::string_view text;
};

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view l = trim(text.substr(pos, end - pos));
    if (!l.empty()) out.push_back({number, l});
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ParsedInstance parse_instance(std::string_view text, std::string name) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw ParseError("empty instance text", 0);
  auto header = [&](std::size_t k, const char* what) {
    if (k >= lines.size()) throw ParseError(std::string("missing ") + what, 0);
    auto toks = split_ws(lines[k].text);
    if (toks.size() != 1) throw ParseError(std::string("expected a single ") + what, lines[k].number);
    return to_int(toks[0], lines[k].number, what);
  };
  const std::int64_t n = header(0, "item count");
  if (n < 0) throw ParseError("negative item count", lines[0].number);
  const std::int64_t cap = header(1, "capacity");
  if (cap <= 0) throw ParseError("capacity must be positive", lines[1].number);

  ParsedInstance out;
  std::vector<ItemType> raw;
  raw.reserve(static_cast<std::size_t>(n));
  std::size_t shape = 0;
  for (std::int64_t k = 0; k < n; ++k) {
    const std::size_t idx = static_cast<std::size_t>(k) + 2;
    if (idx >= lines.size()) {
      throw ParseError("expected " + std::to_string(n) + " item lines, found " +
                           std::to_string(k),
                       0);
    }
    const Line& l = lines[idx];
    auto toks = split_ws(l.text);
    if (toks.size() != 1 && toks.size() != 2) throw ParseError("expected 'w' or 'w d'", l.number);
    if (shape == 0) shape = toks.size();
    if (toks.size() != shape) throw ParseError("mixed item line shapes", l.number);
    const Weight w = to_int(toks[0], l.number, "weight");
    const Count d = toks.size() == 2 ? to_int(toks[1], l.number, "demand") : 1;
    if (w <= 0) throw ParseError("weight must be positive", l.number);
    if (w > cap) throw ParseError("weight exceeds capacity", l.number);
    if (d <= 0) throw ParseError("demand must be positive", l.number);
    raw.push_back({w, d});
  }
  const std::size_t used = static_cast<std::size_t>(n) + 2;
  if (lines.size() > used) {
    out.notes.push_back("ignored " + std::to_string(lines.size() - used) +
                        " trailing line(s) from line " + std::to_string(lines[used].number));
  }
  out.cutting_stock = shape == 2;
  try {
    out.instance = Instance::normalize(std::move(raw), cap, std::move(name));
  } catch (const std::overflow_error& e) {
    throw ParseError(e.what(), 0);
  }
  return out;
}

ParsedInstance read_instance_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str(), path.stem().string());
}

std::string write_instance(const Instance& inst) {
  bool csp = false;
  for (const auto& it : inst.items()) csp = csp || it.demand != 1;
  std::ostringstream os;
  os << inst.type_count() << '\n' << inst.capacity() << '\n';
  for (const auto& it : inst.items()) {
    os << it.weight;
    if (csp) os << ' ' << it.demand;
    os << '\n';
  }
  return os.str();
}

std::string write_solution_text(const Solution& sol) {
  std::ostringstream os;
  os << "value: " << sol.value << '\n';
  for (const auto& use : sol.patterns) {
    if (use.multiplicity != 1) os << use.multiplicity << ": ";
    bool first = true;
    for (const auto& [w, c] : use.pattern.entries()) {
      if (!first) os << ", ";
      first = false;
      os << c << " x " << w;
    }
    os << '\n';
  }
  return os.str();
}

std::string write_solution_json(const Solution& sol) {
  json j;
  j["schema"] = 1;
  j["value"] = sol.value;
  j["patterns"] = json::array();
  for (const auto& use : sol.patterns) {
    json p;
    p["multiplicity"] = use.multiplicity;
    p["items"] = json::array();
    for (const auto& [w, c] : use.pattern.entries()) p["items"].push_back({{"weight", w}, {"count", c}});
    j["patterns"].push_back(std::move(p));
  }
  return j.dump(2) + "\n";
}

Solution parse_solution(std::string_view text) {
  Solution sol;
  const auto lines = content_lines(text);
  if (!lines.empty() && lines.front().text.front() == '{') {
    json j;
    try {
      j = json::parse(text);
      for (const auto& p : j.at("patterns")) {
        Pattern pat;
        for (const auto& it : p.at("items")) {
          const Count c = it.at("count").get<Count>();
          if (c <= 0) throw ParseError("item count must be positive", 0);
          pat.add(it.at("weight").get<Weight>(), c);
        }
        sol.patterns.push_back({std::move(pat), p.value("multiplicity", Count{1})});
      }
      Count bins = 0;
      for (const auto& u : sol.patterns) bins += u.multiplicity;
      sol.value = j.value("value", bins);
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad solution JSON: ") + e.what(), 0);
    }
    return sol;
  }

  std::optional<Count> value;
  Count bins = 0;
  for (const Line& l : lines) {
    std::string_view s = l.text;
    if (s.front() == '#') continue;
    if (s.starts_with("value:")) {
      auto toks = split_ws(s.substr(6));
      if (toks.size() != 1) throw ParseError("expected 'value: N'", l.number);
      value = to_int(toks[0], l.number, "value");
      continue;
    }
    Count mult = 1;
    if (auto colon = s.find(':'); colon != std::string_view::npos) {
      mult = to_int(trim(s.substr(0, colon)), l.number, "multiplicity");
      s = trim(s.substr(colon + 1));
    }
    Pattern pat;
    std::size_t pos = 0;
    while (pos <= s.size()) {
      std::size_t end = s.find(',', pos);
      if (end == std::string_view::npos) end = s.size();
      auto toks = split_ws(s.substr(pos, end - pos));
      if (toks.size() == 3 && (toks[1] == "x" || toks[1] == "X")) {
        const Count c = to_int(toks[0], l.number, "count");
        if (c <= 0) throw ParseError("item count must be positive", l.number);
        pat.add(to_int(toks[2], l.number, "weight"), c);
      } else if (toks.size() == 1) {
        pat.add(to_int(toks[0], l.number, "weight"));
      } else {
        throw ParseError("expected 'count x weight'", l.number);
      }
      if (end == s.size()) break;
      pos = end + 1;
    }
    sol.patterns.push_back({std::move(pat), mult});
    bins += mult;
  }
  sol.value = value.value_or(bins);
  return sol;
}

std::vector<Aggregate> aggregate(const std::vector<RunRecord>& rows) {
  std::vector<Aggregate> out;
  std::map<std::pair<std::string, std::string>, std::size_t> slot;
  for (const auto& r : rows) {
    auto [it, fresh] = slot.try_emplace({r.group, r.solver}, out.size());
    if (fresh) out.push_back({r.group, r.solver});
    Aggregate& a = out[it->second];
    ++a.instances;
    a.avg_time_s += r.time_s;
    if (r.status == SolveStatus::kOptimal) ++a.solved;
    if (!r.eligible) continue;
    ++a.eligible;
    if (r.ai) {
      a.avg_recursive_calls += static_cast<double>(r.ai->recursive_calls);
      a.avg_base_cases += static_cast<double>(r.ai->base_cases_reached);
      a.reach_base += r.ai->base_cases_reached > 0 ? 1.0 : 0.0;
    }
    if (r.ani) {
      a.avg_iterations += static_cast<double>(r.ani->iterations);
      a.avg_fixed_triplets += static_cast<double>(r.ani->fixed_triplets);
      a.avg_residual_size += static_cast<double>(r.ani->residual_size);
      a.avg_dp_ratio += r.ani->dp_ratio;
    }
  }
  for (auto& a : out) {
    if (a.instances > 0) a.avg_time_s /= static_cast<double>(a.instances);
    if (a.eligible > 0) {
      const double e = static_cast<double>(a.eligible);
      for (double* v : {&a.avg_recursive_calls, &a.reach_base, &a.avg_base_cases, &a.avg_iterations,
                        &a.avg_fixed_triplets, &a.avg_residual_size, &a.avg_dp_ratio}) {
        *v /= e;
      }
    }
  }
  return out;
}

std::string batch_csv(const std::vector<RunRecord>& rows) {
  std::ostringstream os;
  os << "row,group,name,solver,eligible,status,value,certificate,time_s,recursive_calls,"
        "base_cases,reach_base,iterations,fixed_triplets,residual_size,dp_ratio,instances,"
        "eligible_count,solved\n";
  for (const auto& r : rows) {
    os << "instance," << r.group << ',' << r.name << ',' << r.solver << ','
       << (r.eligible ? 1 : 0) << ',' << to_string(r.status) << ','
       << (r.value ? std::to_string(*r.value) : "") << ','
       << (r.certificate ? to_string(*r.certificate) : "") << ',' << format_double(r.time_s)
       << ',';
    if (r.ai) {
      os << r.ai->recursive_calls << ',' << r.ai->base_cases_reached << ','
         << (r.ai->base_cases_reached > 0 ? 1 : 0) << ',';
    } else {
      os << ",,,";
    }
    if (r.ani) {
      os << r.ani->iterations << ',' << r.ani->fixed_triplets << ',' << r.ani->residual_size
         << ',' << format_double(r.ani->dp_ratio) << ',';
    } else {
      os << ",,,,";
    }
    os << "1," << (r.eligible ? 1 : 0) << ',' << (r.status == SolveStatus::kOptimal ? 1 : 0)
       << '\n';
  }
  for (const auto& a : aggregate(rows)) {
    os << "aggregate," << a.group << ",," << a.solver << ",,,,," << format_double(a.avg_time_s)
       << ',' << format_double(a.avg_recursive_calls) << ',' << format_double(a.avg_base_cases)
       << ',' << format_double(a.reach_base) << ',' << format_double(a.avg_iterations) << ','
       << format_double(a.avg_fixed_triplets) << ',' << format_double(a.avg_residual_size) << ','
       << format_double(a.avg_dp_ratio) << ',' << a.instances << ',' << a.eligible << ','
       << a.solved << '\n';
  }
  return os.str();
}

namespace {

json record_to_json(const RunRecord& r) {
  json j;
  j["name"] = r.name;
  j["group"] = r.group;
  j["solver"] = r.solver;
  j["eligible"] = r.eligible;
  j["status"] = to_string(r.status);
  j["value"] = r.value ? json(*r.value) : json(nullptr);
  j["certificate"] = r.certificate ? json(to_string(*r.certificate)) : json(nullptr);
  j["time_s"] = r.time_s;
  if (r.ai) {
    j["ai"] = {{"recursive_calls", r.ai->recursive_calls},
               {"base_cases_reached", r.ai->base_cases_reached},
               {"timed_out", r.ai->timed_out}};
  }
  if (r.ani) {
    j["ani"] = {{"iterations", r.ani->iterations},
                {"fixed_triplets", r.ani->fixed_triplets},
                {"fixed_pairs", r.ani->fixed_pairs},
                {"merges", r.ani->merges},
                {"residual_size", r.ani->residual_size},
                {"residual_bins", r.ani->residual_bins},
                {"dp_ratio", r.ani->dp_ratio},
                {"obstruction", r.ani->obstruction},
                {"timed_out", r.ani->timed_out}};
  }
  return j;
}

}  // namespace

std::string record_json(const RunRecord& row) {
  json j = record_to_json(row);
  j["schema"] = 1;
  return j.dump(2) + "\n";
}

std::string batch_json(const std::vector<RunRecord>& rows) {
  json j;
  j["schema"] = 1;
  j["instances"] = json::array();
  for (const auto& r : rows) j["instances"].push_back(record_to_json(r));
  j["aggregates"] = json::array();
  for (const auto& a : aggregate(rows)) {
    j["aggregates"].push_back({{"group", a.group},
                               {"solver", a.solver},
                               {"instances", a.instances},
                               {"eligible", a.eligible},
                               {"solved", a.solved},
                               {"avg_time_s", a.avg_time_s},
                               {"avg_recursive_calls", a.avg_recursive_calls},
                               {"reach_base", a.reach_base},
                               {"avg_base_cases", a.avg_base_cases},
                               {"avg_iterations", a.avg_iterations},
                               {"avg_fixed_triplets", a.avg_fixed_triplets},
                               {"avg_residual_size", a.avg_residual_size},
                               {"avg_dp_ratio", a.avg_dp_ratio}});
  }
  return j.dump(2) + "\n";
}

}  // namespace augpack
