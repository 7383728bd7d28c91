#include "augpack/mff_graph.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace augpack {

AdjGraph AdjGraph::build(const Instance& inst) {
  AdjGraph g;
  g.capacity_ = inst.capacity();
  const Weight cap = inst.capacity();
  const std::size_t n = inst.type_count();
  g.weights_.resize(n);
  g.arcs_.resize(n);

  std::vector<char> fwd(static_cast<std::size_t>(cap) + 1, 0);
  fwd[0] = 1;
  std::vector<char> old;
  for (std::size_t i = 0; i < n; ++i) {
    const Weight w = inst.weight(i);
    g.weights_[i] = w;
    old = fwd;
    auto& adj = g.arcs_[i];
    for (Weight p = 0; p + w <= cap; ++p) {
      if (!old[p]) continue;
      for (Count m = 1; m <= inst.demand(i) && p + m * w <= cap; ++m) {
        adj.push_back({p, m});
        fwd[p + m * w] = 1;
      }
    }
  }
  g.backward();
  return g;
}

void AdjGraph::backward() {
  std::vector<char> bwd(static_cast<std::size_t>(capacity_) + 1, 0);
  bwd[capacity_] = 1;
  std::vector<Weight> marks;
  for (std::size_t i = weights_.size(); i-- > 0;) {
    const Weight w = weights_[i];
    auto& adj = arcs_[i];
    marks.clear();
    std::size_t kept = 0;
    for (const Arc& a : adj) {
      if (!bwd[a.p + a.m * w]) continue;
      adj[kept++] = a;
      marks.push_back(a.p);
    }
    adj.resize(kept);
    for (Weight p : marks) bwd[p] = 1;
  }
}

AdjGraph AdjGraph::pruned(std::span<const Count> demands) const {
  if (demands.size() != weights_.size()) {
    throw std::invalid_argument("demand vector does not match graph types");
  }
  AdjGraph g;
  g.capacity_ = capacity_;
  g.weights_ = weights_;
  g.arcs_.resize(weights_.size());

  std::vector<char> fwd(static_cast<std::size_t>(capacity_) + 1, 0);
  fwd[0] = 1;
  std::vector<Weight> marks;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (demands[i] == 0) continue;
    const Weight w = weights_[i];
    marks.clear();
    for (const Arc& a : arcs_[i]) {
      if (a.m > demands[i] || !fwd[a.p]) continue;
      g.arcs_[i].push_back(a);
      marks.push_back(a.p + a.m * w);
    }
    for (Weight q : marks) fwd[q] = 1;
  }
  g.backward();
  return g;
}

std::size_t AdjGraph::arc_count() const {
  std::size_t total = 0;
  for (const auto& a : arcs_) total += a.size();
  return total;
}

std::map<Weight, std::vector<Arc>> AdjGraph::by_weight() const {
  std::map<Weight, std::vector<Arc>> out;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!arcs_[i].empty()) out.emplace(weights_[i], arcs_[i]);
  }
  return out;
}

std::string AdjGraph::dump() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    for (const Arc& a : arcs_[i]) os << weights_[i] << ' ' << a.p << ' ' << a.m << '\n';
  }
  return os.str();
}

namespace {

Count available(const AdjGraph& g, std::span<const Count> demands, std::size_t i,
                const std::map<Weight, Count>& exclusions) {
  auto it = exclusions.find(g.weight(i));
  const Count ex = it == exclusions.end() ? 0 : it->second;
  return std::max<Count>(0, demands[i] - ex);
}

}  // namespace

bool reach_excluding(const AdjGraph& graph, std::span<const Count> demands, Weight target,
                     const std::map<Weight, Count>& exclusions) {
  if (target < 0 || target > graph.capacity()) {
    throw std::invalid_argument("target outside [0, W]");
  }
  if (demands.size() != graph.type_count()) {
    throw std::invalid_argument("demand vector does not match graph types");
  }
  if (target == 0) return true;
  const auto size = static_cast<std::size_t>(target) + 1;
  std::vector<char> reach(size, 0);
  std::vector<Count> used(size);
  reach[0] = 1;
  for (std::size_t i = 0; i < graph.type_count(); ++i) {
    const Count avail = available(graph, demands, i, exclusions);
    const Weight w = graph.weight(i);
    if (avail == 0 || w > target) continue;
    std::fill(used.begin(), used.end(), 0);
    for (Weight q = w; q <= target; ++q) {
      if (reach[q] || !reach[q - w] || used[q - w] >= avail) continue;
      reach[q] = 1;
      used[q] = used[q - w] + 1;
    }
    if (reach[target]) return true;
  }
  return reach[target] != 0;
}

bool completes_excluding(const AdjGraph& graph, std::span<const Count> demands,
                         std::size_t type, const std::map<Weight, Count>& exclusions) {
  if (demands.size() != graph.type_count()) {
    throw std::invalid_argument("demand vector does not match graph types");
  }
  if (demands[type] == 0) return false;
  const auto size = static_cast<std::size_t>(graph.capacity()) + 1;
  // without[p]: p reachable before `type`; with[p]: reachable with it.
  std::vector<char> without(size, 0), with(size, 0);
  without[0] = 1;
  std::vector<Weight> marks;
  for (std::size_t i = 0; i < graph.type_count(); ++i) {
    const Weight w = graph.weight(i);
    if (i == type) {
      const Count most = available(graph, demands, i, exclusions) + 1;
      for (const Arc& a : graph.arcs(i)) {
        if (a.m <= most && without[a.p]) with[a.p + a.m * w] = 1;
      }
      continue;
    }
    const Count avail = available(graph, demands, i, exclusions);
    if (avail == 0) continue;
    auto& layer = i < type ? without : with;
    marks.clear();
    for (const Arc& a : graph.arcs(i)) {
      if (a.m <= avail && layer[a.p]) marks.push_back(a.p + a.m * w);
    }
    for (Weight q : marks) layer[q] = 1;
  }
  return with[graph.capacity()] != 0;
}

}  // namespace augpack
