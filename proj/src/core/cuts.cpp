#include <algorithm>
#include <map>
#include <numeric>

#include "switchminer/core/discovery.hpp"

namespace switchminer {

std::string_view to_string(CutOperator op) {
  switch (op) {
    case CutOperator::Xor: return "xor";
    case CutOperator::Sequence: return "sequence";
    case CutOperator::Parallel: return "concurrent";
    case CutOperator::Loop: return "loop";
  }
  return "?";
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Index view of a DFG: nodes in label order, adjacency as a bit matrix.
struct IndexedDfg {
  std::vector<ActivityLabel> nodes;
  std::map<ActivityLabel, std::size_t> index;
  std::vector<std::vector<bool>> edge;
  std::vector<bool> start, end;

  explicit IndexedDfg(const Dfg& dfg) : nodes(dfg.nodes.begin(), dfg.nodes.end()) {
    const std::size_t n = nodes.size();
    for (std::size_t i = 0; i < n; ++i) index.emplace(nodes[i], i);
    edge.assign(n, std::vector<bool>(n, false));
    start.assign(n, false);
    end.assign(n, false);
    for (const auto& [e, c] : dfg.edges) edge[index.at(e.first)][index.at(e.second)] = true;
    for (const auto& [a, c] : dfg.starts) {
      if (auto it = index.find(a); it != index.end()) start[it->second] = true;
    }
    for (const auto& [a, c] : dfg.ends) {
      if (auto it = index.find(a); it != index.end()) end[it->second] = true;
    }
  }

  std::size_t size() const { return nodes.size(); }

  std::vector<std::vector<bool>> reachability() const {
    const std::size_t n = size();
    auto reach = edge;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!reach[i][k]) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (reach[k][j]) reach[i][j] = true;
        }
      }
    }
    return reach;
  }

  // Groups of the union-find as label sets, ordered by smallest member.
  std::vector<std::set<ActivityLabel>> groups(UnionFind& uf) const {
    std::map<std::size_t, std::set<ActivityLabel>> by_root;
    for (std::size_t i = 0; i < size(); ++i) by_root[uf.find(i)].insert(nodes[i]);
    std::vector<std::set<ActivityLabel>> out;
    for (auto& [root, g] : by_root) out.push_back(std::move(g));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return *a.begin() < *b.begin(); });
    return out;
  }
};

}  // namespace

std::optional<Cut> xor_cut(const Dfg& dfg) {
  IndexedDfg g(dfg);
  UnionFind uf(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (g.edge[i][j]) uf.unite(i, j);
    }
  }
  auto parts = g.groups(uf);
  if (parts.size() < 2) return std::nullopt;
  return Cut{CutOperator::Xor, std::move(parts), {}, false};
}

std::optional<Cut> sequence_cut(const Dfg& dfg) {
  IndexedDfg g(dfg);
  const std::size_t n = g.size();
  if (n < 2) return std::nullopt;
  const auto reach = g.reachability();
  UnionFind uf(n);
  // Strongly connected components and pairwise unreachable nodes share a group.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (reach[i][j] == reach[j][i]) uf.unite(i, j);
    }
  }
  // Merging can create cycles between groups; fold those until stable.
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::size_t, std::set<std::size_t>> group_reach;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (reach[i][j] && uf.find(i) != uf.find(j)) group_reach[uf.find(i)].insert(uf.find(j));
      }
    }
    for (const auto& [a, targets] : group_reach) {
      for (auto b : targets) {
        if (group_reach.contains(b) && group_reach[b].contains(a)) changed |= uf.unite(a, b);
      }
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < n; ++i) members[uf.find(i)].push_back(i);
  if (members.size() < 2) return std::nullopt;

  // Order groups: a group precedes every group it reaches.
  std::vector<std::vector<std::size_t>> ordered;
  for (auto& [root, m] : members) ordered.push_back(std::move(m));
  auto reaches = [&](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    return reach[a.front()][b.front()];
  };
  std::sort(ordered.begin(), ordered.end(), [&](const auto& a, const auto& b) { return reaches(a, b); });
  for (std::size_t gi = 0; gi < ordered.size(); ++gi) {
    for (std::size_t gj = gi + 1; gj < ordered.size(); ++gj) {
      for (auto a : ordered[gi]) {
        for (auto b : ordered[gj]) {
          if (!reach[a][b] || reach[b][a]) return std::nullopt;
        }
      }
    }
  }
  Cut cut{CutOperator::Sequence, {}, {}, false};
  for (const auto& m : ordered) {
    std::set<ActivityLabel> part;
    for (auto i : m) part.insert(g.nodes[i]);
    cut.partitions.push_back(std::move(part));
  }
  return cut;
}

std::optional<Cut> concurrent_cut(const Dfg& dfg) {
  IndexedDfg g(dfg);
  const std::size_t n = g.size();
  if (n < 2) return std::nullopt;
  UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!(g.edge[i][j] && g.edge[j][i])) uf.unite(i, j);
    }
  }
  // Every partition needs a start and an end activity; fold deficient
  // components into the first complete one.
  std::map<std::size_t, std::pair<bool, bool>> has;
  for (std::size_t i = 0; i < n; ++i) {
    auto& [s, e] = has[uf.find(i)];
    s = s || g.start[i];
    e = e || g.end[i];
  }
  std::optional<std::size_t> anchor;
  for (const auto& [root, se] : has) {
    if (se.first && se.second) {
      anchor = root;
      break;
    }
  }
  if (!anchor) return std::nullopt;
  for (const auto& [root, se] : has) {
    if (!(se.first && se.second)) uf.unite(*anchor, root);
  }
  auto parts = g.groups(uf);
  if (parts.size() < 2) return std::nullopt;
  return Cut{CutOperator::Parallel, std::move(parts), {}, false};
}

std::optional<Cut> loop_cut(const Dfg& dfg) {
  IndexedDfg g(dfg);
  const std::size_t n = g.size();
  if (n < 2) return std::nullopt;
  std::vector<bool> body(n, false);
  bool any_start = false;
  for (std::size_t i = 0; i < n; ++i) {
    body[i] = g.start[i] || g.end[i];
    any_start = any_start || g.start[i];
  }
  if (!any_start) return std::nullopt;

  UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!body[i] && !body[j] && g.edge[i][j]) uf.unite(i, j);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> components;
  for (std::size_t i = 0; i < n; ++i) {
    if (!body[i]) components[uf.find(i)].push_back(i);
  }

  std::vector<std::vector<std::size_t>> redo;
  std::vector<std::size_t> merged;
  for (auto& [root, comp] : components) {
    bool ok = true;
    bool entered = false, exited = false;
    for (auto c : comp) {
      bool from_end = false, to_start = false;
      for (std::size_t b = 0; b < n; ++b) {
        if (!body[b]) continue;
        if (g.edge[b][c]) {
          if (!g.end[b]) ok = false;  // redo entered other than from an end activity
          from_end = true;
        }
        if (g.edge[c][b]) {
          if (!g.start[b]) ok = false;  // redo left other than into a start activity
          to_start = true;
        }
      }
      // An entry point must be reachable from every end activity, an exit
      // must lead to every start activity.
      for (std::size_t b = 0; b < n && ok; ++b) {
        if (from_end && g.end[b] && !g.edge[b][c]) ok = false;
        if (to_start && g.start[b] && !g.edge[c][b]) ok = false;
      }
      entered = entered || from_end;
      exited = exited || to_start;
    }
    if (ok && entered && exited) {
      redo.push_back(comp);
    } else {
      merged.insert(merged.end(), comp.begin(), comp.end());
    }
  }
  if (redo.empty()) return std::nullopt;
  Cut cut{CutOperator::Loop, {}, {}, false};
  std::set<ActivityLabel> body_part;
  for (std::size_t i = 0; i < n; ++i) {
    if (body[i]) body_part.insert(g.nodes[i]);
  }
  for (auto i : merged) body_part.insert(g.nodes[i]);
  cut.partitions.push_back(std::move(body_part));
  for (const auto& comp : redo) {
    std::set<ActivityLabel> part;
    for (auto i : comp) part.insert(g.nodes[i]);
    cut.partitions.push_back(std::move(part));
  }
  return cut;
}

Dfg apply_noise_filter(const Dfg& dfg, double threshold) {
  if (threshold <= 0.0) return dfg;
  std::map<ActivityLabel, std::uint64_t> max_out;
  for (const auto& [e, c] : dfg.edges) max_out[e.first] = std::max(max_out[e.first], c);
  Dfg out = dfg;
  std::erase_if(out.edges, [&](const auto& kv) {
    return static_cast<double>(kv.second) < threshold * static_cast<double>(max_out[kv.first.first]);
  });
  return out;
}

std::optional<Cut> switch_exclusive_choice_cut(const EventLog& log, const Dfg* dfg) {
  // Mendacious dependencies on the augmented log (artificial endpoints are
  // excluded by mendacious_dependencies itself).
  const MendaciousSet mendacious = mendacious_dependencies(add_artificial_endpoints(log));
  // On the original DFG, replace mendacious edges by invisible ones
  // and cut along the components of the visible remainder.
  const Dfg own = dfg ? Dfg{} : build_dfg(log);
  const Dfg& base = dfg ? *dfg : own;
  const InvisibleEdgeDfg annotated = annotate_invisible_edges(base, mendacious);

  Dfg visible = base;
  for (const auto& e : annotated.invisible) visible.edges.erase(e);
  auto components = xor_cut(visible);
  if (!components) return std::nullopt;

  Cut cut = std::move(*components);
  cut.from_switch_cut = true;
  std::map<ActivityLabel, std::size_t> part_of;
  for (std::size_t i = 0; i < cut.partitions.size(); ++i) {
    for (const auto& a : cut.partitions[i]) part_of.emplace(a, i);
  }
  for (const auto& e : annotated.invisible) {
    if (part_of.at(e.first) != part_of.at(e.second)) cut.switches.insert(e);
  }
  return cut;
}

}  // namespace switchminer
