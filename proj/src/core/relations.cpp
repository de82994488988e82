#include "switchminer/core/relations.hpp"

#include <sstream>

namespace switchminer {

std::uint64_t Dfg::edge_count(const ActivityLabel& a, const ActivityLabel& b) const {
  auto it = edges.find({a, b});
  return it == edges.end() ? 0 : it->second;
}

Dfg build_dfg(const EventLog& log) {
  Dfg dfg;
  for (const auto& t : log.traces()) {
    if (t.events.empty()) continue;
    dfg.nodes.insert(t.events.begin(), t.events.end());
    ++dfg.starts[t.events.front()];
    ++dfg.ends[t.events.back()];
    for (std::size_t i = 0; i + 1 < t.events.size(); ++i) ++dfg.edges[{t.events[i], t.events[i + 1]}];
  }
  return dfg;
}

RelationTable RelationTable::derive(const Dfg& dfg, const EventLog& log) {
  RelationTable table;
  table.activities_.assign(dfg.nodes.begin(), dfg.nodes.end());
  table.n_ = table.activities_.size();
  for (std::size_t i = 0; i < table.n_; ++i) table.index_.emplace(table.activities_[i], i);
  table.gt_.assign(table.n_ * table.n_, false);
  table.loop2_.assign(table.n_ * table.n_, false);
  for (const auto& [edge, count] : dfg.edges) {
    table.gt_[table.index_.at(edge.first) * table.n_ + table.index_.at(edge.second)] = true;
  }
  // aba[a][b]: some trace contains <.., a, b, a, ..>
  std::vector<bool> aba(table.n_ * table.n_, false);
  for (const auto& t : log.traces()) {
    for (std::size_t i = 0; i + 2 < t.events.size(); ++i) {
      if (t.events[i] != t.events[i + 2]) continue;
      auto a = table.index_.find(t.events[i]);
      auto b = table.index_.find(t.events[i + 1]);
      if (a == table.index_.end() || b == table.index_.end()) continue;
      aba[a->second * table.n_ + b->second] = true;
    }
  }
  for (std::size_t a = 0; a < table.n_; ++a) {
    for (std::size_t b = 0; b < table.n_; ++b) {
      table.loop2_[a * table.n_ + b] = aba[a * table.n_ + b] && aba[b * table.n_ + a];
    }
  }
  return table;
}

std::optional<std::size_t> RelationTable::index_of(const ActivityLabel& a) const {
  auto it = index_.find(a);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool RelationTable::follows(const ActivityLabel& a, const ActivityLabel& b) const {
  auto i = index_of(a), j = index_of(b);
  return i && j && follows(*i, *j);
}

bool RelationTable::two_loop(const ActivityLabel& a, const ActivityLabel& b) const {
  auto i = index_of(a), j = index_of(b);
  return i && j && two_loop(*i, *j);
}

bool RelationTable::causal(const ActivityLabel& a, const ActivityLabel& b) const {
  return follows(a, b) && (!follows(b, a) || two_loop(a, b));
}

bool RelationTable::parallel(const ActivityLabel& a, const ActivityLabel& b) const {
  return follows(a, b) && follows(b, a) && !two_loop(a, b);
}

bool RelationTable::choice(const ActivityLabel& a, const ActivityLabel& b) const {
  return !follows(a, b) && !follows(b, a);
}

Ordering RelationTable::classify(const ActivityLabel& a, const ActivityLabel& b) const {
  const bool ab = causal(a, b);
  const bool ba = causal(b, a);
  if (ab && ba) return Ordering::MutualCausal;
  if (ab) return Ordering::Causal;
  if (ba) return Ordering::ReverseCausal;
  if (parallel(a, b)) return Ordering::Parallel;
  return Ordering::Choice;
}

RelationTable derive_relations(const Dfg& dfg, const EventLog& log) { return RelationTable::derive(dfg, log); }

std::set<LabelPair> MendaciousSet::keys() const {
  std::set<LabelPair> out;
  for (const auto& [k, w] : pairs) out.insert(k);
  return out;
}

MendaciousSet mendacious_dependencies(const RelationTable& rel) {
  MendaciousSet result;
  const auto& acts = rel.activities();
  const std::size_t n = acts.size();
  std::vector<std::size_t> xs, ys;
  for (std::size_t a = 0; a < n; ++a) {
    if (acts[a].is_artificial()) continue;
    for (std::size_t b = 0; b < n; ++b) {
      if (acts[b].is_artificial() || !rel.causal(a, b)) continue;
      // x: a -> x and x # b;  y: y -> b and a # y;  need some pair with not y > x.
      xs.clear();
      ys.clear();
      for (std::size_t x = 0; x < n; ++x) {
        if (rel.causal(a, x) && rel.choice(x, b)) xs.push_back(x);
      }
      if (xs.empty()) continue;
      for (std::size_t y = 0; y < n; ++y) {
        if (rel.causal(y, b) && rel.choice(a, y)) ys.push_back(y);
      }
      [&] {
        for (auto x : xs) {
          for (auto y : ys) {
            if (!rel.follows(y, x)) {
              result.pairs.emplace(LabelPair{acts[a], acts[b]}, MendaciousWitness{acts[x], acts[y]});
              return;
            }
          }
        }
      }();
    }
  }
  return result;
}

MendaciousSet mendacious_dependencies(const EventLog& augmented_log) {
  return mendacious_dependencies(RelationTable::derive(build_dfg(augmented_log), augmented_log));
}

InvisibleEdgeDfg annotate_invisible_edges(const Dfg& dfg, const MendaciousSet& mendacious) {
  InvisibleEdgeDfg out{dfg, {}};
  for (const auto& [pair, witness] : mendacious.pairs) {
    if (dfg.edges.contains(pair)) out.invisible.insert(pair);
  }
  return out;
}

namespace {
std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}
}  // namespace

std::string dfg_to_dot(const InvisibleEdgeDfg& graph) {
  std::ostringstream out;
  out << "digraph dfg {\n  rankdir=LR;\n  node [shape=box, style=rounded];\n";
  out << "  __start [shape=circle, label=\"\"];\n  __end [shape=doublecircle, label=\"\"];\n";
  for (const auto& n : graph.base.nodes) out << "  " << dot_quote(n.display()) << ";\n";
  for (const auto& [a, c] : graph.base.starts) {
    out << "  __start -> " << dot_quote(a.display()) << " [label=" << c << "];\n";
  }
  for (const auto& [a, c] : graph.base.ends) {
    out << "  " << dot_quote(a.display()) << " -> __end [label=" << c << "];\n";
  }
  for (const auto& [e, c] : graph.base.edges) {
    out << "  " << dot_quote(e.first.display()) << " -> " << dot_quote(e.second.display()) << " [label=" << c;
    if (graph.invisible.contains(e)) out << ", style=dashed";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace switchminer
