#include <algorithm>
#include <deque>
#include <limits>
#include <unordered_map>

#include "json.hpp"

#include "switchminer/core/conformance.hpp"

namespace switchminer {

namespace {

struct VectorHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto x : v) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct SearchNode {
  std::vector<std::uint32_t> key;  // marking followed by trace position
  std::size_t dist = kNone;
  std::size_t pred = kNone;
  std::size_t via = kNone;  // transition index, kNone for a log move
  bool settled = false;
};

}  // namespace

Word to_word(const Trace& trace) {
  Word w;
  w.reserve(trace.events.size());
  for (const auto& e : trace.events) w.push_back(e.is_artificial() ? e.display() : e.text);
  return w;
}

std::optional<Alignment> align(const WorkflowNet& net, const Word& trace, std::size_t state_bound) {
  const auto& ts = net.transitions();
  const Marking goal = final_marking(net);
  std::vector<SearchNode> nodes;
  std::unordered_map<std::vector<std::uint32_t>, std::size_t, VectorHash> index;

  auto key_of = [](const Marking& m, std::size_t pos) {
    std::vector<std::uint32_t> k(m.begin(), m.end());
    k.push_back(static_cast<std::uint32_t>(pos));
    return k;
  };
  std::deque<std::size_t> queue;
  auto relax = [&](std::vector<std::uint32_t> key, std::size_t dist, std::size_t pred, std::size_t via,
                   std::size_t cost) -> bool {
    auto [it, fresh] = index.try_emplace(key, nodes.size());
    if (fresh) {
      if (nodes.size() >= state_bound) return false;
      nodes.push_back({std::move(key), kNone, kNone, kNone, false});
    }
    SearchNode& n = nodes[it->second];
    if (n.settled || dist + cost >= n.dist) return true;
    n.dist = dist + cost;
    n.pred = pred;
    n.via = via;
    if (cost == 0) {
      queue.push_front(it->second);
    } else {
      queue.push_back(it->second);
    }
    return true;
  };

  if (!relax(key_of(initial_marking(net), 0), 0, kNone, kNone, 0)) return std::nullopt;
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    if (nodes[cur].settled) continue;
    nodes[cur].settled = true;
    const std::size_t dist = nodes[cur].dist;
    const std::size_t pos = nodes[cur].key.back();
    Marking m(nodes[cur].key.begin(), nodes[cur].key.end() - 1);

    if (pos == trace.size() && m == goal) {
      Alignment a;
      a.cost = dist;
      for (std::size_t n = cur; nodes[n].pred != kNone; n = nodes[n].pred) {
        if (nodes[n].via != kNone) a.model_steps.push_back(TransitionId{nodes[n].via});
      }
      std::reverse(a.model_steps.begin(), a.model_steps.end());
      return a;
    }
    for (std::size_t t = 0; t < ts.size(); ++t) {
      if (!enabled(net, m, TransitionId{t})) continue;
      const Marking next = fire(net, m, TransitionId{t});
      bool ok = true;
      if (ts[t].silent()) {
        ok = relax(key_of(next, pos), dist, cur, t, 0);
      } else {
        if (pos < trace.size() && ts[t].label == trace[pos]) ok = relax(key_of(next, pos + 1), dist, cur, t, 0);
        ok = ok && relax(key_of(next, pos), dist, cur, t, 1);
      }
      if (!ok) return std::nullopt;
    }
    if (pos < trace.size() && !relax(key_of(m, pos + 1), dist, cur, kNone, 1)) return std::nullopt;
  }
  return std::nullopt;
}

namespace {

struct AlignedLog {
  std::map<Word, std::size_t> weights;
  std::map<Word, Alignment> alignments;
  std::size_t unaligned = 0;
};

AlignedLog align_log(const EventLog& log, const WorkflowNet& net, std::size_t bound) {
  AlignedLog out;
  for (const auto& t : log.traces()) ++out.weights[to_word(t)];
  for (const auto& [word, w] : out.weights) {
    if (auto a = align(net, word, bound)) {
      out.alignments.emplace(word, std::move(*a));
    } else {
      ++out.unaligned;
    }
  }
  return out;
}

double fitness_of(const AlignedLog& aligned, const WorkflowNet& net, std::size_t bound) {
  const auto empty = align(net, {}, bound);
  const double shortest = empty ? static_cast<double>(empty->cost) : 0.0;
  double sum = 0.0, total = 0.0;
  for (const auto& [word, a] : aligned.alignments) {
    const double w = static_cast<double>(aligned.weights.at(word));
    const double denom = static_cast<double>(word.size()) + shortest;
    const double f = denom > 0.0 ? 1.0 - static_cast<double>(a.cost) / denom : 1.0;
    sum += w * std::max(0.0, f);
    total += w;
  }
  return total > 0.0 ? sum / total : 0.0;
}

using MarkingSet = std::set<Marking>;

class SilentClosure {
 public:
  SilentClosure(const WorkflowNet& net, std::size_t bound) : net_(net), budget_(bound) {}

  MarkingSet close(MarkingSet seeds) {
    std::vector<Marking> stack(seeds.begin(), seeds.end());
    while (!stack.empty() && budget_ > 0) {
      Marking m = std::move(stack.back());
      stack.pop_back();
      for (std::size_t t = 0; t < net_.transitions().size(); ++t) {
        if (!net_.transitions()[t].silent() || !enabled(net_, m, TransitionId{t})) continue;
        Marking next = fire(net_, m, TransitionId{t});
        if (seeds.insert(next).second) {
          --budget_;
          stack.push_back(std::move(next));
        }
      }
    }
    return seeds;
  }

  MarkingSet step(const MarkingSet& from, const std::string& label) {
    MarkingSet out;
    for (const auto& m : from) {
      for (std::size_t t = 0; t < net_.transitions().size(); ++t) {
        const auto& tr = net_.transitions()[t];
        if (!tr.silent() && tr.label == label && enabled(net_, m, TransitionId{t})) {
          out.insert(fire(net_, m, TransitionId{t}));
        }
      }
    }
    return close(std::move(out));
  }

  std::set<std::string> enabled_labels(const MarkingSet& ms) const {
    std::set<std::string> out;
    for (const auto& m : ms) {
      for (std::size_t t = 0; t < net_.transitions().size(); ++t) {
        const auto& tr = net_.transitions()[t];
        if (!tr.silent() && enabled(net_, m, TransitionId{t})) out.insert(tr.label);
      }
    }
    return out;
  }

 private:
  const WorkflowNet& net_;
  std::size_t budget_;
};

double precision_of(const AlignedLog& aligned, const WorkflowNet& net, std::size_t bound) {
  std::map<Word, double> visits;
  std::map<Word, std::set<std::string>> executed;
  for (const auto& [word, a] : aligned.alignments) {
    const double w = static_cast<double>(aligned.weights.at(word));
    Word visible;
    for (auto t : a.model_steps) {
      const auto& tr = net.transition(t);
      if (!tr.silent()) visible.push_back(tr.label);
    }
    Word prefix;
    for (std::size_t i = 0; i <= visible.size(); ++i) {
      visits[prefix] += w;
      if (i < visible.size()) {
        executed[prefix].insert(visible[i]);
        prefix.push_back(visible[i]);
      }
    }
  }
  if (visits.empty()) return 0.0;

  SilentClosure closure(net, bound);
  std::map<Word, MarkingSet> states;
  double num = 0.0, den = 0.0;
  // Lexicographic order visits every prefix after its parent.
  for (const auto& [prefix, w] : visits) {
    MarkingSet here;
    if (prefix.empty()) {
      here = closure.close({initial_marking(net)});
    } else {
      Word parent(prefix.begin(), prefix.end() - 1);
      here = closure.step(states.at(parent), prefix.back());
    }
    const auto en = closure.enabled_labels(here);
    const auto ex = executed.find(prefix);
    num += w * static_cast<double>(ex == executed.end() ? 0 : ex->second.size());
    den += w * static_cast<double>(en.size());
    states.emplace(prefix, std::move(here));
  }
  return den > 0.0 ? std::min(1.0, num / den) : 1.0;
}

}  // namespace

double fitness(const EventLog& log, const WorkflowNet& net, const ConformanceOptions& options) {
  return fitness_of(align_log(log, net, options.alignment_state_bound), net, options.alignment_state_bound);
}

double precision(const EventLog& log, const WorkflowNet& net, const ConformanceOptions& options) {
  return precision_of(align_log(log, net, options.alignment_state_bound), net, options.precision_state_bound);
}

double f_score(double f, double p) {
  return f + p > 0.0 ? 2.0 * f * p / (f + p) : 0.0;
}

Complexity complexity(const WorkflowNet& net) {
  Complexity c;
  c.size = net.places().size() + net.transitions().size();
  for (std::size_t p = 0; p < net.places().size(); ++p) {
    const auto out = net.consumers(PlaceId{p}).size();
    if (out >= 2) c.cfc += out;
  }
  for (const auto& t : net.transitions()) {
    if (t.outputs.size() >= 2) c.cfc += 1;
  }
  return c;
}

ConformanceReport evaluate(const EventLog& log, const WorkflowNet& net, const ConformanceOptions& options) {
  const AlignedLog aligned = align_log(log, net, options.alignment_state_bound);
  ConformanceReport r;
  r.fitness = fitness_of(aligned, net, options.alignment_state_bound);
  r.precision = precision_of(aligned, net, options.precision_state_bound);
  r.f_score = f_score(r.fitness, r.precision);
  const auto c = complexity(net);
  r.size = c.size;
  r.cfc = c.cfc;
  for (const auto& [word, a] : aligned.alignments) r.per_trace_costs.emplace(word, a.cost);
  r.unaligned_traces = aligned.unaligned;
  return r;
}

std::string report_to_json(const ConformanceReport& report) {
  nlohmann::ordered_json j;
  j["fitness"] = report.fitness;
  j["precision"] = report.precision;
  j["f_score"] = report.f_score;
  j["size"] = report.size;
  j["cfc"] = report.cfc;
  j["unaligned_traces"] = report.unaligned_traces;
  auto costs = nlohmann::ordered_json::array();
  for (const auto& [word, cost] : report.per_trace_costs) {
    costs.push_back({{"trace", word}, {"cost", cost}});
  }
  j["per_trace_costs"] = std::move(costs);
  return j.dump(2) + "\n";
}

}  // namespace switchminer
