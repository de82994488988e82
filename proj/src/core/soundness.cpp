#include <algorithm>
#include <deque>
#include <unordered_map>

#include "switchminer/core/petrinet.hpp"

namespace switchminer {

namespace {

struct MarkingHash {
  std::size_t operator()(const Marking& m) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto v : m) {
      h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

bool strictly_covers(const Marking& m, const Marking& target) {
  bool strict = false;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] < target[i]) return false;
    if (m[i] > target[i]) strict = true;
  }
  return strict;
}

}  // namespace

SoundnessReport check_soundness(const WorkflowNet& net, std::size_t state_bound) {
  SoundnessReport report;
  report.structure_problems = check_workflow_structure(net);
  report.safe = true;
  report.proper_completion = true;
  report.complete = true;

  const Marking init = initial_marking(net);
  const Marking final_m = final_marking(net);
  const std::size_t nt = net.transitions().size();

  std::vector<Marking> states{init};
  std::unordered_map<Marking, std::size_t, MarkingHash> index{{init, 0}};
  std::vector<std::vector<std::size_t>> predecessors(1);
  std::vector<bool> fired(nt, false);
  std::deque<std::size_t> queue{0};

  while (!queue.empty()) {
    const std::size_t s = queue.front();
    queue.pop_front();
    for (std::size_t t = 0; t < nt; ++t) {
      if (!enabled(net, states[s], TransitionId{t})) continue;
      fired[t] = true;
      Marking next = fire(net, states[s], TransitionId{t});
      auto it = index.find(next);
      if (it == index.end()) {
        if (states.size() >= state_bound) {
          report.complete = false;
          continue;
        }
        for (auto v : next) {
          if (v > 1) report.safe = false;
        }
        if (strictly_covers(next, final_m)) report.proper_completion = false;
        it = index.emplace(next, states.size()).first;
        states.push_back(std::move(next));
        predecessors.emplace_back();
        queue.push_back(it->second);
      }
      predecessors[it->second].push_back(s);
    }
  }
  report.states_explored = states.size();

  // Option to complete: every reachable marking reaches the final marking.
  auto fin = index.find(final_m);
  if (fin != index.end()) {
    std::vector<bool> reaches(states.size(), false);
    std::deque<std::size_t> q{fin->second};
    reaches[fin->second] = true;
    while (!q.empty()) {
      auto s = q.front();
      q.pop_front();
      for (auto p : predecessors[s]) {
        if (!reaches[p]) {
          reaches[p] = true;
          q.push_back(p);
        }
      }
    }
    report.option_to_complete = std::all_of(reaches.begin(), reaches.end(), [](bool b) { return b; });
  }
  for (std::size_t t = 0; t < nt; ++t) {
    if (!fired[t]) report.dead_tasks.insert(TransitionId{t});
  }
  report.no_dead_tasks = report.dead_tasks.empty();
  if (!report.complete) report.option_to_complete = false;
  report.is_sound = report.complete && report.structure_problems.empty() && report.safe &&
                    report.proper_completion && report.option_to_complete && report.no_dead_tasks;
  return report;
}

}  // namespace switchminer
