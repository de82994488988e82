#include <deque>
#include <map>

#include "switchminer/core/petrinet.hpp"

namespace switchminer {

namespace {

class LanguageEnumerator {
 public:
  LanguageEnumerator(const WorkflowNet& net, std::size_t max_length, std::size_t state_bound)
      : net_(net), max_length_(max_length), budget_(state_bound), final_(final_marking(net)) {}

  LanguageResult run() {
    Word word;
    explore(word, closure({initial_marking(net_)}));
    return std::move(result_);
  }

 private:
  // Markings reachable through silent transitions only.
  std::set<Marking> closure(std::set<Marking> seeds) {
    std::deque<Marking> q(seeds.begin(), seeds.end());
    while (!q.empty()) {
      Marking m = std::move(q.front());
      q.pop_front();
      for (std::size_t t = 0; t < net_.transitions().size(); ++t) {
        const TransitionId id{t};
        if (!net_.transition(id).silent() || !enabled(net_, m, id)) continue;
        Marking next = fire(net_, m, id);
        if (seeds.contains(next)) continue;
        if (!spend()) return seeds;
        seeds.insert(next);
        q.push_back(std::move(next));
      }
    }
    return seeds;
  }

  bool spend() {
    if (budget_ == 0) {
      result_.complete = false;
      return false;
    }
    --budget_;
    return true;
  }

  void explore(Word& word, const std::set<Marking>& states) {
    if (states.contains(final_)) result_.words.insert(word);
    if (word.size() >= max_length_ || !result_.complete) return;
    std::map<std::string, std::set<Marking>> next;
    for (const auto& m : states) {
      for (std::size_t t = 0; t < net_.transitions().size(); ++t) {
        const TransitionId id{t};
        const auto& tr = net_.transition(id);
        if (tr.silent() || !enabled(net_, m, id)) continue;
        next[tr.label].insert(fire(net_, m, id));
      }
    }
    for (auto& [label, seeds] : next) {
      if (!spend()) return;
      word.push_back(label);
      explore(word, closure(std::move(seeds)));
      word.pop_back();
    }
  }

  const WorkflowNet& net_;
  std::size_t max_length_;
  std::size_t budget_;
  Marking final_;
  LanguageResult result_;
};

}  // namespace

LanguageResult enumerate_language(const WorkflowNet& net, std::size_t max_length, std::size_t state_bound) {
  return LanguageEnumerator(net, max_length, state_bound).run();
}

}  // namespace switchminer
