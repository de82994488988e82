#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "switchminer/core/eventlog.hpp"

namespace switchminer {

// Directly-follows graph.
struct Dfg {
  std::set<ActivityLabel> nodes;
  std::map<LabelPair, std::uint64_t> edges;  // every stored count >= 1
  std::map<ActivityLabel, std::uint64_t> starts;
  std::map<ActivityLabel, std::uint64_t> ends;

  bool has_edge(const ActivityLabel& a, const ActivityLabel& b) const {
    return edges.contains({a, b});
  }
  std::uint64_t edge_count(const ActivityLabel& a, const ActivityLabel& b) const;
};

Dfg build_dfg(const EventLog& log);

enum class Ordering {
  Causal,         // a ->_L b only
  ReverseCausal,  // b ->_L a only
  MutualCausal,   // both, through a length-two loop
  Parallel,
  Choice,
};

// Ordering relations over the activities of one log.
class RelationTable {
 public:
  RelationTable() = default;

  // `log` supplies the <..a,b,a..> patterns; the DFG alone cannot tell a
  // two-loop from two separate successions.
  static RelationTable derive(const Dfg& dfg, const EventLog& log);

  const std::vector<ActivityLabel>& activities() const noexcept { return activities_; }
  std::optional<std::size_t> index_of(const ActivityLabel& a) const;

  bool follows(const ActivityLabel& a, const ActivityLabel& b) const;    // a >_L b
  bool two_loop(const ActivityLabel& a, const ActivityLabel& b) const;   // a ~_L b
  bool causal(const ActivityLabel& a, const ActivityLabel& b) const;     // a ->_L b
  bool parallel(const ActivityLabel& a, const ActivityLabel& b) const;   // a ||_L b
  bool choice(const ActivityLabel& a, const ActivityLabel& b) const;     // a #_L b

  Ordering classify(const ActivityLabel& a, const ActivityLabel& b) const;

  // Index-based variants used by the hot loops.
  bool follows(std::size_t a, std::size_t b) const { return gt_[a * n_ + b]; }
  bool two_loop(std::size_t a, std::size_t b) const { return loop2_[a * n_ + b]; }
  bool causal(std::size_t a, std::size_t b) const { return follows(a, b) && (!follows(b, a) || two_loop(a, b)); }
  bool choice(std::size_t a, std::size_t b) const { return !follows(a, b) && !follows(b, a); }

 private:
  std::vector<ActivityLabel> activities_;
  std::map<ActivityLabel, std::size_t> index_;
  std::size_t n_ = 0;
  std::vector<bool> gt_;
  std::vector<bool> loop2_;
};

RelationTable derive_relations(const Dfg& dfg, const EventLog& log);

struct MendaciousWitness {
  ActivityLabel x;
  ActivityLabel y;
};

// a ~> b pairs with the first witness (x, y) found in label order.
struct MendaciousSet {
  std::map<LabelPair, MendaciousWitness> pairs;

  bool contains(const ActivityLabel& a, const ActivityLabel& b) const { return pairs.contains({a, b}); }
  std::size_t size() const noexcept { return pairs.size(); }
  bool empty() const noexcept { return pairs.empty(); }
  std::set<LabelPair> keys() const;
};

// Expects a log already augmented with artificial endpoints. Artificial labels
// may serve as witnesses but never as endpoints of a reported pair.
MendaciousSet mendacious_dependencies(const EventLog& augmented_log);
MendaciousSet mendacious_dependencies(const RelationTable& relations);

struct InvisibleEdgeDfg {
  Dfg base;
  std::set<LabelPair> invisible;

  bool is_invisible(const ActivityLabel& a, const ActivityLabel& b) const { return invisible.contains({a, b}); }
};

InvisibleEdgeDfg annotate_invisible_edges(const Dfg& dfg, const MendaciousSet& mendacious);

// Graphviz rendering; invisible edges are dashed.
std::string dfg_to_dot(const InvisibleEdgeDfg& graph);

}  // namespace switchminer
