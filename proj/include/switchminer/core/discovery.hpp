#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "switchminer/core/eventlog.hpp"
#include "switchminer/core/relations.hpp"
#include "switchminer/core/tree.hpp"

namespace switchminer {

enum class CutOperator { Xor, Sequence, Parallel, Loop };

std::string_view to_string(CutOperator op);

struct Cut {
  CutOperator op = CutOperator::Xor;
  std::vector<std::set<ActivityLabel>> partitions;  // disjoint, k >= 2
  std::set<LabelPair> switches;                     // cross-partition invisible edges
  bool from_switch_cut = false;
};

struct DiscoveryConfig {
  bool delete_switch_traces = false;
  double noise_threshold = 0.0;  // relative edge filter; 0 disables
  bool enable_switch_cut = true;  // false gives the plain inductive miner
  std::size_t max_recursion_guard = 100000;
};

// One line per recursion step, for introspection and tests.
struct DiscoveryStep {
  std::size_t depth = 0;
  std::string decision;  // "base", "empty-traces", "switch-xor", "xor", "sequence", ...
  bool switch_cut_aborted = false;
  bool filtered = false;
};

struct DiscoveryReport {
  std::vector<DiscoveryStep> steps;
  std::size_t switches_pruned = 0;
};

SwitchProcessTree discover(const EventLog& log, const DiscoveryConfig& config = {},
                           DiscoveryReport* report = nullptr);

std::optional<SwitchProcessTree> base_case(const EventLog& log);

// Augment, find mendacious dependencies, cut the DFG along invisible edges. `dfg` (when given) replaces the log's own DFG for the
// component computation, e.g. after noise filtering.
std::optional<Cut> switch_exclusive_choice_cut(const EventLog& log, const Dfg* dfg = nullptr);

std::optional<Cut> xor_cut(const Dfg& dfg);
std::optional<Cut> sequence_cut(const Dfg& dfg);
std::optional<Cut> concurrent_cut(const Dfg& dfg);
std::optional<Cut> loop_cut(const Dfg& dfg);

std::vector<EventLog> split_log(const EventLog& log, const Cut& cut, const DiscoveryConfig& config = {});

// True when the split keeps every activity of the log.
bool verify_switch_cut(const EventLog& log, std::span<const EventLog> sublogs);

// Flower model loop(tau, a1, ..., an).
SwitchProcessTree fallthrough(const EventLog& log);

Dfg apply_noise_filter(const Dfg& dfg, double threshold);

}  // namespace switchminer
