#include <algorithm>
#include <map>

#include "switchminer/core/discovery.hpp"
#include "switchminer/core/error.hpp"

namespace switchminer {

namespace {

bool has_switch_adjacency(const Trace& t, const std::set<LabelPair>& switches) {
  for (std::size_t i = 0; i + 1 < t.events.size(); ++i) {
    if (switches.contains({t.events[i], t.events[i + 1]})) return true;
  }
  return false;
}

std::map<ActivityLabel, std::size_t> partition_index(const Cut& cut) {
  std::map<ActivityLabel, std::size_t> idx;
  for (std::size_t i = 0; i < cut.partitions.size(); ++i) {
    for (const auto& a : cut.partitions[i]) idx.emplace(a, i);
  }
  return idx;
}

Trace project(const Trace& t, const std::set<ActivityLabel>& part) {
  Trace out{t.case_id, {}};
  for (const auto& e : t.events) {
    if (part.contains(e)) out.events.push_back(e);
  }
  return out;
}

NodeKind node_kind(CutOperator op) {
  switch (op) {
    case CutOperator::Xor: return NodeKind::Xor;
    case CutOperator::Sequence: return NodeKind::Sequence;
    case CutOperator::Parallel: return NodeKind::Parallel;
    case CutOperator::Loop: return NodeKind::Loop;
  }
  return NodeKind::Xor;
}

class Miner {
 public:
  Miner(const DiscoveryConfig& config, DiscoveryReport* report) : config_(config), report_(report) {}

  SwitchProcessTree mine(const EventLog& log, std::size_t depth) {
    if (depth > config_.max_recursion_guard) throw InternalError("discovery recursion guard exceeded");
    if (auto b = base_case(log)) {
      note(depth, "base");
      return *b;
    }
    const bool any_empty =
        std::any_of(log.traces().begin(), log.traces().end(), [](const Trace& t) { return t.events.empty(); });
    if (any_empty) {
      note(depth, "empty-traces");
      EventLog rest;
      for (const auto& t : log.traces()) {
        if (!t.events.empty()) rest.add(t);
      }
      std::vector<SwitchProcessTree> kids;
      kids.push_back(mine(rest, depth + 1));
      kids.push_back(SwitchProcessTree::tau());
      return SwitchProcessTree::op(NodeKind::Xor, std::move(kids));
    }
    const Dfg dfg = build_dfg(log);
    if (auto t = attempt(log, dfg, depth, false)) return std::move(*t);
    if (config_.noise_threshold > 0.0) {
      const Dfg filtered = apply_noise_filter(dfg, config_.noise_threshold);
      if (auto t = attempt(log, filtered, depth, true)) return std::move(*t);
    }
    note(depth, "fallthrough");
    return fallthrough(log);
  }

 private:
  static std::optional<Cut> standard_cuts(const Dfg& dfg, bool include_xor) {
    std::optional<Cut> cut;
    if (include_xor) cut = xor_cut(dfg);
    if (!cut) cut = sequence_cut(dfg);
    if (!cut) cut = concurrent_cut(dfg);
    if (!cut) cut = loop_cut(dfg);
    return cut;
  }

  std::optional<SwitchProcessTree> attempt(const EventLog& log, const Dfg& dfg, std::size_t depth, bool filtered) {
    std::optional<Cut> cut;
    if (config_.enable_switch_cut) {
      cut = switch_exclusive_choice_cut(log, &dfg);
      if (!cut) cut = standard_cuts(dfg, false);
    } else {
      cut = standard_cuts(dfg, true);
    }
    if (!cut) return std::nullopt;

    auto sublogs = split_log(log, *cut, config_);
    bool aborted = false;
    if (cut->from_switch_cut && !verify_switch_cut(log, sublogs)) {
      aborted = true;
      cut = standard_cuts(dfg, true);
      if (!cut) {
        note(depth, "switch-xor", true, filtered);
        return std::nullopt;
      }
      sublogs = split_log(log, *cut, config_);
    }
    std::string decision(to_string(cut->op));
    if (cut->from_switch_cut) decision = "switch-xor";
    note(depth, decision, aborted, filtered);

    std::vector<SwitchProcessTree> kids;
    kids.reserve(sublogs.size());
    for (const auto& sub : sublogs) kids.push_back(mine(sub, depth + 1));
    auto tree = SwitchProcessTree::op(node_kind(cut->op), std::move(kids));
    for (const auto& [src, dst] : cut->switches) graft_switch(tree, src, dst);
    return tree;
  }

  void note(std::size_t depth, std::string decision, bool aborted = false, bool filtered = false) {
    if (report_) report_->steps.push_back({depth, std::move(decision), aborted, filtered});
  }

  const DiscoveryConfig& config_;
  DiscoveryReport* report_;
};

}  // namespace

std::optional<SwitchProcessTree> base_case(const EventLog& log) {
  const auto alphabet = log.alphabet();
  if (alphabet.empty()) return SwitchProcessTree::tau();
  if (alphabet.size() != 1) return std::nullopt;
  const ActivityLabel& a = *alphabet.begin();
  bool empty = false, repeated = false;
  for (const auto& t : log.traces()) {
    empty = empty || t.events.empty();
    repeated = repeated || t.events.size() > 1;
  }
  auto leaf = SwitchProcessTree::activity(a);
  if (!empty && !repeated) return leaf;
  if (!repeated) return SwitchProcessTree::op(NodeKind::Xor, {std::move(leaf), SwitchProcessTree::tau()});
  auto loop = SwitchProcessTree::op(NodeKind::Loop, {std::move(leaf), SwitchProcessTree::tau()});
  if (!empty) return loop;
  return SwitchProcessTree::op(NodeKind::Xor, {std::move(loop), SwitchProcessTree::tau()});
}

std::vector<EventLog> split_log(const EventLog& log, const Cut& cut, const DiscoveryConfig& config) {
  const std::size_t k = cut.partitions.size();
  std::vector<EventLog> out(k);
  const auto idx = partition_index(cut);

  switch (cut.op) {
    case CutOperator::Xor: {
      const bool drop = config.delete_switch_traces && !cut.switches.empty();
      for (const auto& t : log.traces()) {
        if (drop && has_switch_adjacency(t, cut.switches)) continue;
        std::vector<std::size_t> count(k, 0);
        std::vector<std::size_t> first(k, t.events.size());
        for (std::size_t i = 0; i < t.events.size(); ++i) {
          auto it = idx.find(t.events[i]);
          if (it == idx.end()) continue;
          ++count[it->second];
          first[it->second] = std::min(first[it->second], i);
        }
        std::size_t best = 0;
        for (std::size_t p = 1; p < k; ++p) {
          if (count[p] > count[best] || (count[p] == count[best] && first[p] < first[best])) best = p;
        }
        out[best].add(project(t, cut.partitions[best]));
      }
      break;
    }
    case CutOperator::Sequence:
    case CutOperator::Parallel:
      for (const auto& t : log.traces()) {
        for (std::size_t p = 0; p < k; ++p) out[p].add(project(t, cut.partitions[p]));
      }
      break;
    case CutOperator::Loop:
      for (const auto& t : log.traces()) {
        bool expect_body = true;
        Trace current{t.case_id, {}};
        std::optional<std::size_t> current_part;
        auto flush = [&] {
          if (!current_part) return;
          out[*current_part].add(current);
          current.events.clear();
          expect_body = *current_part != 0;
          current_part.reset();
        };
        for (const auto& e : t.events) {
          auto it = idx.find(e);
          const std::size_t p = it == idx.end() ? 0 : it->second;
          if (current_part && *current_part == p) {
            current.events.push_back(e);
            continue;
          }
          flush();
          // Two redo iterations in a row, or a redo first: the body ran empty.
          if (p != 0 && expect_body) out[0].add(Trace{t.case_id, {}});
          current_part = p;
          current.events.push_back(e);
        }
        flush();
        if (expect_body) out[0].add(Trace{t.case_id, {}});
      }
      break;
  }
  return out;
}

bool verify_switch_cut(const EventLog& log, std::span<const EventLog> sublogs) {
  return count_distinct_activities(log) == count_distinct_activities(sublogs);
}

SwitchProcessTree fallthrough(const EventLog& log) {
  std::vector<SwitchProcessTree> kids;
  kids.push_back(SwitchProcessTree::tau());
  for (const auto& a : log.alphabet()) kids.push_back(SwitchProcessTree::activity(a));
  if (kids.size() == 1) return SwitchProcessTree::tau();
  return SwitchProcessTree::op(NodeKind::Loop, std::move(kids));
}

SwitchProcessTree discover(const EventLog& log, const DiscoveryConfig& config, DiscoveryReport* report) {
  if (config.noise_threshold < 0.0 || config.noise_threshold > 1.0) {
    throw ConfigError("noise_threshold must lie in [0, 1]");
  }
  if (config.max_recursion_guard == 0) throw ConfigError("max_recursion_guard must be positive");
  const EventLog clean = strip_artificial(log);
  Miner miner(config, report);
  SwitchProcessTree tree = miner.mine(clean, 0);
  const std::size_t violations = validate_switches(tree).size();
  if (violations > 0) tree = prune_invalid_switches(tree);
  if (report) report->switches_pruned = violations;
  return tree;
}

}  // namespace switchminer
