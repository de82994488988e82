#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "switchminer/core/eventlog.hpp"

namespace switchminer {

enum class NodeKind { Xor, Sequence, Parallel, Loop, Activity, Tau, Switch };

std::string_view to_string(NodeKind kind);

// Child indices from the root; the empty path is the root itself.
using NodePath = std::vector<std::size_t>;

// Process tree extended with switch leaves `a=>{b,...}`. Operators have at
// least two children; a loop's first child is its body, the rest are redo
// alternatives.
class SwitchProcessTree {
 public:
  static SwitchProcessTree activity(ActivityLabel label);
  static SwitchProcessTree tau();
  static SwitchProcessTree switch_leaf(ActivityLabel source, std::set<ActivityLabel> destinations);
  static SwitchProcessTree op(NodeKind kind, std::vector<SwitchProcessTree> children);

  NodeKind kind() const noexcept { return kind_; }
  bool is_operator() const noexcept;
  bool is_leaf() const noexcept { return !is_operator(); }
  // Activity and switch leaves carry a label (the switch source).
  bool has_label() const noexcept { return kind_ == NodeKind::Activity || kind_ == NodeKind::Switch; }

  const ActivityLabel& label() const noexcept { return label_; }
  const std::set<ActivityLabel>& destinations() const noexcept { return destinations_; }
  const std::vector<SwitchProcessTree>& children() const noexcept { return children_; }

  // Throws ConfigError when the path does not address a node.
  const SwitchProcessTree& at(const NodePath& path) const;
  bool contains(const NodePath& path) const;

  std::set<ActivityLabel> labels() const;
  std::vector<LabelPair> switches() const;
  std::size_t node_count() const;

  // Same tree with every switch leaf turned into its plain activity leaf.
  SwitchProcessTree without_switches() const;

  bool operator==(const SwitchProcessTree&) const = default;

 private:
  SwitchProcessTree() = default;
  friend class TreeEditor;

  NodeKind kind_ = NodeKind::Tau;
  ActivityLabel label_;
  std::set<ActivityLabel> destinations_;
  std::vector<SwitchProcessTree> children_;
};

// Nearest strict ancestor of `node` with the given operator kind.
std::optional<NodePath> first_ancestor(const SwitchProcessTree& tree, const NodePath& node, NodeKind kind);

// Intermediate nodes on the downward path from `from` to `to`; empty when `to`
// is not a proper descendant of `from`.
std::vector<NodePath> path_between(const SwitchProcessTree& tree, const NodePath& from, const NodePath& to);

// Path of the (first) activity or switch leaf labelled `label`.
std::optional<NodePath> find_leaf(const SwitchProcessTree& tree, const ActivityLabel& label);

enum class ConstraintRule { CrossBranch, Parallel };

struct ConstraintViolation {
  NodePath switch_leaf;
  ActivityLabel source;
  ActivityLabel destination;
  ConstraintRule rule;
  std::string detail;
};

std::vector<ConstraintViolation> validate_switches(const SwitchProcessTree& tree);

// Removes every violating destination; emptied switch leaves become activity
// leaves. Idempotent.
SwitchProcessTree prune_invalid_switches(const SwitchProcessTree& tree);

// Adds `destination` to the leaf labelled `source` (turning it into a switch
// leaf if needed). Returns false when either label has no leaf.
bool graft_switch(SwitchProcessTree& tree, const ActivityLabel& source, const ActivityLabel& destination);

// Canonical text form: X(..), ->(..), /\(..), loop(..), tau, labels,
// A=>{E,F}. Labels outside the bare charset are double-quoted.
std::string render_tree(const SwitchProcessTree& tree);
SwitchProcessTree parse_tree(std::string_view text);

std::string tree_to_dot(const SwitchProcessTree& tree);

}  // namespace switchminer
