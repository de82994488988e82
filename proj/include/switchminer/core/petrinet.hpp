#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "switchminer/core/eventlog.hpp"
#include "switchminer/core/tree.hpp"

namespace switchminer {

struct PlaceId {
  std::size_t value = 0;
  auto operator<=>(const PlaceId&) const = default;
};

struct TransitionId {
  std::size_t value = 0;
  auto operator<=>(const TransitionId&) const = default;
};

enum class TransitionKind { Visible, Tau, Switch, Bridge };

std::string_view to_string(TransitionKind kind);

struct Place {
  std::string name;
};

struct Transition {
  std::string name;   // element id / diagnostic name
  std::string label;  // activity label; empty for silent transitions
  TransitionKind kind = TransitionKind::Visible;
  std::vector<PlaceId> inputs;
  std::vector<PlaceId> outputs;
  // Switch transitions remember which behaviour they realize.
  std::string switch_source;
  std::string switch_destination;

  bool silent() const noexcept { return kind != TransitionKind::Visible; }
};

// Petri net with a distinguished source and sink place. Arcs are stored on
// the transitions; place-side adjacency is derived.
class WorkflowNet {
 public:
  PlaceId add_place(std::string name);
  TransitionId add_transition(std::string name, std::string label, TransitionKind kind);
  void add_arc(PlaceId from, TransitionId to);
  void add_arc(TransitionId from, PlaceId to);
  bool remove_arc(PlaceId from, TransitionId to);
  bool remove_arc(TransitionId from, PlaceId to);

  void set_source(PlaceId p) { source_ = p; }
  void set_sink(PlaceId p) { sink_ = p; }
  PlaceId source() const noexcept { return source_; }
  PlaceId sink() const noexcept { return sink_; }

  const std::vector<Place>& places() const noexcept { return places_; }
  const std::vector<Transition>& transitions() const noexcept { return transitions_; }
  const Place& place(PlaceId p) const { return places_.at(p.value); }
  const Transition& transition(TransitionId t) const { return transitions_.at(t.value); }
  Transition& transition(TransitionId t) { return transitions_.at(t.value); }

  std::vector<TransitionId> producers(PlaceId p) const;
  std::vector<TransitionId> consumers(PlaceId p) const;

  std::optional<TransitionId> find_visible(std::string_view label) const;
  std::size_t arc_count() const;
  std::size_t count(TransitionKind kind) const;

 private:
  std::vector<Place> places_;
  std::vector<Transition> transitions_;
  PlaceId source_{};
  PlaceId sink_{};
};

// Structural workflow-net problems (empty list when fine): single source and
// sink, every node on a source-to-sink path.
std::vector<std::string> check_workflow_structure(const WorkflowNet& net);

// Block-structured translation of the tree with switch leaves read as plain
// activities.
WorkflowNet translate_base(const SwitchProcessTree& tree);

// Full translation: base net plus one silent switch transition per switch
// behaviour. Throws ConstraintError when validate_switches reports anything.
WorkflowNet translate(const SwitchProcessTree& tree);

// Connects each (source, destination) through a new silent switch transition,
// inserting bridges where the attachment place is shared. Pairs whose visible
// transitions are missing are skipped and reported in `warnings`.
WorkflowNet attach_switches(WorkflowNet net, const std::vector<LabelPair>& switches,
                            std::vector<std::string>* warnings = nullptr);

using Marking = std::vector<std::uint32_t>;

Marking initial_marking(const WorkflowNet& net);
Marking final_marking(const WorkflowNet& net);
bool enabled(const WorkflowNet& net, const Marking& m, TransitionId t);
Marking fire(const WorkflowNet& net, const Marking& m, TransitionId t);

struct SoundnessReport {
  bool is_sound = false;
  bool safe = false;
  bool proper_completion = false;
  bool option_to_complete = false;
  bool no_dead_tasks = false;
  bool complete = false;  // false: state bound hit, verdict indeterminate
  std::set<TransitionId> dead_tasks;
  std::size_t states_explored = 0;
  std::vector<std::string> structure_problems;
};

SoundnessReport check_soundness(const WorkflowNet& net, std::size_t state_bound = 1000000);

using Word = std::vector<std::string>;

struct LanguageResult {
  std::set<Word> words;
  bool complete = true;  // false when the state bound cut the enumeration
};

// Visible projections of complete firing sequences with at most `max_length`
// visible steps.
LanguageResult enumerate_language(const WorkflowNet& net, std::size_t max_length,
                                  std::size_t state_bound = 1000000);

std::string export_pnml(const WorkflowNet& net);
WorkflowNet import_pnml(std::string_view document);
std::string export_dot(const WorkflowNet& net);

}  // namespace switchminer
