#include "switchminer/core/petrinet.hpp"

#include <algorithm>
#include <deque>

#include "switchminer/core/error.hpp"

namespace switchminer {

std::string_view to_string(TransitionKind kind) {
  switch (kind) {
    case TransitionKind::Visible: return "visible";
    case TransitionKind::Tau: return "tau";
    case TransitionKind::Switch: return "switch";
    case TransitionKind::Bridge: return "bridge";
  }
  return "?";
}

PlaceId WorkflowNet::add_place(std::string name) {
  places_.push_back({std::move(name)});
  return PlaceId{places_.size() - 1};
}

TransitionId WorkflowNet::add_transition(std::string name, std::string label, TransitionKind kind) {
  Transition t;
  t.name = std::move(name);
  t.label = std::move(label);
  t.kind = kind;
  transitions_.push_back(std::move(t));
  return TransitionId{transitions_.size() - 1};
}

void WorkflowNet::add_arc(PlaceId from, TransitionId to) {
  auto& ins = transitions_.at(to.value).inputs;
  if (from.value >= places_.size()) throw InternalError("arc from unknown place");
  if (std::find(ins.begin(), ins.end(), from) == ins.end()) ins.push_back(from);
}

void WorkflowNet::add_arc(TransitionId from, PlaceId to) {
  auto& outs = transitions_.at(from.value).outputs;
  if (to.value >= places_.size()) throw InternalError("arc to unknown place");
  if (std::find(outs.begin(), outs.end(), to) == outs.end()) outs.push_back(to);
}

bool WorkflowNet::remove_arc(PlaceId from, TransitionId to) {
  auto& ins = transitions_.at(to.value).inputs;
  auto it = std::find(ins.begin(), ins.end(), from);
  if (it == ins.end()) return false;
  ins.erase(it);
  return true;
}

bool WorkflowNet::remove_arc(TransitionId from, PlaceId to) {
  auto& outs = transitions_.at(from.value).outputs;
  auto it = std::find(outs.begin(), outs.end(), to);
  if (it == outs.end()) return false;
  outs.erase(it);
  return true;
}

std::vector<TransitionId> WorkflowNet::producers(PlaceId p) const {
  std::vector<TransitionId> out;
  for (std::size_t i = 0; i < transitions_.size(); ++i) {
    const auto& o = transitions_[i].outputs;
    if (std::find(o.begin(), o.end(), p) != o.end()) out.push_back(TransitionId{i});
  }
  return out;
}

std::vector<TransitionId> WorkflowNet::consumers(PlaceId p) const {
  std::vector<TransitionId> out;
  for (std::size_t i = 0; i < transitions_.size(); ++i) {
    const auto& in = transitions_[i].inputs;
    if (std::find(in.begin(), in.end(), p) != in.end()) out.push_back(TransitionId{i});
  }
  return out;
}

std::optional<TransitionId> WorkflowNet::find_visible(std::string_view label) const {
  for (std::size_t i = 0; i < transitions_.size(); ++i) {
    if (transitions_[i].kind == TransitionKind::Visible && transitions_[i].label == label) return TransitionId{i};
  }
  return std::nullopt;
}

std::size_t WorkflowNet::arc_count() const {
  std::size_t n = 0;
  for (const auto& t : transitions_) n += t.inputs.size() + t.outputs.size();
  return n;
}

std::size_t WorkflowNet::count(TransitionKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(transitions_.begin(), transitions_.end(), [kind](const Transition& t) { return t.kind == kind; }));
}

std::vector<std::string> check_workflow_structure(const WorkflowNet& net) {
  std::vector<std::string> problems;
  const std::size_t np = net.places().size();
  const std::size_t nt = net.transitions().size();
  if (np == 0) return {"net has no places"};
  std::vector<bool> has_pre(np, false), has_post(np, false);
  for (const auto& t : net.transitions()) {
    for (auto p : t.outputs) has_pre[p.value] = true;
    for (auto p : t.inputs) has_post[p.value] = true;
  }
  for (std::size_t p = 0; p < np; ++p) {
    if (!has_pre[p] && p != net.source().value) {
      problems.push_back("place " + net.places()[p].name + " has an empty preset but is not the source");
    }
    if (!has_post[p] && p != net.sink().value) {
      problems.push_back("place " + net.places()[p].name + " has an empty postset but is not the sink");
    }
  }
  if (has_pre[net.source().value]) problems.push_back("source place has incoming arcs");
  if (has_post[net.sink().value]) problems.push_back("sink place has outgoing arcs");

  // Node index: places [0, np), transitions [np, np + nt).
  std::vector<std::vector<std::size_t>> fwd(np + nt), bwd(np + nt);
  for (std::size_t i = 0; i < nt; ++i) {
    for (auto p : net.transitions()[i].inputs) {
      fwd[p.value].push_back(np + i);
      bwd[np + i].push_back(p.value);
    }
    for (auto p : net.transitions()[i].outputs) {
      fwd[np + i].push_back(p.value);
      bwd[p.value].push_back(np + i);
    }
  }
  auto reach = [&](std::size_t start, const std::vector<std::vector<std::size_t>>& adj) {
    std::vector<bool> seen(np + nt, false);
    std::deque<std::size_t> q{start};
    seen[start] = true;
    while (!q.empty()) {
      auto n = q.front();
      q.pop_front();
      for (auto m : adj[n]) {
        if (!seen[m]) {
          seen[m] = true;
          q.push_back(m);
        }
      }
    }
    return seen;
  };
  const auto from_source = reach(net.source().value, fwd);
  const auto to_sink = reach(net.sink().value, bwd);
  for (std::size_t n = 0; n < np + nt; ++n) {
    if (!from_source[n] || !to_sink[n]) {
      const std::string name = n < np ? "place " + net.places()[n].name : "transition " + net.transitions()[n - np].name;
      problems.push_back(name + " is not on a path from source to sink");
    }
  }
  return problems;
}

Marking initial_marking(const WorkflowNet& net) {
  Marking m(net.places().size(), 0);
  m[net.source().value] = 1;
  return m;
}

Marking final_marking(const WorkflowNet& net) {
  Marking m(net.places().size(), 0);
  m[net.sink().value] = 1;
  return m;
}

bool enabled(const WorkflowNet& net, const Marking& m, TransitionId t) {
  for (auto p : net.transition(t).inputs) {
    if (m[p.value] == 0) return false;
  }
  return true;
}

Marking fire(const WorkflowNet& net, const Marking& m, TransitionId t) {
  Marking next = m;
  const auto& tr = net.transition(t);
  for (auto p : tr.inputs) --next[p.value];
  for (auto p : tr.outputs) ++next[p.value];
  return next;
}

}  // namespace switchminer
