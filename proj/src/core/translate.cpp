#include <algorithm>
#include <map>

#include "switchminer/core/error.hpp"
#include "switchminer/core/petrinet.hpp"

namespace switchminer {

namespace {

class BaseTranslator {
 public:
  explicit BaseTranslator(WorkflowNet& net) : net_(net) {}

  void build(const SwitchProcessTree& t, PlaceId in, PlaceId out) {
    switch (t.kind()) {
      case NodeKind::Activity:
      case NodeKind::Switch: {
        auto tr = net_.add_transition(t.label().text, t.label().text, TransitionKind::Visible);
        net_.add_arc(in, tr);
        net_.add_arc(tr, out);
        return;
      }
      case NodeKind::Tau: {
        auto tr = silent("tau");
        net_.add_arc(in, tr);
        net_.add_arc(tr, out);
        return;
      }
      case NodeKind::Xor:
        for (const auto& c : t.children()) build(c, in, out);
        return;
      case NodeKind::Sequence: {
        PlaceId cur = in;
        const auto& cs = t.children();
        for (std::size_t i = 0; i < cs.size(); ++i) {
          PlaceId next = i + 1 == cs.size() ? out : place();
          build(cs[i], cur, next);
          cur = next;
        }
        return;
      }
      case NodeKind::Parallel: {
        auto fork = silent("fork");
        auto join = silent("join");
        net_.add_arc(in, fork);
        net_.add_arc(join, out);
        for (const auto& c : t.children()) {
          PlaceId ci = place(), co = place();
          net_.add_arc(fork, ci);
          build(c, ci, co);
          net_.add_arc(co, join);
        }
        return;
      }
      case NodeKind::Loop: {
        auto enter = silent("loop_enter");
        auto exit = silent("loop_exit");
        PlaceId body_in = place(), body_out = place();
        net_.add_arc(in, enter);
        net_.add_arc(enter, body_in);
        build(t.children()[0], body_in, body_out);
        net_.add_arc(body_out, exit);
        net_.add_arc(exit, out);
        for (std::size_t i = 1; i < t.children().size(); ++i) build(t.children()[i], body_out, body_in);
        return;
      }
    }
  }

 private:
  PlaceId place() { return net_.add_place("p" + std::to_string(places_++)); }
  TransitionId silent(const std::string& stem) {
    return net_.add_transition(stem + "_" + std::to_string(silents_++), "", TransitionKind::Tau);
  }

  WorkflowNet& net_;
  std::size_t places_ = 0;
  std::size_t silents_ = 0;
};

std::vector<TransitionId> without_switches(const WorkflowNet& net, std::vector<TransitionId> ts) {
  std::erase_if(ts, [&](TransitionId t) { return net.transition(t).kind == TransitionKind::Switch; });
  return ts;
}

}  // namespace

WorkflowNet translate_base(const SwitchProcessTree& tree) {
  WorkflowNet net;
  auto source = net.add_place("source");
  auto sink = net.add_place("sink");
  net.set_source(source);
  net.set_sink(sink);
  BaseTranslator(net).build(tree, source, sink);
  return net;
}

WorkflowNet attach_switches(WorkflowNet net, const std::vector<LabelPair>& switches,
                            std::vector<std::string>* warnings) {
  std::size_t bridges = 0;
  auto bridge_place = [&] { return net.add_place("bridge_p" + std::to_string(bridges)); };
  auto bridge_transition = [&] {
    return net.add_transition("bridge_" + std::to_string(bridges++), "", TransitionKind::Bridge);
  };
  auto warn = [&](std::string msg) {
    if (warnings) warnings->push_back(std::move(msg));
  };

  std::vector<LabelPair> unique = switches;
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());

  for (const auto& [a, b] : unique) {
    auto ta = net.find_visible(a.text);
    auto tb = net.find_visible(b.text);
    if (!ta || !tb) {
      warn("switch " + a.display() + "=>" + b.display() + " skipped: " +
           (!ta ? a.display() : b.display()) + " has no visible transition");
      continue;
    }
    if (net.transition(*ta).outputs.empty() || net.transition(*tb).inputs.empty()) {
      warn("switch " + a.display() + "=>" + b.display() + " skipped: endpoint lacks an attachment place");
      continue;
    }

    // AND-split after a: route a's outputs through a silent split point.
    if (net.transition(*ta).outputs.size() > 1) {
      auto split = bridge_transition();
      auto p = bridge_place();
      auto outs = net.transition(*ta).outputs;
      for (auto o : outs) {
        net.remove_arc(*ta, o);
        net.add_arc(split, o);
      }
      net.add_arc(*ta, p);
      net.add_arc(p, split);
    }
    PlaceId from = net.transition(*ta).outputs.front();
    if (without_switches(net, net.producers(from)).size() > 1) {
      // Shared output place: only tokens produced by a may take the switch.
      auto p = bridge_place();
      auto t = bridge_transition();
      net.remove_arc(*ta, from);
      net.add_arc(*ta, p);
      net.add_arc(p, t);
      net.add_arc(t, from);
      from = p;
    }

    // AND-join before b: collect b's inputs in a silent join point.
    if (net.transition(*tb).inputs.size() > 1) {
      auto join = bridge_transition();
      auto p = bridge_place();
      auto ins = net.transition(*tb).inputs;
      for (auto i : ins) {
        net.remove_arc(i, *tb);
        net.add_arc(i, join);
      }
      net.add_arc(join, p);
      net.add_arc(p, *tb);
    }
    PlaceId to = net.transition(*tb).inputs.front();
    if (without_switches(net, net.consumers(to)).size() > 1) {
      // Shared input place: the switched token must enable b and nothing else.
      auto p = bridge_place();
      auto t = bridge_transition();
      net.remove_arc(to, *tb);
      net.add_arc(to, t);
      net.add_arc(t, p);
      net.add_arc(p, *tb);
      to = p;
    }

    auto sw = net.add_transition("switch_" + a.text + "_" + b.text, "", TransitionKind::Switch);
    net.transition(sw).switch_source = a.text;
    net.transition(sw).switch_destination = b.text;
    net.add_arc(from, sw);
    net.add_arc(sw, to);
  }
  return net;
}

WorkflowNet translate(const SwitchProcessTree& tree) {
  const auto violations = validate_switches(tree);
  if (!violations.empty()) {
    std::string msg = "switch constraint violated: " + violations.front().detail;
    if (violations.size() > 1) msg += " (and " + std::to_string(violations.size() - 1) + " more)";
    throw ConstraintError(msg);
  }
  auto switches = tree.switches();
  if (!switches.empty()) {
    std::map<ActivityLabel, std::size_t> seen;
    auto count = [&](auto&& self, const SwitchProcessTree& t) -> void {
      if (t.has_label()) ++seen[t.label()];
      for (const auto& c : t.children()) self(self, c);
    };
    count(count, tree);
    for (const auto& [label, n] : seen) {
      if (n > 1) throw ConstraintError("label " + label.display() + " occurs in more than one leaf");
    }
  }
  return attach_switches(translate_base(tree), switches);
}

}  // namespace switchminer
