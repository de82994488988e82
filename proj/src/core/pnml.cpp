#include <map>
#include <sstream>

#include "switchminer/core/error.hpp"
#include "switchminer/core/petrinet.hpp"
#include "switchminer/core/xml.hpp"

namespace switchminer {

namespace {

constexpr std::string_view kTool = "switchminer";

std::string text_of(const xml::Element* e) {
  if (!e) return {};
  if (const auto* t = e->child("text")) return t->text;
  return {};
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

void collect(const xml::Element& e, std::vector<const xml::Element*>& places,
             std::vector<const xml::Element*>& transitions, std::vector<const xml::Element*>& arcs) {
  for (const auto& c : e.children) {
    if (c->name == "place") {
      places.push_back(c.get());
    } else if (c->name == "transition") {
      transitions.push_back(c.get());
    } else if (c->name == "arc") {
      arcs.push_back(c.get());
    } else if (c->name == "page") {
      collect(*c, places, transitions, arcs);
    }
  }
}

std::string required_attribute(const xml::Element& e, std::string_view key) {
  auto v = e.attribute(key);
  if (!v) throw ParseError("<" + e.name + "> on line " + std::to_string(e.line) + " lacks attribute '" +
                               std::string(key) + "'",
                           e.line);
  return std::string(*v);
}

}  // namespace

std::string export_pnml(const WorkflowNet& net) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<pnml>\n"
      << "  <net id=\"net1\" type=\"http://www.pnml.org/version-2009/grammar/pnmlcoremodel\">\n"
      << "    <name><text>switchminer</text></name>\n    <page id=\"page1\">\n";
  for (std::size_t i = 0; i < net.places().size(); ++i) {
    out << "      <place id=\"p" << i << "\"><name><text>" << xml::escape(net.places()[i].name) << "</text></name>";
    if (i == net.source().value) out << "<initialMarking><text>1</text></initialMarking>";
    out << "</place>\n";
  }
  for (std::size_t i = 0; i < net.transitions().size(); ++i) {
    const auto& t = net.transitions()[i];
    out << "      <transition id=\"t" << i << "\"><name><text>" << xml::escape(t.label) << "</text></name>";
    if (t.silent()) {
      out << "\n        <toolspecific tool=\"ProM\" version=\"6.4\" activity=\"$invisible$\" localNodeID=\"t" << i
          << "\"/>\n        <toolspecific tool=\"" << kTool << "\" version=\"1\" kind=\"" << to_string(t.kind)
          << "\" name=\"" << xml::escape(t.name) << "\"";
      if (t.kind == TransitionKind::Switch) {
        out << " source=\"" << xml::escape(t.switch_source) << "\" destination=\""
            << xml::escape(t.switch_destination) << "\"";
      }
      out << "/>\n      ";
    }
    out << "</transition>\n";
  }
  std::size_t arc = 0;
  for (std::size_t i = 0; i < net.transitions().size(); ++i) {
    for (auto p : net.transitions()[i].inputs) {
      out << "      <arc id=\"a" << arc++ << "\" source=\"p" << p.value << "\" target=\"t" << i << "\"/>\n";
    }
    for (auto p : net.transitions()[i].outputs) {
      out << "      <arc id=\"a" << arc++ << "\" source=\"t" << i << "\" target=\"p" << p.value << "\"/>\n";
    }
  }
  out << "    </page>\n    <finalmarkings>\n      <marking>\n        <place idref=\"p" << net.sink().value
      << "\"><text>1</text></place>\n      </marking>\n    </finalmarkings>\n  </net>\n</pnml>\n";
  return out.str();
}

WorkflowNet import_pnml(std::string_view document) {
  auto root = xml::parse(document);
  if (root->name != "pnml") throw ParseError("PNML root element must be <pnml>", root->line);
  const auto* net_el = root->child("net");
  if (!net_el) throw ParseError("PNML document has no <net>", root->line);

  std::vector<const xml::Element*> place_els, transition_els, arc_els;
  collect(*net_el, place_els, transition_els, arc_els);

  WorkflowNet net;
  std::map<std::string, PlaceId> place_ids;
  std::map<std::string, TransitionId> transition_ids;
  std::optional<PlaceId> marked;
  for (const auto* p : place_els) {
    const std::string id = required_attribute(*p, "id");
    std::string name = trim(text_of(p->child("name")));
    auto pid = net.add_place(name.empty() ? id : name);
    if (!place_ids.emplace(id, pid).second) throw ParseError("duplicate place id '" + id + "'", p->line);
    if (const auto* m = p->child("initialMarking")) {
      const std::string tokens = trim(text_of(m));
      if (!tokens.empty() && tokens != "0") {
        if (tokens != "1") throw ParseError("only 1-token initial markings are supported", m->line);
        if (marked) throw ParseError("more than one initially marked place", m->line);
        marked = pid;
      }
    }
  }
  for (const auto* t : transition_els) {
    const std::string id = required_attribute(*t, "id");
    std::string label = trim(text_of(t->child("name")));
    TransitionKind kind = TransitionKind::Visible;
    std::string name = label.empty() ? id : label;
    std::string sw_source, sw_dest;
    for (const auto* ts : t->children_named("toolspecific")) {
      auto activity = ts->attribute("activity");
      if (activity && *activity == "$invisible$" && kind == TransitionKind::Visible) kind = TransitionKind::Tau;
      auto tool = ts->attribute("tool");
      if (tool && *tool == kTool) {
        auto k = ts->attribute("kind").value_or("tau");
        if (k == "switch") kind = TransitionKind::Switch;
        else if (k == "bridge") kind = TransitionKind::Bridge;
        else if (k == "tau") kind = TransitionKind::Tau;
        else if (k == "visible") kind = TransitionKind::Visible;
        else throw ParseError("unknown transition kind '" + std::string(k) + "'", ts->line);
        if (auto n = ts->attribute("name")) name = std::string(*n);
        sw_source = std::string(ts->attribute("source").value_or(""));
        sw_dest = std::string(ts->attribute("destination").value_or(""));
      }
    }
    if (kind == TransitionKind::Visible && label.empty()) kind = TransitionKind::Tau;
    if (kind != TransitionKind::Visible) label.clear();
    auto tid = net.add_transition(name, label, kind);
    net.transition(tid).switch_source = sw_source;
    net.transition(tid).switch_destination = sw_dest;
    if (!transition_ids.emplace(id, tid).second) throw ParseError("duplicate transition id '" + id + "'", t->line);
  }
  for (const auto* a : arc_els) {
    const std::string src = required_attribute(*a, "source");
    const std::string dst = required_attribute(*a, "target");
    if (const auto* ins = a->child("inscription")) {
      const std::string w = trim(text_of(ins));
      if (!w.empty() && w != "1") throw ParseError("arc weights other than 1 are not supported", ins->line);
    }
    auto sp = place_ids.find(src);
    auto st = transition_ids.find(src);
    auto dp = place_ids.find(dst);
    auto dt = transition_ids.find(dst);
    if (sp != place_ids.end() && dt != transition_ids.end()) {
      net.add_arc(sp->second, dt->second);
    } else if (st != transition_ids.end() && dp != place_ids.end()) {
      net.add_arc(st->second, dp->second);
    } else {
      throw ParseError("arc on line " + std::to_string(a->line) + " does not connect a place and a transition",
                       a->line);
    }
  }

  // Source: the initially marked place, else the unique place without preset.
  // Sink: the final-marking place, else the unique place without postset.
  std::vector<bool> has_pre(net.places().size(), false), has_post(net.places().size(), false);
  for (const auto& t : net.transitions()) {
    for (auto p : t.outputs) has_pre[p.value] = true;
    for (auto p : t.inputs) has_post[p.value] = true;
  }
  auto unique_where = [&](const std::vector<bool>& flags) -> std::optional<PlaceId> {
    std::optional<PlaceId> found;
    for (std::size_t i = 0; i < flags.size(); ++i) {
      if (!flags[i]) {
        if (found) return std::nullopt;
        found = PlaceId{i};
      }
    }
    return found;
  };
  auto source = marked ? marked : unique_where(has_pre);
  if (!source) throw ParseError("cannot determine the source place of the net", net_el->line);
  std::optional<PlaceId> sink;
  if (const auto* fm = net_el->child("finalmarkings")) {
    if (const auto* m = fm->child("marking")) {
      for (const auto* p : m->children_named("place")) {
        if (trim(text_of(p)) == "1") {
          auto it = place_ids.find(std::string(p->attribute("idref").value_or("")));
          if (it != place_ids.end()) sink = it->second;
        }
      }
    }
  }
  if (!sink) sink = unique_where(has_post);
  if (!sink) throw ParseError("cannot determine the sink place of the net", net_el->line);
  net.set_source(*source);
  net.set_sink(*sink);
  return net;
}

std::string export_dot(const WorkflowNet& net) {
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') q += '\\';
      q += c;
    }
    return q + "\"";
  };
  std::ostringstream out;
  out << "digraph net {\n  rankdir=LR;\n";
  for (std::size_t i = 0; i < net.places().size(); ++i) {
    out << "  p" << i << " [shape=circle, label=\"\", xlabel=" << quote(net.places()[i].name);
    if (i == net.source().value) out << ", style=filled, fillcolor=\"#d0f0d0\"";
    if (i == net.sink().value) out << ", shape=doublecircle";
    out << "];\n";
  }
  for (std::size_t i = 0; i < net.transitions().size(); ++i) {
    const auto& t = net.transitions()[i];
    out << "  t" << i << " [shape=box, ";
    if (t.silent()) {
      out << "style=filled, fillcolor=black, height=0.3, width=0.15, label=\"\", tooltip=" << quote(t.name);
    } else {
      out << "label=" << quote(t.label);
    }
    out << "];\n";
  }
  for (std::size_t i = 0; i < net.transitions().size(); ++i) {
    for (auto p : net.transitions()[i].inputs) out << "  p" << p.value << " -> t" << i << ";\n";
    for (auto p : net.transitions()[i].outputs) out << "  t" << i << " -> p" << p.value << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace switchminer
