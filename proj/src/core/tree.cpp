#include "switchminer/core/tree.hpp"

#include <algorithm>
#include <sstream>

#include "switchminer/core/error.hpp"

namespace switchminer {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Xor: return "X";
    case NodeKind::Sequence: return "->";
    case NodeKind::Parallel: return "/\\";
    case NodeKind::Loop: return "loop";
    case NodeKind::Activity: return "activity";
    case NodeKind::Tau: return "tau";
    case NodeKind::Switch: return "switch";
  }
  return "?";
}

class TreeEditor {
 public:
  static SwitchProcessTree& at(SwitchProcessTree& tree, const NodePath& path) {
    SwitchProcessTree* node = &tree;
    for (auto i : path) node = &node->children_.at(i);
    return *node;
  }
  static void set_destinations(SwitchProcessTree& node, std::set<ActivityLabel> destinations) {
    node.destinations_ = std::move(destinations);
    node.kind_ = node.destinations_.empty() ? NodeKind::Activity : NodeKind::Switch;
  }
};

SwitchProcessTree SwitchProcessTree::activity(ActivityLabel label) {
  SwitchProcessTree t;
  t.kind_ = NodeKind::Activity;
  t.label_ = std::move(label);
  return t;
}

SwitchProcessTree SwitchProcessTree::tau() {
  SwitchProcessTree t;
  t.kind_ = NodeKind::Tau;
  return t;
}

SwitchProcessTree SwitchProcessTree::switch_leaf(ActivityLabel source, std::set<ActivityLabel> destinations) {
  if (destinations.empty()) throw ConstraintError("switch leaf " + source.display() + " needs a destination");
  if (destinations.contains(source)) {
    throw ConstraintError("switch leaf " + source.display() + " lists itself as destination");
  }
  SwitchProcessTree t;
  t.kind_ = NodeKind::Switch;
  t.label_ = std::move(source);
  t.destinations_ = std::move(destinations);
  return t;
}

SwitchProcessTree SwitchProcessTree::op(NodeKind kind, std::vector<SwitchProcessTree> children) {
  SwitchProcessTree t;
  t.kind_ = kind;
  if (!t.is_operator()) throw ConstraintError("op() needs an operator kind");
  if (children.size() < 2) {
    throw ConstraintError(std::string(to_string(kind)) + " needs at least two children");
  }
  t.children_ = std::move(children);
  return t;
}

bool SwitchProcessTree::is_operator() const noexcept {
  return kind_ == NodeKind::Xor || kind_ == NodeKind::Sequence || kind_ == NodeKind::Parallel ||
         kind_ == NodeKind::Loop;
}

const SwitchProcessTree& SwitchProcessTree::at(const NodePath& path) const {
  const SwitchProcessTree* node = this;
  for (auto i : path) {
    if (i >= node->children_.size()) throw ConfigError("node path does not address a node of the tree");
    node = &node->children_[i];
  }
  return *node;
}

bool SwitchProcessTree::contains(const NodePath& path) const {
  const SwitchProcessTree* node = this;
  for (auto i : path) {
    if (i >= node->children_.size()) return false;
    node = &node->children_[i];
  }
  return true;
}

std::set<ActivityLabel> SwitchProcessTree::labels() const {
  std::set<ActivityLabel> out;
  if (has_label()) out.insert(label_);
  for (const auto& c : children_) out.merge(c.labels());
  return out;
}

std::vector<LabelPair> SwitchProcessTree::switches() const {
  std::vector<LabelPair> out;
  if (kind_ == NodeKind::Switch) {
    for (const auto& d : destinations_) out.emplace_back(label_, d);
  }
  for (const auto& c : children_) {
    auto sub = c.switches();
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

std::size_t SwitchProcessTree::node_count() const {
  std::size_t n = 1;
  for (const auto& c : children_) n += c.node_count();
  return n;
}

SwitchProcessTree SwitchProcessTree::without_switches() const {
  if (kind_ == NodeKind::Switch) return activity(label_);
  SwitchProcessTree copy = *this;
  for (auto& c : copy.children_) c = c.without_switches();
  return copy;
}

// ---------------------------------------------------------------------------

namespace {

NodePath prefix(const NodePath& p, std::size_t len) { return NodePath(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(len)); }

bool is_proper_prefix(const NodePath& a, const NodePath& b) {
  return a.size() < b.size() && std::equal(a.begin(), a.end(), b.begin());
}

NodePath common_prefix(const NodePath& a, const NodePath& b) {
  std::size_t n = 0;
  while (n < a.size() && n < b.size() && a[n] == b[n]) ++n;
  return prefix(a, n);
}

void collect_leaves(const SwitchProcessTree& node, NodePath& path,
                    std::vector<std::pair<NodePath, const SwitchProcessTree*>>& out) {
  if (node.has_label()) out.emplace_back(path, &node);
  for (std::size_t i = 0; i < node.children().size(); ++i) {
    path.push_back(i);
    collect_leaves(node.children()[i], path, out);
    path.pop_back();
  }
}

}  // namespace

std::optional<NodePath> first_ancestor(const SwitchProcessTree& tree, const NodePath& node, NodeKind kind) {
  if (!tree.contains(node)) throw ConfigError("first_ancestor: node is not part of the tree");
  for (std::size_t len = node.size(); len-- > 0;) {
    NodePath p = prefix(node, len);
    if (tree.at(p).kind() == kind) return p;
  }
  return std::nullopt;
}

std::vector<NodePath> path_between(const SwitchProcessTree& tree, const NodePath& from, const NodePath& to) {
  std::vector<NodePath> out;
  if (!tree.contains(from) || !tree.contains(to) || !is_proper_prefix(from, to)) return out;
  for (std::size_t len = from.size() + 1; len < to.size(); ++len) out.push_back(prefix(to, len));
  return out;
}

std::optional<NodePath> find_leaf(const SwitchProcessTree& tree, const ActivityLabel& label) {
  if (tree.has_label() && tree.label() == label) return NodePath{};
  for (std::size_t i = 0; i < tree.children().size(); ++i) {
    if (auto sub = find_leaf(tree.children()[i], label)) {
      sub->insert(sub->begin(), i);
      return sub;
    }
  }
  return std::nullopt;
}

std::vector<ConstraintViolation> validate_switches(const SwitchProcessTree& tree) {
  std::vector<std::pair<NodePath, const SwitchProcessTree*>> leaves;
  NodePath scratch;
  collect_leaves(tree, scratch, leaves);
  std::map<ActivityLabel, NodePath> leaf_of;
  for (const auto& [path, node] : leaves) leaf_of.try_emplace(node->label(), path);

  std::vector<ConstraintViolation> out;
  for (const auto& [spath, snode] : leaves) {
    if (snode->kind() != NodeKind::Switch) continue;
    for (const auto& dest : snode->destinations()) {
      auto violation = [&](ConstraintRule rule, std::string detail) {
        out.push_back({spath, snode->label(), dest, rule, std::move(detail)});
      };
      auto it = leaf_of.find(dest);
      if (it == leaf_of.end()) {
        violation(ConstraintRule::CrossBranch, "destination " + dest.display() + " has no leaf in the tree");
        continue;
      }
      const NodePath& dpath = it->second;
      const NodePath lca = common_prefix(spath, dpath);
      if (lca == spath || lca == dpath || tree.at(lca).kind() != NodeKind::Xor) {
        violation(ConstraintRule::CrossBranch, snode->label().display() + " and " + dest.display() +
                                                   " are not on different branches of an exclusive choice");
        continue;
      }
      bool crosses_parallel = first_ancestor(tree, spath, NodeKind::Parallel) !=
                              first_ancestor(tree, dpath, NodeKind::Parallel);
      for (const auto* side : {&spath, &dpath}) {
        for (const auto& p : path_between(tree, lca, *side)) {
          if (tree.at(p).kind() == NodeKind::Parallel) crosses_parallel = true;
        }
      }
      if (crosses_parallel) {
        violation(ConstraintRule::Parallel,
                  "switch " + snode->label().display() + "=>" + dest.display() + " leaves a parallel branch");
      }
    }
  }
  return out;
}

SwitchProcessTree prune_invalid_switches(const SwitchProcessTree& tree) {
  SwitchProcessTree out = tree;
  std::map<NodePath, std::set<ActivityLabel>> drop;
  for (const auto& v : validate_switches(tree)) drop[v.switch_leaf].insert(v.destination);
  for (const auto& [path, dests] : drop) {
    auto& node = TreeEditor::at(out, path);
    std::set<ActivityLabel> keep;
    for (const auto& d : node.destinations()) {
      if (!dests.contains(d)) keep.insert(d);
    }
    TreeEditor::set_destinations(node, std::move(keep));
  }
  return out;
}

bool graft_switch(SwitchProcessTree& tree, const ActivityLabel& source, const ActivityLabel& destination) {
  if (source == destination) return false;
  auto spath = find_leaf(tree, source);
  if (!spath || !find_leaf(tree, destination)) return false;
  auto& node = TreeEditor::at(tree, *spath);
  auto dests = node.destinations();
  dests.insert(destination);
  TreeEditor::set_destinations(node, std::move(dests));
  return true;
}

// ---------------------------------------------------------------------------
// Text grammar

namespace {

bool is_bare_char(char c) {
  if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9')) return true;
  switch (c) {
    case '_': case '.': case ':': case '+': case '@': case '#': case '$': case '%':
    case '&': case '*': case '!': case '?': case '~': case '^': case '\'': case '-':
      return true;
    default:
      return static_cast<unsigned char>(c) >= 0x80;  // UTF-8 continuation/lead bytes
  }
}

bool needs_quotes(const std::string& s) {
  if (s.empty() || s == "tau" || s == "X" || s == "loop") return true;
  if (s.size() >= 2 && s[0] == '-' && s[1] == '>') return true;
  return !std::all_of(s.begin(), s.end(), is_bare_char);
}

void render_label(std::ostream& out, const ActivityLabel& label) {
  const std::string& s = label.text;
  if (!needs_quotes(s)) {
    out << s;
    return;
  }
  out << '"';
  for (char c : s) {
    if (c == '"' || c == '\\') out << '\\';
    out << c;
  }
  out << '"';
}

void render(std::ostream& out, const SwitchProcessTree& t) {
  switch (t.kind()) {
    case NodeKind::Tau: out << "tau"; return;
    case NodeKind::Activity: render_label(out, t.label()); return;
    case NodeKind::Switch: {
      render_label(out, t.label());
      out << "=>{";
      bool first = true;
      for (const auto& d : t.destinations()) {
        if (!first) out << ",";
        first = false;
        render_label(out, d);
      }
      out << "}";
      return;
    }
    default: break;
  }
  out << to_string(t.kind()) << "(";
  for (std::size_t i = 0; i < t.children().size(); ++i) {
    if (i) out << ", ";
    render(out, t.children()[i]);
  }
  out << ")";
}

class TreeParser {
 public:
  explicit TreeParser(std::string_view text) : s_(text) {}

  SwitchProcessTree parse() {
    auto t = node();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("tree parse error at offset " + std::to_string(pos_) + ": " + msg, pos_);
  }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r')) ++pos_;
  }

  bool consume(std::string_view token) {
    if (s_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool peek_open_paren_after_ws() {
    std::size_t p = pos_;
    while (p < s_.size() && s_[p] == ' ') ++p;
    return p < s_.size() && s_[p] == '(';
  }

  SwitchProcessTree operator_node(NodeKind kind) {
    expect('(');
    std::vector<SwitchProcessTree> children;
    children.push_back(node());
    skip_ws();
    while (pos_ < s_.size() && s_[pos_] == ',') {
      ++pos_;
      children.push_back(node());
      skip_ws();
    }
    expect(')');
    if (children.size() < 2) fail(std::string(to_string(kind)) + " needs at least two children");
    return SwitchProcessTree::op(kind, std::move(children));
  }

  // Returns the label and whether it was quoted.
  std::pair<std::string, bool> label() {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '"') {
      ++pos_;
      std::string out;
      while (true) {
        if (pos_ >= s_.size()) fail("unterminated quoted label");
        char c = s_[pos_++];
        if (c == '"') break;
        if (c == '\\') {
          if (pos_ >= s_.size()) fail("dangling escape in label");
          c = s_[pos_++];
        }
        out += c;
      }
      return {out, true};
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() && is_bare_char(s_[pos_])) {
      if (s_[pos_] == '-' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '>' && pos_ == start) break;
      ++pos_;
    }
    if (pos_ == start) fail("expected a node");
    return {std::string(s_.substr(start, pos_ - start)), false};
  }

  SwitchProcessTree node() {
    skip_ws();
    if (consume("->")) return operator_node(NodeKind::Sequence);
    if (consume("/\\")) return operator_node(NodeKind::Parallel);
    auto [text, quoted] = label();
    if (!quoted) {
      if (text == "X" && peek_open_paren_after_ws()) return operator_node(NodeKind::Xor);
      if (text == "loop" && peek_open_paren_after_ws()) return operator_node(NodeKind::Loop);
      if (text == "tau") return SwitchProcessTree::tau();
    }
    skip_ws();
    if (consume("=>")) {
      expect('{');
      std::set<ActivityLabel> dests;
      dests.insert(ActivityLabel(label().first));
      skip_ws();
      while (pos_ < s_.size() && s_[pos_] == ',') {
        ++pos_;
        dests.insert(ActivityLabel(label().first));
        skip_ws();
      }
      expect('}');
      if (dests.contains(ActivityLabel(text))) fail("switch leaf lists its own source as destination");
      return SwitchProcessTree::switch_leaf(ActivityLabel(text), std::move(dests));
    }
    return SwitchProcessTree::activity(ActivityLabel(text));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string render_tree(const SwitchProcessTree& tree) {
  std::ostringstream out;
  render(out, tree);
  return out.str();
}

SwitchProcessTree parse_tree(std::string_view text) { return TreeParser(text).parse(); }

std::string tree_to_dot(const SwitchProcessTree& tree) {
  std::ostringstream out;
  out << "digraph tree {\n  node [shape=box];\n";
  std::size_t next = 0;
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') q += '\\';
      q += c;
    }
    return q + "\"";
  };
  auto visit = [&](auto&& self, const SwitchProcessTree& t) -> std::size_t {
    const std::size_t id = next++;
    std::string text;
    switch (t.kind()) {
      case NodeKind::Activity: text = t.label().display(); break;
      case NodeKind::Switch: text = render_tree(t); break;
      case NodeKind::Tau: text = "tau"; break;
      default: text = std::string(to_string(t.kind())); break;
    }
    out << "  n" << id << " [label=" << quote(text);
    if (t.is_operator()) out << ", shape=circle";
    out << "];\n";
    for (const auto& c : t.children()) {
      const std::size_t cid = self(self, c);
      out << "  n" << id << " -> n" << cid << ";\n";
    }
    return id;
  };
  visit(visit, tree);
  out << "}\n";
  return out.str();
}

}  // namespace switchminer
