#include <gtest/gtest.h>

#include "switchminer/core/error.hpp"
#include "switchminer/core/tree.hpp"

using namespace switchminer;

namespace {

const char* kRunningTree = "X(->(A, B=>{E}, C), ->(D, E, F))";

}

TEST(Tree, ParseRenderRoundTrip) {
  for (const char* text : {kRunningTree, "loop(a, tau, b)", "/\\(a, X(b, tau))", "A=>{B,C}", "tau",
                           R"(->("tau", "with space", "q\"uote"))"}) {
    EXPECT_EQ(render_tree(parse_tree(text)), text);
  }
}

TEST(Tree, ParseErrorsCarryOffset) {
  try {
    parse_tree("X(A, B");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.location(), 6u);
  }
  EXPECT_THROW(parse_tree("X(A)"), ParseError);
  EXPECT_THROW(parse_tree("A=>{}"), ParseError);
  EXPECT_THROW(parse_tree("A B"), ParseError);
}

TEST(Tree, Queries) {
  const auto t = parse_tree(kRunningTree);
  EXPECT_EQ(t.labels(), (std::set<ActivityLabel>{"A", "B", "C", "D", "E", "F"}));
  EXPECT_EQ(t.switches(), (std::vector<LabelPair>{{"B", "E"}}));
  EXPECT_EQ(t.node_count(), 9u);
  EXPECT_EQ(find_leaf(t, "E"), (NodePath{1, 1}));
  EXPECT_EQ(t.at({0, 1}).kind(), NodeKind::Switch);
  EXPECT_THROW(t.at({5}), ConfigError);
  EXPECT_EQ(first_ancestor(t, {0, 1}, NodeKind::Xor), NodePath{});
  EXPECT_FALSE(first_ancestor(t, {0, 1}, NodeKind::Parallel));
  EXPECT_EQ(path_between(t, {}, {1, 1}), (std::vector<NodePath>{{1}}));
  EXPECT_TRUE(path_between(t, {0}, {1, 1}).empty());
  EXPECT_EQ(render_tree(t.without_switches()), "X(->(A, B, C), ->(D, E, F))");
}

TEST(Tree, ValidSwitchHasNoViolations) { EXPECT_TRUE(validate_switches(parse_tree(kRunningTree)).empty()); }

TEST(Tree, SwitchWithinOneBranchViolatesCrossBranchRule) {
  const auto v = validate_switches(parse_tree("->(A=>{B}, B)"));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].rule, ConstraintRule::CrossBranch);
  const auto missing = validate_switches(parse_tree("X(A=>{Q}, B)"));
  ASSERT_EQ(missing.size(), 1u);
  EXPECT_EQ(missing[0].rule, ConstraintRule::CrossBranch);
}

TEST(Tree, SwitchOutOfParallelBranchViolatesParallelRule) {
  const auto v = validate_switches(parse_tree("X(/\\(A=>{D}, B), ->(D, E))"));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].rule, ConstraintRule::Parallel);
  const auto into = validate_switches(parse_tree("X(->(A=>{D}, B), /\\(D, E))"));
  ASSERT_EQ(into.size(), 1u);
  EXPECT_EQ(into[0].rule, ConstraintRule::Parallel);
  // Both ends inside the same parallel branch, X below the /\: allowed.
  EXPECT_TRUE(validate_switches(parse_tree("/\\(X(->(A=>{D}, B), ->(D, E)), F)")).empty());
}

TEST(Tree, PruneRemovesOnlyViolations) {
  const auto t = parse_tree("X(->(A=>{B,D}, B), ->(D, E))");
  const auto pruned = prune_invalid_switches(t);
  EXPECT_EQ(render_tree(pruned), "X(->(A=>{D}, B), ->(D, E))");
  EXPECT_EQ(prune_invalid_switches(pruned), pruned);
  EXPECT_EQ(render_tree(prune_invalid_switches(parse_tree("->(A=>{B}, B)"))), "->(A, B)");
}

TEST(Tree, GraftSwitch) {
  auto t = parse_tree("X(->(A, B), ->(C, D))");
  EXPECT_TRUE(graft_switch(t, "A", "D"));
  EXPECT_TRUE(graft_switch(t, "A", "C"));
  EXPECT_FALSE(graft_switch(t, "A", "Z"));
  EXPECT_FALSE(graft_switch(t, "A", "A"));
  EXPECT_EQ(render_tree(t), "X(->(A=>{C,D}, B), ->(C, D))");
}

TEST(Tree, FactoryPreconditions) {
  EXPECT_THROW(SwitchProcessTree::switch_leaf("A", {}), ConstraintError);
  EXPECT_THROW(SwitchProcessTree::switch_leaf("A", {"A"}), ConstraintError);
  EXPECT_THROW(SwitchProcessTree::op(NodeKind::Xor, {SwitchProcessTree::tau()}), ConstraintError);
}

TEST(Tree, DotMentionsEveryLabel) {
  const auto dot = tree_to_dot(parse_tree(kRunningTree));
  for (const char* l : {"A", "B", "C", "D", "E", "F"}) EXPECT_NE(dot.find(l), std::string::npos);
}
