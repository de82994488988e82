#include <gtest/gtest.h>

#include "oracles.hpp"
#include "switchminer/core/discovery.hpp"
#include "switchminer/core/error.hpp"
#include "switchminer/core/conformance.hpp"
#include "switchminer/core/petrinet.hpp"
#include "switchminer/core/playout.hpp"

using namespace switchminer;

namespace {

EventLog log_of(const std::vector<std::vector<std::string>>& s) { return EventLog::from_sequences(s); }

EventLog running_example() { return log_of({{"A", "B", "C"}, {"D", "E", "F"}, {"A", "B", "E", "F"}}); }

bool switch_under_loop(const SwitchProcessTree& t, bool in_loop = false) {
  if (t.kind() == NodeKind::Switch) return in_loop;
  for (const auto& c : t.children()) {
    if (switch_under_loop(c, in_loop || t.kind() == NodeKind::Loop)) return true;
  }
  return false;
}

std::string canon(const SwitchProcessTree& t) { return render_tree(oracle::canonical(t)); }

std::set<Word> words_of(const EventLog& log) {
  std::set<Word> out;
  for (const auto& t : log.traces()) out.insert(to_word(t));
  return out;
}

}  // namespace

TEST(Discovery, BaseCases) {
  EXPECT_EQ(render_tree(*base_case(EventLog{})), "tau");
  EXPECT_EQ(render_tree(*base_case(log_of({{}, {}}))), "tau");
  EXPECT_EQ(render_tree(*base_case(log_of({{"a"}, {"a"}}))), "a");
  EXPECT_EQ(render_tree(*base_case(log_of({{"a"}, {}}))), "X(a, tau)");
  EXPECT_EQ(render_tree(*base_case(log_of({{"a", "a"}, {"a"}}))), "loop(a, tau)");
  EXPECT_EQ(render_tree(*base_case(log_of({{"a", "a"}, {}}))), "X(loop(a, tau), tau)");
  EXPECT_FALSE(base_case(log_of({{"a", "b"}})));
}

TEST(Discovery, StandardCuts) {
  const auto seq = build_dfg(log_of({{"a", "b", "c"}, {"a", "c", "b"}}));
  const auto s = sequence_cut(seq);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->partitions.size(), 2u);
  EXPECT_EQ(s->partitions[0], (std::set<ActivityLabel>{"a"}));

  const auto conc = concurrent_cut(build_dfg(log_of({{"b", "c"}, {"c", "b"}})));
  ASSERT_TRUE(conc);
  EXPECT_EQ(conc->op, CutOperator::Parallel);

  const auto loop = loop_cut(build_dfg(log_of({{"a"}, {"a", "b", "a"}})));
  ASSERT_TRUE(loop);
  EXPECT_EQ(loop->partitions[0], (std::set<ActivityLabel>{"a"}));
  EXPECT_EQ(loop->partitions[1], (std::set<ActivityLabel>{"b"}));

  const auto x = xor_cut(build_dfg(log_of({{"a", "b"}, {"c"}})));
  ASSERT_TRUE(x);
  EXPECT_EQ(x->partitions.size(), 2u);
  EXPECT_FALSE(xor_cut(build_dfg(log_of({{"a", "b"}}))));
}

TEST(Discovery, SwitchCutOnRunningExample) {
  const auto cut = switch_exclusive_choice_cut(running_example());
  ASSERT_TRUE(cut);
  EXPECT_TRUE(cut->from_switch_cut);
  EXPECT_EQ(cut->partitions, (std::vector<std::set<ActivityLabel>>{{"A", "B", "C"}, {"D", "E", "F"}}));
  EXPECT_EQ(cut->switches, (std::set<LabelPair>{{"B", "E"}}));
}

TEST(Discovery, SplitWithAndWithoutDeletion) {
  const auto cut = *switch_exclusive_choice_cut(running_example());
  DiscoveryConfig del;
  del.delete_switch_traces = true;
  const auto on = split_log(running_example(), cut, del);
  EXPECT_EQ(on[0], log_of({{"A", "B", "C"}}));
  EXPECT_EQ(on[1], log_of({{"D", "E", "F"}}));
  const auto off = split_log(running_example(), cut, {});
  EXPECT_EQ(off[0], log_of({{"A", "B", "C"}, {"A", "B"}}));
  EXPECT_EQ(off[1], log_of({{"D", "E", "F"}}));
  EXPECT_TRUE(verify_switch_cut(running_example(), on));
}

TEST(Discovery, LoopSplitInsertsEmptyBodies) {
  Cut cut{CutOperator::Loop, {{"a"}, {"b"}}, {}, false};
  const auto subs = split_log(log_of({{"a", "b", "a"}, {"b", "a"}}), cut);
  EXPECT_EQ(subs[0], log_of({{"a"}, {"a"}, {}, {"a"}}));
  EXPECT_EQ(subs[1], log_of({{"b"}, {"b"}}));
}

TEST(Discovery, VerificationDetectsActivityLoss) {
  // X only appears in a switch trace; deleting it loses the label.
  const auto log = log_of({{"A", "B"}, {"C", "D"}, {"A", "X", "D"}});
  Cut cut{CutOperator::Xor, {{"A", "B", "X"}, {"C", "D"}}, {{"X", "D"}}, true};
  DiscoveryConfig del;
  del.delete_switch_traces = true;
  const auto subs = split_log(log, cut, del);
  EXPECT_FALSE(verify_switch_cut(log, subs));
}

TEST(Discovery, RunningExampleTrees) {
  DiscoveryConfig del;
  del.delete_switch_traces = true;
  EXPECT_EQ(canon(discover(running_example(), del)), "X(->(A, B=>{E}, C), ->(D, E, F))");
  const auto off = discover(running_example());
  EXPECT_EQ(enumerate_language(translate(off), 10).words,
            (std::set<Word>{{"A", "B", "C"}, {"D", "E", "F"}, {"A", "B", "E", "F"}, {"A", "B"}}));
}

TEST(Discovery, SwitchCutDisabledGivesPlainMiner) {
  DiscoveryConfig plain;
  plain.enable_switch_cut = false;
  EXPECT_EQ(render_tree(discover(running_example(), plain)), "loop(tau, A, B, C, D, E, F)");
  EXPECT_EQ(render_tree(discover(log_of({{"a", "b"}, {"c"}}), plain)), "X(->(a, b), c)");
}

TEST(Discovery, EmptyTracesBecomeSkip) {
  EXPECT_EQ(render_tree(discover(log_of({{"a", "b"}, {}}))), "X(->(a, b), tau)");
}

TEST(Discovery, ReportRecordsDecisions) {
  DiscoveryReport report;
  DiscoveryConfig del;
  del.delete_switch_traces = true;
  discover(running_example(), del, &report);
  ASSERT_FALSE(report.steps.empty());
  EXPECT_EQ(report.steps.front().decision, "switch-xor");
  EXPECT_EQ(report.steps.front().depth, 0u);
  EXPECT_EQ(report.switches_pruned, 0u);
}

TEST(Discovery, ConfigValidation) {
  DiscoveryConfig bad;
  bad.noise_threshold = 1.5;
  EXPECT_THROW(discover(running_example(), bad), ConfigError);
  DiscoveryConfig guard;
  guard.max_recursion_guard = 0;
  EXPECT_THROW(discover(running_example(), guard), ConfigError);
}

TEST(Discovery, NoiseFilterDropsRareEdges) {
  std::vector<std::vector<std::string>> s(20, {"a", "b"});
  s.push_back({"a", "c"});
  const auto dfg = build_dfg(log_of(s));
  const auto f = apply_noise_filter(dfg, 0.2);
  EXPECT_TRUE(f.has_edge("a", "b"));
  EXPECT_FALSE(f.has_edge("a", "c"));
  EXPECT_EQ(apply_noise_filter(dfg, 0.0).edges, dfg.edges);
}

TEST(Discovery, DiscoveredModelsAreSound) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto log = EventLog::from_sequences(seed % 2 ? oracle::random_log(seed, 5, 8, 5)
                                                       : oracle::random_spliced_log(seed, 7, 10));
    const auto tree = discover(log);
    EXPECT_TRUE(validate_switches(tree).empty());
    EXPECT_TRUE(check_soundness(translate(tree)).is_sound) << render_tree(tree);
  }
}

TEST(Discovery, PerfectFitnessOnGeneratedLogs) {
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto source = random_valid_tree(seed, 3 + seed % 8, 0.4);
    if (switch_under_loop(source)) continue;
    PlayoutConfig pc;
    pc.mode = PlayoutMode::Sample;
    pc.n_traces = 40;
    pc.seed = seed;
    pc.max_length = 30;
    const auto log = playout(source, pc).log;
    DiscoveryReport report;
    const auto tree = discover(log, {}, &report);
    if (report.switches_pruned > 0) continue;
    ++checked;
    EXPECT_DOUBLE_EQ(fitness(log, translate(tree)), 1.0)
        << "seed " << seed << " source " << render_tree(source) << " found " << render_tree(tree);
  }
  EXPECT_GT(checked, 150u);
}

TEST(Discovery, SwitchInsideLoopCanLoseFitnessWithoutDeletion) {
  // Repeated redo iterations mix both branches inside one segment; the
  // majority split hands the whole segment to one side.
  const auto source = random_valid_tree(9, 4, 0.4);
  ASSERT_TRUE(switch_under_loop(source));
  PlayoutConfig pc;
  pc.mode = PlayoutMode::Sample;
  pc.n_traces = 40;
  pc.seed = 9;
  pc.max_length = 30;
  const auto log = playout(source, pc).log;
  DiscoveryReport report;
  const auto tree = discover(log, {}, &report);
  EXPECT_EQ(report.switches_pruned, 0u);
  EXPECT_LT(fitness(log, translate(tree)), 1.0);
}
