#include <gtest/gtest.h>

#include "switchminer/core/conformance.hpp"
#include "switchminer/core/error.hpp"
#include "switchminer/core/playout.hpp"

using namespace switchminer;

namespace {

std::set<Word> words_of(const EventLog& log) {
  std::set<Word> out;
  for (const auto& t : log.traces()) out.insert(to_word(t));
  return out;
}

}  // namespace

TEST(Playout, ExhaustiveRunningExample) {
  const auto r = playout(parse_tree("X(->(A, B=>{E}, C), ->(D, E, F))"), PlayoutConfig{});
  EXPECT_TRUE(r.complete);
  EXPECT_EQ(words_of(r.log), (std::set<Word>{{"A", "B", "C"}, {"D", "E", "F"}, {"A", "B", "E", "F"}}));
  EXPECT_EQ(r.log.size(), 3u);
}

TEST(Playout, ExhaustiveSmallCases) {
  EXPECT_EQ(words_of(playout(parse_tree("a")).log), (std::set<Word>{{"a"}}));
  PlayoutConfig c;
  c.max_length = 5;
  EXPECT_EQ(words_of(playout(parse_tree("loop(a, b)"), c).log),
            (std::set<Word>{{"a"}, {"a", "b", "a"}, {"a", "b", "a", "b", "a"}}));
}

TEST(Playout, SampleIsSeedDeterministicAndFitting) {
  const auto tree = parse_tree("->(a, loop(b, c), /\\(d, e))");
  PlayoutConfig c;
  c.mode = PlayoutMode::Sample;
  c.n_traces = 50;
  c.seed = 7;
  const auto one = playout(tree, c);
  const auto two = playout(tree, c);
  EXPECT_TRUE(one.complete);
  EXPECT_EQ(one.log.size(), 50u);
  EXPECT_EQ(one.log, two.log);
  EXPECT_DOUBLE_EQ(fitness(one.log, translate(tree)), 1.0);
  c.seed = 8;
  EXPECT_NE(playout(tree, c).log, one.log);
}

TEST(Playout, InvalidConfig) {
  PlayoutConfig c;
  c.loop_unroll_cap = 0;
  EXPECT_THROW(playout(parse_tree("a"), c), ConfigError);
}

TEST(Playout, RandomTreesAreValidAndDeterministic) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto t = random_valid_tree(seed, 10, 0.4);
    EXPECT_TRUE(validate_switches(t).empty());
    EXPECT_EQ(t, random_valid_tree(seed, 10, 0.4));
  }
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_TRUE(random_valid_tree(seed, 10, 0.0).switches().empty());
  }
}

TEST(Playout, XorOfSequencesShape) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto t = random_xor_of_sequences(seed, 0.7);
    EXPECT_EQ(t.kind(), NodeKind::Xor);
    EXPECT_TRUE(validate_switches(t).empty());
    for (const auto& c : t.children()) EXPECT_EQ(c.kind(), NodeKind::Sequence);
  }
}
