#pragma once

#include <cstddef>
#include <cstdint>

#include "switchminer/core/eventlog.hpp"
#include "switchminer/core/petrinet.hpp"
#include "switchminer/core/tree.hpp"

namespace switchminer {

enum class PlayoutMode { Exhaustive, Sample };

struct PlayoutConfig {
  PlayoutMode mode = PlayoutMode::Exhaustive;
  std::size_t max_length = 20;      // visible events per trace
  std::size_t n_traces = 100;       // sample mode
  std::uint64_t seed = 0;           // sample mode
  std::size_t loop_unroll_cap = 8;  // sample mode: firings of one transition per trace
  std::size_t state_bound = 1000000;
};

struct PlayoutResult {
  EventLog log;
  bool complete = true;  // false when a cap cut the exhaustive enumeration or sampling gave up
};

PlayoutResult playout(const WorkflowNet& net, const PlayoutConfig& config = {});
PlayoutResult playout(const SwitchProcessTree& tree, const PlayoutConfig& config = {});

// Random tree over fresh labels a1, a2, ... with roughly `size_budget`
// activity leaves. Switches are only kept where validate_switches stays empty.
SwitchProcessTree random_valid_tree(std::uint64_t seed, std::size_t size_budget, double switch_probability);

// X over 2-3 sequences of 2-4 fresh activities, with switches from earlier
// to later branches. Distinct switches never share a source or a destination.
SwitchProcessTree random_xor_of_sequences(std::uint64_t seed, double switch_probability);

}  // namespace switchminer
