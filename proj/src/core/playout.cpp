#include <algorithm>
#include <map>
#include <random>

#include "switchminer/core/error.hpp"
#include "switchminer/core/playout.hpp"

namespace switchminer {

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

bool chance(std::mt19937_64& rng, double p) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

std::optional<Trace> sample_trace(const WorkflowNet& net, const PlayoutConfig& config, std::mt19937_64& rng,
                                  std::size_t index) {
  const Marking goal = final_marking(net);
  Marking m = initial_marking(net);
  Trace trace{"sample" + std::to_string(index + 1), {}};
  std::vector<std::size_t> fired(net.transitions().size(), 0);
  while (m != goal) {
    std::vector<std::size_t> options;
    for (std::size_t t = 0; t < net.transitions().size(); ++t) {
      if (enabled(net, m, TransitionId{t})) options.push_back(t);
    }
    if (options.empty()) return std::nullopt;
    const std::size_t t = options[pick(rng, options.size())];
    if (++fired[t] > config.loop_unroll_cap) return std::nullopt;
    const auto& tr = net.transitions()[t];
    if (!tr.silent()) {
      if (trace.events.size() == config.max_length) return std::nullopt;
      trace.events.emplace_back(tr.label);
    }
    m = fire(net, m, TransitionId{t});
  }
  return trace;
}

class TreeGenerator {
 public:
  explicit TreeGenerator(std::uint64_t seed) : rng_(seed) {}

  SwitchProcessTree make(std::size_t leaves) {
    if (leaves <= 1) return SwitchProcessTree::activity(fresh());
    static constexpr NodeKind kinds[] = {NodeKind::Xor, NodeKind::Sequence, NodeKind::Parallel, NodeKind::Loop};
    const NodeKind kind = kinds[pick(rng_, 4)];
    if (kind == NodeKind::Loop) {
      if (chance(rng_, 0.3)) return SwitchProcessTree::op(kind, {make(leaves - 1), SwitchProcessTree::tau()});
      const std::size_t body = 1 + pick(rng_, leaves - 1);
      return SwitchProcessTree::op(kind, {make(body), make(leaves - body)});
    }
    const std::size_t arity = std::min<std::size_t>(leaves, 2 + pick(rng_, 2));
    std::vector<std::size_t> sizes(arity, 1);
    for (std::size_t extra = leaves - arity; extra > 0; --extra) ++sizes[pick(rng_, arity)];
    std::vector<SwitchProcessTree> kids;
    for (auto s : sizes) kids.push_back(make(s));
    if (kind == NodeKind::Xor && chance(rng_, 0.15)) kids.push_back(SwitchProcessTree::tau());
    return SwitchProcessTree::op(kind, std::move(kids));
  }

  std::mt19937_64& rng() { return rng_; }

  ActivityLabel fresh() { return ActivityLabel("a" + std::to_string(++counter_)); }

 private:
  std::mt19937_64 rng_;
  std::size_t counter_ = 0;
};

}  // namespace

PlayoutResult playout(const WorkflowNet& net, const PlayoutConfig& config) {
  if (config.max_length == 0 && config.mode == PlayoutMode::Sample) throw ConfigError("max_length must be positive");
  if (config.loop_unroll_cap == 0) throw ConfigError("loop_unroll_cap must be positive");
  PlayoutResult result;
  if (config.mode == PlayoutMode::Exhaustive) {
    const auto lang = enumerate_language(net, config.max_length, config.state_bound);
    std::size_t i = 0;
    for (const auto& w : lang.words) {
      Trace t{"trace" + std::to_string(++i), {}};
      for (const auto& s : w) t.events.emplace_back(s);
      result.log.add(std::move(t));
    }
    result.complete = lang.complete;
    return result;
  }
  std::mt19937_64 rng(config.seed);
  const std::size_t attempts_per_trace = 1000;
  for (std::size_t i = 0; i < config.n_traces; ++i) {
    std::optional<Trace> t;
    for (std::size_t a = 0; a < attempts_per_trace && !t; ++a) t = sample_trace(net, config, rng, i);
    if (!t) {
      result.complete = false;
      break;
    }
    result.log.add(std::move(*t));
  }
  return result;
}

PlayoutResult playout(const SwitchProcessTree& tree, const PlayoutConfig& config) {
  return playout(translate(tree), config);
}

SwitchProcessTree random_valid_tree(std::uint64_t seed, std::size_t size_budget, double switch_probability) {
  TreeGenerator gen(seed);
  SwitchProcessTree tree = gen.make(std::max<std::size_t>(1, size_budget));
  const auto labels = tree.labels();
  const std::vector<ActivityLabel> all(labels.begin(), labels.end());
  if (all.size() < 2) return tree;
  for (const auto& a : all) {
    if (!chance(gen.rng(), switch_probability)) continue;
    const auto& b = all[pick(gen.rng(), all.size())];
    if (b == a) continue;
    SwitchProcessTree candidate = tree;
    if (graft_switch(candidate, a, b) && validate_switches(candidate).empty()) tree = std::move(candidate);
  }
  return tree;
}

SwitchProcessTree random_xor_of_sequences(std::uint64_t seed, double switch_probability) {
  TreeGenerator gen(seed);
  auto& rng = gen.rng();
  const std::size_t branches = 2 + pick(rng, 2);
  std::vector<std::vector<ActivityLabel>> seqs(branches);
  for (auto& s : seqs) {
    const std::size_t len = 2 + pick(rng, 3);
    for (std::size_t i = 0; i < len; ++i) s.push_back(gen.fresh());
  }
  std::vector<SwitchProcessTree> kids;
  for (const auto& s : seqs) {
    std::vector<SwitchProcessTree> steps;
    for (const auto& a : s) steps.push_back(SwitchProcessTree::activity(a));
    kids.push_back(SwitchProcessTree::op(NodeKind::Sequence, std::move(steps)));
  }
  SwitchProcessTree tree = SwitchProcessTree::op(NodeKind::Xor, std::move(kids));

  std::set<ActivityLabel> used;
  for (std::size_t i = 0; i + 1 < branches; ++i) {
    for (std::size_t j = i + 1; j < branches; ++j) {
      if (!chance(rng, switch_probability)) continue;
      const auto& a = seqs[i][pick(rng, seqs[i].size())];
      const auto& b = seqs[j][pick(rng, seqs[j].size())];
      if (used.contains(a) || used.contains(b)) continue;
      used.insert(a);
      used.insert(b);
      graft_switch(tree, a, b);
    }
  }
  return tree;
}

}  // namespace switchminer
