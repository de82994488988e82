#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>

#include "switchminer/core/eventlog.hpp"
#include "switchminer/core/petrinet.hpp"

namespace switchminer {

struct ConformanceOptions {
  std::size_t alignment_state_bound = 500000;  // per distinct trace
  std::size_t precision_state_bound = 1000000;
};

struct Alignment {
  std::size_t cost = 0;
  std::vector<TransitionId> model_steps;  // sync, silent and model-only moves in order
};

// Optimal alignment of `trace` against the net, or nullopt when the search
// bound was hit or no complete run exists.
std::optional<Alignment> align(const WorkflowNet& net, const Word& trace,
                               std::size_t state_bound = 500000);

struct ConformanceReport {
  double fitness = 0.0;
  double precision = 0.0;
  double f_score = 0.0;
  std::size_t size = 0;
  std::size_t cfc = 0;
  std::map<Word, std::size_t> per_trace_costs;  // aligned distinct traces only
  std::size_t unaligned_traces = 0;              // distinct traces skipped
};

double fitness(const EventLog& log, const WorkflowNet& net, const ConformanceOptions& options = {});
double precision(const EventLog& log, const WorkflowNet& net, const ConformanceOptions& options = {});
double f_score(double fitness, double precision);

struct Complexity {
  std::size_t size = 0;
  std::size_t cfc = 0;
};

Complexity complexity(const WorkflowNet& net);

ConformanceReport evaluate(const EventLog& log, const WorkflowNet& net, const ConformanceOptions& options = {});

std::string report_to_json(const ConformanceReport& report);

Word to_word(const Trace& trace);

}  // namespace switchminer
