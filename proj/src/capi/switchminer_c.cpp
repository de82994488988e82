#include "switchminer/switchminer.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "switchminer/core/conformance.hpp"
#include "switchminer/core/discovery.hpp"
#include "switchminer/core/error.hpp"
#include "switchminer/core/eventlog.hpp"
#include "switchminer/core/petrinet.hpp"
#include "switchminer/core/playout.hpp"
#include "switchminer/core/tree.hpp"

namespace sm = switchminer;

struct sm_log {
  sm::EventLog log;
  std::size_t skipped = 0;
};
struct sm_tree {
  sm::SwitchProcessTree tree;
};
struct sm_net {
  sm::WorkflowNet net;
};
struct sm_soundness {
  sm::SoundnessReport report;
  std::vector<std::string> dead_names;
};
struct sm_report {
  sm::ConformanceReport report;
};

namespace {

thread_local std::string last_error;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

sm_status fail(sm_status status, const char* message) {
  last_error = message;
  return status;
}

template <typename F>
sm_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return SM_OK;
  } catch (const IoError& e) {
    return fail(SM_IO, e.what());
  } catch (const sm::ParseError& e) {
    return fail(SM_PARSE, e.what());
  } catch (const sm::ConfigError& e) {
    return fail(SM_CONFIG, e.what());
  } catch (const sm::ConstraintError& e) {
    return fail(SM_CONSTRAINT, e.what());
  } catch (const sm::InternalError& e) {
    return fail(SM_INTERNAL, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SM_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SM_INTERNAL, e.what());
  }
}

std::string read_file(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(std::string("cannot open ") + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const char* path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(std::string("cannot write ") + path);
  out << data;
  if (!out) throw IoError(std::string("write failed: ") + path);
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

sm::Classifier classifier_of(sm_classifier c) {
  return c == SM_CLASSIFIER_NAME_LIFECYCLE ? sm::Classifier::NamePlusLifecycle : sm::Classifier::Name;
}

}  // namespace

#define SM_REQUIRE(cond)                                                      \
  do {                                                                        \
    if (!(cond)) return fail(SM_INVALID_ARGUMENT, "invalid argument: " #cond); \
  } while (0)

extern "C" {

const char* sm_version(void) { return "0.3.0"; }

const char* sm_last_error_message(void) { return last_error.c_str(); }

const char* sm_status_name(sm_status status) {
  switch (status) {
    case SM_OK: return "ok";
    case SM_INVALID_ARGUMENT: return "invalid argument";
    case SM_IO: return "io error";
    case SM_PARSE: return "parse error";
    case SM_CONFIG: return "configuration error";
    case SM_CONSTRAINT: return "constraint violation";
    case SM_INTERNAL: return "internal error";
  }
  return "unknown";
}

void sm_string_free(char* s) { std::free(s); }

sm_status sm_log_load_xes(const char* path, sm_classifier classifier, sm_log** out) {
  SM_REQUIRE(path && out);
  return guarded([&] {
    auto parsed = sm::parse_xes(read_file(path), classifier_of(classifier));
    *out = new sm_log{std::move(parsed.log), parsed.skipped_events};
  });
}

sm_status sm_log_parse_xes(const char* data, size_t size, sm_classifier classifier, sm_log** out) {
  SM_REQUIRE(data && out);
  return guarded([&] {
    auto parsed = sm::parse_xes(std::string_view(data, size), classifier_of(classifier));
    *out = new sm_log{std::move(parsed.log), parsed.skipped_events};
  });
}

sm_status sm_log_load_csv(const char* path, const char* case_column, const char* activity_column,
                          const char* timestamp_column, char delimiter, sm_log** out) {
  SM_REQUIRE(path && case_column && activity_column && out);
  return guarded([&] {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(std::string("cannot open ") + path);
    sm::CsvColumns cols;
    cols.case_column = case_column;
    cols.activity_column = activity_column;
    if (timestamp_column) cols.timestamp_column = timestamp_column;
    cols.delimiter = delimiter;
    *out = new sm_log{sm::parse_csv(in, cols), 0};
  });
}

sm_status sm_log_save_xes(const sm_log* log, const char* path) {
  SM_REQUIRE(log && path);
  return guarded([&] { write_file(path, sm::write_xes(log->log)); });
}

sm_status sm_log_to_xes(const sm_log* log, char** out) {
  SM_REQUIRE(log && out);
  return guarded([&] { *out = dup(sm::write_xes(log->log)); });
}

size_t sm_log_trace_count(const sm_log* log) { return log ? log->log.size() : 0; }
size_t sm_log_event_count(const sm_log* log) { return log ? log->log.event_count() : 0; }
size_t sm_log_activity_count(const sm_log* log) { return log ? sm::count_distinct_activities(log->log) : 0; }
size_t sm_log_skipped_events(const sm_log* log) { return log ? log->skipped : 0; }
void sm_log_free(sm_log* log) { delete log; }

void sm_discovery_options_init(sm_discovery_options* options) {
  if (!options) return;
  const sm::DiscoveryConfig d;
  options->delete_switch_traces = d.delete_switch_traces;
  options->noise_threshold = d.noise_threshold;
  options->enable_switch_cut = d.enable_switch_cut;
  options->max_recursion_guard = d.max_recursion_guard;
}

sm_status sm_discover(const sm_log* log, const sm_discovery_options* options, sm_tree** out,
                      size_t* switches_pruned) {
  SM_REQUIRE(log && out);
  return guarded([&] {
    sm::DiscoveryConfig config;
    if (options) {
      config.delete_switch_traces = options->delete_switch_traces != 0;
      config.noise_threshold = options->noise_threshold;
      config.enable_switch_cut = options->enable_switch_cut != 0;
      config.max_recursion_guard = options->max_recursion_guard;
    }
    sm::DiscoveryReport report;
    auto tree = sm::discover(log->log, config, &report);
    if (switches_pruned) *switches_pruned = report.switches_pruned;
    *out = new sm_tree{std::move(tree)};
  });
}

sm_status sm_tree_parse(const char* text, sm_tree** out) {
  SM_REQUIRE(text && out);
  return guarded([&] { *out = new sm_tree{sm::parse_tree(text)}; });
}

sm_status sm_tree_render(const sm_tree* tree, char** out) {
  SM_REQUIRE(tree && out);
  return guarded([&] { *out = dup(sm::render_tree(tree->tree)); });
}

sm_status sm_tree_to_dot(const sm_tree* tree, char** out) {
  SM_REQUIRE(tree && out);
  return guarded([&] { *out = dup(sm::tree_to_dot(tree->tree)); });
}

size_t sm_tree_violation_count(const sm_tree* tree) {
  return tree ? sm::validate_switches(tree->tree).size() : 0;
}

sm_status sm_tree_prune(const sm_tree* tree, sm_tree** out) {
  SM_REQUIRE(tree && out);
  return guarded([&] { *out = new sm_tree{sm::prune_invalid_switches(tree->tree)}; });
}

void sm_tree_free(sm_tree* tree) { delete tree; }

sm_status sm_tree_translate(const sm_tree* tree, sm_net** out) {
  SM_REQUIRE(tree && out);
  return guarded([&] { *out = new sm_net{sm::translate(tree->tree)}; });
}

sm_status sm_net_load_pnml(const char* path, sm_net** out) {
  SM_REQUIRE(path && out);
  return guarded([&] { *out = new sm_net{sm::import_pnml(read_file(path))}; });
}

sm_status sm_net_save_pnml(const sm_net* net, const char* path) {
  SM_REQUIRE(net && path);
  return guarded([&] { write_file(path, sm::export_pnml(net->net)); });
}

sm_status sm_net_to_pnml(const sm_net* net, char** out) {
  SM_REQUIRE(net && out);
  return guarded([&] { *out = dup(sm::export_pnml(net->net)); });
}

sm_status sm_net_to_dot(const sm_net* net, char** out) {
  SM_REQUIRE(net && out);
  return guarded([&] { *out = dup(sm::export_dot(net->net)); });
}

size_t sm_net_place_count(const sm_net* net) { return net ? net->net.places().size() : 0; }
size_t sm_net_transition_count(const sm_net* net) { return net ? net->net.transitions().size() : 0; }
void sm_net_free(sm_net* net) { delete net; }

sm_status sm_check_soundness(const sm_net* net, size_t state_bound, sm_soundness** out) {
  SM_REQUIRE(net && out && state_bound > 0);
  return guarded([&] {
    auto s = std::make_unique<sm_soundness>();
    s->report = sm::check_soundness(net->net, state_bound);
    for (auto t : s->report.dead_tasks) s->dead_names.push_back(net->net.transition(t).name);
    *out = s.release();
  });
}

int sm_soundness_is_sound(const sm_soundness* s) { return s && s->report.is_sound; }
int sm_soundness_safe(const sm_soundness* s) { return s && s->report.safe; }
int sm_soundness_proper_completion(const sm_soundness* s) { return s && s->report.proper_completion; }
int sm_soundness_option_to_complete(const sm_soundness* s) { return s && s->report.option_to_complete; }
int sm_soundness_no_dead_tasks(const sm_soundness* s) { return s && s->report.no_dead_tasks; }
int sm_soundness_complete(const sm_soundness* s) { return s && s->report.complete; }
size_t sm_soundness_states(const sm_soundness* s) { return s ? s->report.states_explored : 0; }
size_t sm_soundness_dead_task_count(const sm_soundness* s) { return s ? s->dead_names.size() : 0; }

const char* sm_soundness_dead_task(const sm_soundness* s, size_t i) {
  return s && i < s->dead_names.size() ? s->dead_names[i].c_str() : nullptr;
}

size_t sm_soundness_structure_problem_count(const sm_soundness* s) {
  return s ? s->report.structure_problems.size() : 0;
}

const char* sm_soundness_structure_problem(const sm_soundness* s, size_t i) {
  return s && i < s->report.structure_problems.size() ? s->report.structure_problems[i].c_str() : nullptr;
}

void sm_soundness_free(sm_soundness* s) { delete s; }

sm_status sm_evaluate(const sm_log* log, const sm_net* net, sm_report** out) {
  SM_REQUIRE(log && net && out);
  return guarded([&] { *out = new sm_report{sm::evaluate(log->log, net->net)}; });
}

double sm_report_fitness(const sm_report* r) { return r ? r->report.fitness : 0.0; }
double sm_report_precision(const sm_report* r) { return r ? r->report.precision : 0.0; }
double sm_report_f_score(const sm_report* r) { return r ? r->report.f_score : 0.0; }
size_t sm_report_size(const sm_report* r) { return r ? r->report.size : 0; }
size_t sm_report_cfc(const sm_report* r) { return r ? r->report.cfc : 0; }
size_t sm_report_unaligned_traces(const sm_report* r) { return r ? r->report.unaligned_traces : 0; }

sm_status sm_report_to_json(const sm_report* r, char** out) {
  SM_REQUIRE(r && out);
  return guarded([&] { *out = dup(sm::report_to_json(r->report)); });
}

void sm_report_free(sm_report* r) { delete r; }

double sm_f_score(double fitness, double precision) { return sm::f_score(fitness, precision); }

void sm_playout_options_init(sm_playout_options* options) {
  if (!options) return;
  const sm::PlayoutConfig d;
  options->mode = SM_PLAYOUT_EXHAUSTIVE;
  options->max_length = d.max_length;
  options->n_traces = d.n_traces;
  options->seed = d.seed;
  options->loop_unroll_cap = d.loop_unroll_cap;
  options->state_bound = d.state_bound;
}

sm_status sm_playout(const sm_tree* tree, const sm_playout_options* options, sm_log** out, int* complete) {
  SM_REQUIRE(tree && out);
  return guarded([&] {
    sm::PlayoutConfig config;
    if (options) {
      config.mode = options->mode == SM_PLAYOUT_SAMPLE ? sm::PlayoutMode::Sample : sm::PlayoutMode::Exhaustive;
      config.max_length = options->max_length;
      config.n_traces = options->n_traces;
      config.seed = options->seed;
      config.loop_unroll_cap = options->loop_unroll_cap;
      config.state_bound = options->state_bound;
    }
    auto result = sm::playout(tree->tree, config);
    if (complete) *complete = result.complete;
    *out = new sm_log{std::move(result.log), 0};
  });
}

}  // extern "C"
