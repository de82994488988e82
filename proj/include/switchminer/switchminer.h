/* C interface to switchminer. All handles are opaque and owned by the caller;
 * release them with the matching *_free function. Strings returned through
 * `char**` out-parameters are heap allocated; release with sm_string_free.
 * On failure a function returns a non-zero sm_status and the message is
 * available from sm_last_error_message() on the same thread. */
#ifndef SWITCHMINER_H
#define SWITCHMINER_H

#include <stddef.h>
#include <stdint.h>

#if defined(SWITCHMINER_BUILDING_LIBRARY)
#define SM_API __attribute__((visibility("default")))
#else
#define SM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sm_status {
  SM_OK = 0,
  SM_INVALID_ARGUMENT = 1,
  SM_IO = 2,
  SM_PARSE = 3,
  SM_CONFIG = 4,
  SM_CONSTRAINT = 5,
  SM_INTERNAL = 6
} sm_status;

typedef enum sm_classifier { SM_CLASSIFIER_NAME = 0, SM_CLASSIFIER_NAME_LIFECYCLE = 1 } sm_classifier;

typedef struct sm_log sm_log;
typedef struct sm_tree sm_tree;
typedef struct sm_net sm_net;
typedef struct sm_soundness sm_soundness;
typedef struct sm_report sm_report;

SM_API const char* sm_version(void);
SM_API const char* sm_last_error_message(void);
SM_API const char* sm_status_name(sm_status status);
SM_API void sm_string_free(char* s);

/* Event logs */
SM_API sm_status sm_log_load_xes(const char* path, sm_classifier classifier, sm_log** out);
SM_API sm_status sm_log_parse_xes(const char* data, size_t size, sm_classifier classifier, sm_log** out);
/* timestamp_column may be NULL. */
SM_API sm_status sm_log_load_csv(const char* path, const char* case_column, const char* activity_column,
                                 const char* timestamp_column, char delimiter, sm_log** out);
SM_API sm_status sm_log_save_xes(const sm_log* log, const char* path);
SM_API sm_status sm_log_to_xes(const sm_log* log, char** out);
SM_API size_t sm_log_trace_count(const sm_log* log);
SM_API size_t sm_log_event_count(const sm_log* log);
SM_API size_t sm_log_activity_count(const sm_log* log);
SM_API size_t sm_log_skipped_events(const sm_log* log);
SM_API void sm_log_free(sm_log* log);

/* Discovery */
typedef struct sm_discovery_options {
  int delete_switch_traces;
  double noise_threshold;
  int enable_switch_cut;
  size_t max_recursion_guard;
} sm_discovery_options;

SM_API void sm_discovery_options_init(sm_discovery_options* options);
/* switches_pruned may be NULL. */
SM_API sm_status sm_discover(const sm_log* log, const sm_discovery_options* options, sm_tree** out,
                             size_t* switches_pruned);

/* Switch process trees */
SM_API sm_status sm_tree_parse(const char* text, sm_tree** out);
SM_API sm_status sm_tree_render(const sm_tree* tree, char** out);
SM_API sm_status sm_tree_to_dot(const sm_tree* tree, char** out);
SM_API size_t sm_tree_violation_count(const sm_tree* tree);
SM_API sm_status sm_tree_prune(const sm_tree* tree, sm_tree** out);
SM_API void sm_tree_free(sm_tree* tree);

/* Workflow nets */
SM_API sm_status sm_tree_translate(const sm_tree* tree, sm_net** out);
SM_API sm_status sm_net_load_pnml(const char* path, sm_net** out);
SM_API sm_status sm_net_save_pnml(const sm_net* net, const char* path);
SM_API sm_status sm_net_to_pnml(const sm_net* net, char** out);
SM_API sm_status sm_net_to_dot(const sm_net* net, char** out);
SM_API size_t sm_net_place_count(const sm_net* net);
SM_API size_t sm_net_transition_count(const sm_net* net);
SM_API void sm_net_free(sm_net* net);

/* Soundness */
SM_API sm_status sm_check_soundness(const sm_net* net, size_t state_bound, sm_soundness** out);
SM_API int sm_soundness_is_sound(const sm_soundness* s);
SM_API int sm_soundness_safe(const sm_soundness* s);
SM_API int sm_soundness_proper_completion(const sm_soundness* s);
SM_API int sm_soundness_option_to_complete(const sm_soundness* s);
SM_API int sm_soundness_no_dead_tasks(const sm_soundness* s);
SM_API int sm_soundness_complete(const sm_soundness* s);
SM_API size_t sm_soundness_states(const sm_soundness* s);
SM_API size_t sm_soundness_dead_task_count(const sm_soundness* s);
/* Name of the i-th dead transition; NULL when out of range. Owned by s. */
SM_API const char* sm_soundness_dead_task(const sm_soundness* s, size_t i);
SM_API size_t sm_soundness_structure_problem_count(const sm_soundness* s);
SM_API const char* sm_soundness_structure_problem(const sm_soundness* s, size_t i);
SM_API void sm_soundness_free(sm_soundness* s);

/* Conformance */
SM_API sm_status sm_evaluate(const sm_log* log, const sm_net* net, sm_report** out);
SM_API double sm_report_fitness(const sm_report* r);
SM_API double sm_report_precision(const sm_report* r);
SM_API double sm_report_f_score(const sm_report* r);
SM_API size_t sm_report_size(const sm_report* r);
SM_API size_t sm_report_cfc(const sm_report* r);
SM_API size_t sm_report_unaligned_traces(const sm_report* r);
SM_API sm_status sm_report_to_json(const sm_report* r, char** out);
SM_API void sm_report_free(sm_report* r);
SM_API double sm_f_score(double fitness, double precision);

/* Playout */
typedef enum sm_playout_mode { SM_PLAYOUT_EXHAUSTIVE = 0, SM_PLAYOUT_SAMPLE = 1 } sm_playout_mode;

typedef struct sm_playout_options {
  sm_playout_mode mode;
  size_t max_length;
  size_t n_traces;
  uint64_t seed;
  size_t loop_unroll_cap;
  size_t state_bound;
} sm_playout_options;

SM_API void sm_playout_options_init(sm_playout_options* options);
/* complete may be NULL; it is set to 0 when a cap cut the result short. */
SM_API sm_status sm_playout(const sm_tree* tree, const sm_playout_options* options, sm_log** out, int* complete);

#ifdef __cplusplus
}
#endif

#endif
