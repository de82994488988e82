/* Exercises the C interface from plain C. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "switchminer/switchminer.h"

static int failures = 0;

#define CHECK(cond)                                                  \
  do {                                                               \
    if (!(cond)) {                                                   \
      fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                    \
    }                                                                \
  } while (0)

static void test_running_example(const char* data_dir) {
  char path[1024];
  snprintf(path, sizeof path, "%s/running_example.xes", data_dir);
  sm_log* log = NULL;
  CHECK(sm_log_load_xes(path, SM_CLASSIFIER_NAME, &log) == SM_OK);
  if (!log) return;
  CHECK(sm_log_trace_count(log) == 3);
  CHECK(sm_log_event_count(log) == 10);
  CHECK(sm_log_activity_count(log) == 6);

  sm_discovery_options opts;
  sm_discovery_options_init(&opts);
  CHECK(opts.delete_switch_traces == 0);
  CHECK(opts.enable_switch_cut == 1);
  opts.delete_switch_traces = 1;
  sm_tree* tree = NULL;
  size_t pruned = 99;
  CHECK(sm_discover(log, &opts, &tree, &pruned) == SM_OK);
  CHECK(pruned == 0);
  char* text = NULL;
  CHECK(sm_tree_render(tree, &text) == SM_OK);
  CHECK(text && strstr(text, "B=>{E}") != NULL);
  sm_string_free(text);

  sm_net* net = NULL;
  CHECK(sm_tree_translate(tree, &net) == SM_OK);
  sm_soundness* s = NULL;
  CHECK(sm_check_soundness(net, 100000, &s) == SM_OK);
  CHECK(sm_soundness_is_sound(s));
  CHECK(sm_soundness_dead_task_count(s) == 0);
  CHECK(sm_soundness_dead_task(s, 0) == NULL);
  sm_soundness_free(s);

  sm_report* r = NULL;
  CHECK(sm_evaluate(log, net, &r) == SM_OK);
  CHECK(sm_report_fitness(r) == 1.0);
  CHECK(sm_report_precision(r) == 1.0);
  char* json = NULL;
  CHECK(sm_report_to_json(r, &json) == SM_OK);
  CHECK(json && strstr(json, "\"fitness\"") != NULL);
  sm_string_free(json);
  sm_report_free(r);

  char* pnml = NULL;
  CHECK(sm_net_to_pnml(net, &pnml) == SM_OK);
  CHECK(pnml && strstr(pnml, "<pnml") != NULL);
  sm_string_free(pnml);

  sm_playout_options po;
  sm_playout_options_init(&po);
  sm_log* played = NULL;
  int complete = 0;
  CHECK(sm_playout(tree, &po, &played, &complete) == SM_OK);
  CHECK(complete == 1);
  CHECK(sm_log_trace_count(played) == 3);
  sm_log_free(played);

  sm_net_free(net);
  sm_tree_free(tree);
  sm_log_free(log);
}

static void test_errors(void) {
  sm_tree* tree = NULL;
  CHECK(sm_tree_parse("X(A,", &tree) == SM_PARSE);
  CHECK(tree == NULL);
  CHECK(strlen(sm_last_error_message()) > 0);
  CHECK(sm_tree_parse(NULL, &tree) == SM_INVALID_ARGUMENT);

  CHECK(sm_tree_parse("->(A=>{B}, B)", &tree) == SM_OK);
  CHECK(sm_tree_violation_count(tree) == 1);
  sm_net* net = NULL;
  CHECK(sm_tree_translate(tree, &net) == SM_CONSTRAINT);
  sm_tree* pruned = NULL;
  CHECK(sm_tree_prune(tree, &pruned) == SM_OK);
  CHECK(sm_tree_violation_count(pruned) == 0);
  sm_tree_free(pruned);
  sm_tree_free(tree);

  sm_log* log = NULL;
  CHECK(sm_log_load_xes("/nonexistent/file.xes", SM_CLASSIFIER_NAME, &log) == SM_IO);
  CHECK(sm_log_parse_xes("<log>", 5, SM_CLASSIFIER_NAME, &log) == SM_PARSE);
  CHECK(sm_log_parse_xes("<log/>", 6, SM_CLASSIFIER_NAME, &log) == SM_OK);
  sm_discovery_options opts;
  sm_discovery_options_init(&opts);
  opts.noise_threshold = 2.0;
  CHECK(sm_discover(log, &opts, &tree, NULL) == SM_CONFIG);
  sm_log_free(log);

  CHECK(fabs(sm_f_score(0.97, 0.80) - 0.8768) < 1e-4);
  CHECK(strcmp(sm_status_name(SM_PARSE), "parse error") == 0);
  CHECK(strlen(sm_version()) > 0);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    fprintf(stderr, "usage: capi_test DATA_DIR\n");
    return 2;
  }
  test_running_example(argv[1]);
  test_errors();
  if (failures) {
    fprintf(stderr, "%d check(s) failed\n", failures);
    return 1;
  }
  printf("capi: all checks passed\n");
  return 0;
}
