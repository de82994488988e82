// switchminer command-line front end. Talks to the library only through the
// C interface.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "switchminer/switchminer.h"

namespace {

constexpr int kInputError = 1;
constexpr int kInternalError = 2;

struct Failure {
  sm_status status;
  std::string message;
};

void check(sm_status s, const std::string& context) {
  if (s != SM_OK) throw Failure{s, context + ": " + sm_last_error_message()};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Log = std::unique_ptr<sm_log, Deleter<sm_log, sm_log_free>>;
using Tree = std::unique_ptr<sm_tree, Deleter<sm_tree, sm_tree_free>>;
using Net = std::unique_ptr<sm_net, Deleter<sm_net, sm_net_free>>;
using Soundness = std::unique_ptr<sm_soundness, Deleter<sm_soundness, sm_soundness_free>>;
using Report = std::unique_ptr<sm_report, Deleter<sm_report, sm_report_free>>;

std::string take(char* s) {
  std::string out(s ? s : "");
  sm_string_free(s);
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Failure{SM_IO, "cannot write " + path};
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{SM_IO, "cannot open " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct LogOptions {
  std::string path;
  bool csv = false;
  std::string classifier = "name";
  std::string case_column = "case";
  std::string activity_column = "activity";
  std::string timestamp_column;
  char delimiter = ',';

  void attach(CLI::App* cmd, const std::string& flag) {
    cmd->add_option(flag, path, "Event log (XES, or CSV with --csv)")->required();
    cmd->add_flag("--csv", csv, "Read the log as CSV");
    cmd->add_option("--classifier", classifier, "Event classifier")
        ->check(CLI::IsMember({"name", "name+lifecycle"}));
    cmd->add_option("--case-column", case_column, "CSV case id column");
    cmd->add_option("--activity-column", activity_column, "CSV activity column");
    cmd->add_option("--timestamp-column", timestamp_column, "CSV timestamp column");
    cmd->add_option("--delimiter", delimiter, "CSV field delimiter");
  }

  Log load() const {
    sm_log* raw = nullptr;
    const bool as_csv = csv || (path.size() > 4 && path.substr(path.size() - 4) == ".csv");
    if (as_csv) {
      check(sm_log_load_csv(path.c_str(), case_column.c_str(), activity_column.c_str(),
                            timestamp_column.empty() ? nullptr : timestamp_column.c_str(), delimiter, &raw),
            "reading " + path);
    } else {
      const auto cls = classifier == "name+lifecycle" ? SM_CLASSIFIER_NAME_LIFECYCLE : SM_CLASSIFIER_NAME;
      check(sm_log_load_xes(path.c_str(), cls, &raw), "reading " + path);
    }
    Log log(raw);
    if (sm_log_skipped_events(raw) > 0) {
      std::cerr << "warning: skipped " << sm_log_skipped_events(raw) << " events without a name\n";
    }
    return log;
  }
};

Tree load_tree(const std::string& path) {
  sm_tree* raw = nullptr;
  check(sm_tree_parse(read_text(path).c_str(), &raw), "parsing " + path);
  return Tree(raw);
}

Net load_net(const std::string& path) {
  sm_net* raw = nullptr;
  check(sm_net_load_pnml(path.c_str(), &raw), "reading " + path);
  return Net(raw);
}

Net translate(const sm_tree* tree) {
  sm_net* raw = nullptr;
  check(sm_tree_translate(tree, &raw), "translating tree");
  return Net(raw);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Process discovery with switch behaviours"};
  app.set_version_flag("--version", std::string(sm_version()));
  app.require_subcommand(1);

  // discover
  auto* discover = app.add_subcommand("discover", "Discover a switch process tree and workflow net from a log");
  LogOptions discover_log;
  discover_log.attach(discover, "--input");
  bool delete_traces = false, no_switch_cut = false;
  double noise = 0.0;
  std::string out_pnml, tree_out, dot_out;
  discover->add_flag("--delete-switch-traces", delete_traces, "Drop traces with switch behaviour before splitting");
  discover->add_flag("--no-switch-cut", no_switch_cut, "Plain inductive miner (baseline)");
  discover->add_option("--noise", noise, "Relative edge filter threshold")->check(CLI::Range(0.0, 1.0));
  discover->add_option("--out", out_pnml, "Output PNML")->required();
  discover->add_option("--tree-out", tree_out, "Output tree text");
  discover->add_option("--dot", dot_out, "Output DOT of the net");

  // eval
  auto* eval = app.add_subcommand("eval", "Fitness, precision, F-score, size and CFC of a model on a log");
  LogOptions eval_log;
  eval_log.attach(eval, "--log");
  std::string eval_model, eval_tree, report_path;
  auto* model_opt = eval->add_option("--model", eval_model, "Model PNML");
  auto* tree_opt = eval->add_option("--tree", eval_tree, "Model as tree text");
  model_opt->excludes(tree_opt);
  eval->add_option("--report", report_path, "Output JSON report");

  // playout
  auto* play = app.add_subcommand("playout", "Generate a log from a tree");
  std::string play_tree, play_mode = "exhaustive", play_out;
  sm_playout_options popts;
  sm_playout_options_init(&popts);
  play->add_option("--tree", play_tree, "Tree text file")->required();
  play->add_option("--mode", play_mode, "Playout mode")->check(CLI::IsMember({"exhaustive", "sample"}));
  play->add_option("--max-length", popts.max_length, "Maximum visible trace length")->check(CLI::PositiveNumber);
  play->add_option("--traces", popts.n_traces, "Number of sampled traces");
  play->add_option("--seed", popts.seed, "Sampling seed");
  play->add_option("--loop-cap", popts.loop_unroll_cap, "Firings per transition per sampled trace")
      ->check(CLI::PositiveNumber);
  play->add_option("--out", play_out, "Output XES (stdout when omitted)");

  // soundness
  auto* sound = app.add_subcommand("soundness", "Check a workflow net for soundness");
  std::string sound_model;
  std::size_t state_bound = 1000000;
  sound->add_option("--model", sound_model, "Model PNML")->required();
  sound->add_option("--state-bound", state_bound, "Reachability state bound")->check(CLI::PositiveNumber);

  // convert
  auto* convert = app.add_subcommand("convert", "Translate a tree to PNML/DOT or render a PNML as DOT");
  std::string conv_tree, conv_model, conv_pnml, conv_dot, conv_tree_dot;
  auto* ct = convert->add_option("--tree", conv_tree, "Tree text file");
  auto* cm = convert->add_option("--model", conv_model, "Model PNML");
  ct->excludes(cm);
  convert->add_option("--pnml", conv_pnml, "Output PNML");
  convert->add_option("--dot", conv_dot, "Output DOT of the net");
  convert->add_option("--tree-dot", conv_tree_dot, "Output DOT of the tree");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*discover) {
      Log log = discover_log.load();
      sm_discovery_options options;
      sm_discovery_options_init(&options);
      options.delete_switch_traces = delete_traces;
      options.noise_threshold = noise;
      options.enable_switch_cut = !no_switch_cut;
      sm_tree* raw = nullptr;
      size_t pruned = 0;
      check(sm_discover(log.get(), &options, &raw, &pruned), "discovery");
      Tree tree(raw);
      const std::string text = take([&] {
        char* s = nullptr;
        check(sm_tree_render(tree.get(), &s), "rendering tree");
        return s;
      }());
      Net net = translate(tree.get());
      check(sm_net_save_pnml(net.get(), out_pnml.c_str()), "writing " + out_pnml);
      if (!tree_out.empty()) write_text(tree_out, text + "\n");
      if (!dot_out.empty()) {
        char* s = nullptr;
        check(sm_net_to_dot(net.get(), &s), "rendering DOT");
        write_text(dot_out, take(s));
      }
      std::cout << text << "\n";
      if (pruned > 0) std::cerr << "pruned " << pruned << " invalid switch behaviours\n";
    } else if (*eval) {
      Log log = eval_log.load();
      Net net;
      if (!eval_model.empty()) {
        net = load_net(eval_model);
      } else if (!eval_tree.empty()) {
        net = translate(load_tree(eval_tree).get());
      } else {
        throw Failure{SM_INVALID_ARGUMENT, "eval needs --model or --tree"};
      }
      sm_report* raw = nullptr;
      check(sm_evaluate(log.get(), net.get(), &raw), "evaluation");
      Report report(raw);
      std::printf("fitness    %.4f\nprecision  %.4f\nf_score    %.4f\nsize       %zu\ncfc        %zu\n",
                  sm_report_fitness(raw), sm_report_precision(raw), sm_report_f_score(raw), sm_report_size(raw),
                  sm_report_cfc(raw));
      if (sm_report_unaligned_traces(raw) > 0) {
        std::cerr << "warning: " << sm_report_unaligned_traces(raw) << " distinct traces could not be aligned\n";
      }
      if (!report_path.empty()) {
        char* s = nullptr;
        check(sm_report_to_json(raw, &s), "serializing report");
        write_text(report_path, take(s));
      }
    } else if (*play) {
      Tree tree = load_tree(play_tree);
      popts.mode = play_mode == "sample" ? SM_PLAYOUT_SAMPLE : SM_PLAYOUT_EXHAUSTIVE;
      sm_log* raw = nullptr;
      int complete = 1;
      check(sm_playout(tree.get(), &popts, &raw, &complete), "playout");
      Log log(raw);
      if (!complete) std::cerr << "warning: playout cut short by a cap\n";
      if (play_out.empty()) {
        char* s = nullptr;
        check(sm_log_to_xes(raw, &s), "serializing log");
        std::cout << take(s);
      } else {
        check(sm_log_save_xes(raw, play_out.c_str()), "writing " + play_out);
      }
    } else if (*sound) {
      Net net = load_net(sound_model);
      sm_soundness* raw = nullptr;
      check(sm_check_soundness(net.get(), state_bound, &raw), "soundness check");
      Soundness s(raw);
      auto yn = [](int v) { return v ? "yes" : "no"; };
      std::cout << "sound               " << (sm_soundness_complete(raw) ? yn(sm_soundness_is_sound(raw)) : "unknown")
                << "\nsafe                " << yn(sm_soundness_safe(raw))
                << "\nproper completion   " << yn(sm_soundness_proper_completion(raw))
                << "\noption to complete  " << yn(sm_soundness_option_to_complete(raw))
                << "\nno dead tasks       " << yn(sm_soundness_no_dead_tasks(raw))
                << "\nstates explored     " << sm_soundness_states(raw) << "\n";
      if (!sm_soundness_complete(raw)) std::cout << "state bound reached; verdict indeterminate\n";
      for (size_t i = 0; i < sm_soundness_structure_problem_count(raw); ++i) {
        std::cout << "structure: " << sm_soundness_structure_problem(raw, i) << "\n";
      }
      for (size_t i = 0; i < sm_soundness_dead_task_count(raw); ++i) {
        std::cout << "dead task: " << sm_soundness_dead_task(raw, i) << "\n";
      }
    } else if (*convert) {
      Net net;
      if (!conv_tree.empty()) {
        Tree tree = load_tree(conv_tree);
        if (!conv_tree_dot.empty()) {
          char* s = nullptr;
          check(sm_tree_to_dot(tree.get(), &s), "rendering tree");
          write_text(conv_tree_dot, take(s));
        }
        net = translate(tree.get());
      } else if (!conv_model.empty()) {
        net = load_net(conv_model);
      } else {
        throw Failure{SM_INVALID_ARGUMENT, "convert needs --tree or --model"};
      }
      if (!conv_pnml.empty()) check(sm_net_save_pnml(net.get(), conv_pnml.c_str()), "writing " + conv_pnml);
      if (!conv_dot.empty()) {
        char* s = nullptr;
        check(sm_net_to_dot(net.get(), &s), "rendering DOT");
        write_text(conv_dot, take(s));
      }
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.status == SM_INTERNAL ? kInternalError : kInputError;
  }
  return 0;
}
