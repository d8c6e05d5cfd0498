#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "mcplan/drone_gridworld.hpp"
#include "mcplan/error.hpp"
#include "mcplan/experiment.hpp"
#include "mcplan/mcts_engine.hpp"
#include "mcplan/plan_extraction.hpp"
#include "mcplan/tree_io.hpp"

namespace {

using namespace mcplan;

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

bool is_config_error(ErrorKind kind) {
  return kind == ErrorKind::Config || kind == ErrorKind::Parse ||
         kind == ErrorKind::InvalidGeometry;
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string action_list(const Plan& plan) {
  std::string out;
  for (std::size_t i = 0; i < plan.actions.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(plan.actions[i].index);
  }
  return out;
}

struct ExperimentArgs {
  std::string config_path;
  std::string profile;
  std::map<std::string, std::string> overrides;
  bool print_summary = false;
};

int run_experiment_command(const ExperimentArgs& args) {
  std::vector<std::pair<std::string, std::string>> settings;
  if (!args.config_path.empty()) settings = experiment::load_settings_file(args.config_path);

  std::string profile = "desk";
  for (const auto& [key, value] : settings) {
    if (key == "profile") profile = value;
  }
  if (auto it = args.overrides.find("profile"); it != args.overrides.end()) {
    profile = it->second;
  }
  if (!args.profile.empty()) profile = args.profile;

  experiment::ExperimentConfig config = experiment::profile_by_name(profile);
  std::optional<std::size_t> declared;
  for (const auto& [key, value] : settings) {
    if (key != "profile") experiment::apply_setting(config, key, value, &declared);
  }
  for (const auto& [key, value] : args.overrides) {
    if (key != "profile") experiment::apply_setting(config, key, value, &declared);
  }
  experiment::validate(config, declared);

  std::vector<experiment::ResultRecord> records;
  if (config.output_path.empty() || config.output_path == "-") {
    records = experiment::run_experiment(config, &std::cout);
  } else {
    records = experiment::run_experiment_to_file(config);
  }
  if (args.print_summary) {
    std::cerr << experiment::format_summary(experiment::summarize(records));
  }
  return 0;
}

struct PlanArgs {
  std::string world_path;
  std::size_t iterations = 5000;
  std::uint64_t seed = 0;
  double exploration_c = 0.03;
  std::string value_mode = "average";
  std::size_t rollout_steps = 0;
  std::string tree_out;
  std::size_t k = 1;
  double q = 0.0;
  double d = 0.0;
  int radius = 0;
  bool complete = true;
};

int run_plan_command(const PlanArgs& args) {
  const grid::GridWorld world = grid::load_map_file(args.world_path, args.radius);
  const grid::PlanningSimulator sim(world);

  SearchConfig search;
  search.iterations = args.iterations;
  search.seed = args.seed;
  search.bandit.exploration_c = args.exploration_c;
  search.value_mode = parse_value_mode(args.value_mode);
  search.max_rollout_steps = args.rollout_steps
                                 ? args.rollout_steps
                                 : static_cast<std::size_t>(world.horizon());
  const SearchTree tree = run_search(sim, search);

  if (!args.tree_out.empty()) {
    std::ofstream out(args.tree_out);
    if (!out) throw PlanningError(ErrorKind::Io, "cannot write " + args.tree_out);
    write_tree(out, tree);
  }

  const PlanSet plans = extract_plans(tree, {args.k, args.q, args.d});
  std::cout << "tree nodes: " << tree.size() << ", depth: " << tree.max_depth()
            << ", root value: " << format_real(tree.q_value(tree.root())) << '\n';
  std::cout << "shortest unobstructed path: "
            << grid::shortest_unobstructed_path(world) << '\n';
  for (std::size_t i = 0; i < plans.size(); ++i) {
    const Plan& plan = plans.plans[i];
    const auto actions = args.complete
                             ? experiment::complete_with_greedy(world, plan.actions)
                             : plan.actions;
    const grid::ExecutionOutcome outcome = grid::execute_plan(world, actions);
    std::cout << "plan " << i + 1 << ": quality " << format_real(plan.relative_quality)
              << " moves " << grid::format_moves(actions) << " -> "
              << (outcome.reached_goal ? "goal"
                                       : outcome.shot_down ? "shot down" : "stopped")
              << " after " << outcome.path_length << " steps\n";
  }
  if (!plans.plans.empty()) {
    const auto best = args.complete
                          ? experiment::complete_with_greedy(world, plans.plans[0].actions)
                          : plans.plans[0].actions;
    std::cout << grid::render_map(world, best);
  }
  return 0;
}

int run_extract_command(const std::string& tree_path, std::size_t k, double q,
                        double d) {
  const SearchTree tree = load_tree_file(tree_path);
  const PlanSet plans = extract_plans(tree, {k, q, d});
  std::cout << "rank,relative_quality,absolute_quality,length,actions\n";
  for (std::size_t i = 0; i < plans.size(); ++i) {
    const Plan& p = plans.plans[i];
    std::cout << i + 1 << ',' << format_real(p.relative_quality) << ','
              << format_real(p.absolute_quality) << ',' << p.actions.size() << ','
              << action_list(p) << '\n';
  }
  return 0;
}

int run_oracle_command(const std::string& tree_path, std::size_t limit) {
  const SearchTree tree = load_tree_file(tree_path);
  const auto plans = brute_force_enumerate(tree, limit);
  std::cout << "rank,quality,actions\n";
  for (std::size_t i = 0; i < plans.size(); ++i) {
    std::cout << i + 1 << ',' << format_real(plans[i].quality) << ','
              << action_list(plans[i].plan) << '\n';
  }
  return 0;
}

int run_summarize_command(const std::string& csv_path, double band_width) {
  const auto records = experiment::load_csv_file(csv_path);
  std::cout << experiment::format_summary(experiment::summarize(records, band_width));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo tree search plan extraction toolkit"};
  app.require_subcommand(1);

  ExperimentArgs exp_args;
  auto* exp = app.add_subcommand("experiment", "Run the gridworld planner study");
  exp->add_option("--config", exp_args.config_path, "key = value settings file");
  exp->add_option("--profile", exp_args.profile, "desk, or full (alias paper)");
  exp->add_flag("--summary", exp_args.print_summary, "Print a summary to stderr");
  std::map<std::string, std::string> raw_overrides;
  for (const std::string& key : experiment::setting_keys()) {
    if (key == "profile") continue;
    exp->add_option("--" + key, raw_overrides[key], "Override " + key);
  }
  exp->add_option("--out", raw_overrides["output_path"], "CSV output path");

  PlanArgs plan_args;
  auto* plan = app.add_subcommand("plan", "Build a tree on a map and print its best plan");
  plan->add_option("--world", plan_args.world_path, "Map file")->required();
  plan->add_option("--iterations", plan_args.iterations, "Playouts");
  plan->add_option("--seed", plan_args.seed, "Search seed");
  plan->add_option("--exploration-c", plan_args.exploration_c, "UCB1 constant");
  plan->add_option("--value-mode", plan_args.value_mode, "average or max");
  plan->add_option("--rollout-steps", plan_args.rollout_steps, "0 uses the horizon");
  plan->add_option("--detection-radius", plan_args.radius, "Enemy detection radius");
  plan->add_option("--tree-out", plan_args.tree_out, "Write the tree to this file");
  plan->add_option("--k", plan_args.k, "Plans to extract");
  plan->add_option("--q", plan_args.q, "Minimum relative quality");
  plan->add_option("--d", plan_args.d, "Minimum diversity");
  plan->add_flag("!--no-complete", plan_args.complete,
                 "Do not finish partial plans with greedy moves");

  std::string tree_path;
  std::size_t k = 1;
  double q = 0.0;
  double d = 0.0;
  auto* extract = app.add_subcommand("extract", "Extract a plan set from a saved tree");
  extract->add_option("--tree", tree_path, "Tree file")->required();
  extract->add_option("--k", k, "Plan count");
  extract->add_option("--q", q, "Minimum relative quality");
  extract->add_option("--d", d, "Minimum diversity");

  std::size_t limit = kEnumerationLimit;
  auto* oracle = app.add_subcommand("oracle", "Enumerate every plan of a saved tree");
  oracle->add_option("--tree", tree_path, "Tree file")->required();
  oracle->add_option("--limit", limit, "Maximum number of plans");

  std::string csv_path;
  double band_width = 0.1;
  auto* summarize = app.add_subcommand("summarize", "Summarize an experiment CSV");
  summarize->add_option("--in", csv_path, "CSV file")->required();
  summarize->add_option("--band-width", band_width, "Risk band width");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*exp) {
      for (const std::string& key : experiment::setting_keys()) {
        if (key == "profile") continue;
        if (exp->count("--" + key)) exp_args.overrides[key] = raw_overrides[key];
      }
      if (exp->count("--out")) exp_args.overrides["output_path"] = raw_overrides["output_path"];
      return run_experiment_command(exp_args);
    }
    if (*plan) return run_plan_command(plan_args);
    if (*extract) return run_extract_command(tree_path, k, q, d);
    if (*oracle) return run_oracle_command(tree_path, limit);
    if (*summarize) return run_summarize_command(csv_path, band_width);
  } catch (const PlanningError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_config_error(e.kind()) ? kExitConfig : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
