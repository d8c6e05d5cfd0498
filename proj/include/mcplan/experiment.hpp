#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mcplan/drone_gridworld.hpp"
#include "mcplan/mcts_engine.hpp"
#include "mcplan/plan_metrics.hpp"
#include "mcplan/rng.hpp"
#include "mcplan/search_tree.hpp"
#include "mcplan/stats.hpp"

namespace mcplan::experiment {

enum class PlannerKind { Single, Random, TopK, TopQuality, Diverse };

struct PlannerSpec {
  PlannerKind kind = PlannerKind::Single;
  std::size_t k = 1;
  double q = 0.0;
  double d = 0.0;

  static PlannerSpec single() { return {PlannerKind::Single, 1, 0.0, 0.0}; }
  static PlannerSpec random(std::size_t k) { return {PlannerKind::Random, k, 0.0, 0.0}; }
  static PlannerSpec top_k(std::size_t k) { return {PlannerKind::TopK, k, 0.0, 0.0}; }
  static PlannerSpec top_quality(std::size_t k, double q) {
    return {PlannerKind::TopQuality, k, q, 0.0};
  }
  static PlannerSpec diverse(std::size_t k, double q, double d) {
    return {PlannerKind::Diverse, k, q, d};
  }

  ExtractionConfig extraction() const;
};

std::string_view planner_name(PlannerKind kind) noexcept;
/// "single", "random:5", "topk:5", "topquality:5:0.8", "diverse:5:0.8:0.5".
PlannerSpec parse_planner(std::string_view text);
std::vector<PlannerSpec> parse_planners(std::string_view text);
std::string format_planner(const PlannerSpec& spec);

/// Single, Random(5), TopK(5), TopQuality(5, 0.8), Diverse(5, 0.8, 0.5).
std::vector<PlannerSpec> default_planners();

struct ExperimentConfig {
  std::vector<double> risk_levels;
  std::size_t replications_per_level = 10;
  int width = 20;
  int height = 20;
  int detection_radius = 0;
  SearchConfig search;
  std::vector<PlannerSpec> planners = default_planners();
  std::uint64_t master_seed = 1;
  std::string output_path;
  /// Finish plans that stop short of a terminal state with the greedy move.
  bool complete_plans = true;
  /// When false, build_s and extract_s are written as zero.
  bool record_timing = true;
  std::size_t threads = 1;

  std::size_t instances() const {
    return risk_levels.size() * replications_per_level;
  }
};

/// `count` levels spaced evenly over (0, 0.9].
std::vector<double> even_risk_levels(std::size_t count);

/// 20 risk levels x 10 replications, 5,000 iterations, 20x20.
ExperimentConfig desk_profile();
/// 100 risk levels x 20 replications, 20,000 iterations, 20x20.
ExperimentConfig full_profile();
ExperimentConfig profile_by_name(std::string_view name);

/// Applies one `key = value` setting. Throws a config error for an unknown
/// key or a malformed value. `instances` is checked against the product of
/// levels and replications by `validate`.
void apply_setting(ExperimentConfig& config, std::string_view key,
                   std::string_view value,
                   std::optional<std::size_t>* declared_instances = nullptr);

/// Parses a flat key-value document (`key = value`, `#` comments).
std::vector<std::pair<std::string, std::string>> parse_settings(std::string_view text);
std::vector<std::pair<std::string, std::string>> load_settings_file(
    const std::string& path);

/// Every key accepted by apply_setting.
const std::vector<std::string>& setting_keys();

void validate(const ExperimentConfig& config,
              std::optional<std::size_t> declared_instances = std::nullopt);

struct ResultRecord {
  std::size_t instance_id = 0;
  double risk = 0.0;
  PlannerKind planner = PlannerKind::Single;
  bool success = false;
  std::size_t plans_emitted = 0;
  std::optional<int> best_executed_path_length;
  int shortest_path = 0;
  double tree_build_seconds = 0.0;
  double extraction_seconds = 0.0;
};

inline constexpr std::string_view kCsvHeader =
    "instance_id,risk,planner,success,plans_emitted,best_path_len,"
    "shortest_path,build_s,extract_s";

std::string format_csv_row(const ResultRecord& record);
std::vector<ResultRecord> parse_csv(std::string_view text);
std::vector<ResultRecord> load_csv_file(const std::string& path);

/// k root-to-leaf paths drawn uniformly over the leaves of the visited tree,
/// without replacement while leaves remain.
PlanSet run_random_baseline(const SearchTree& tree, std::size_t k, Rng& rng);

/// Extracts the plan set of `spec` from `tree`; `rng` feeds Random only.
PlanSet plan_set_for(const SearchTree& tree, const PlannerSpec& spec, Rng& rng);

/// Appends greedy moves until the goal or the horizon is reached.
std::vector<ActionId> complete_with_greedy(const grid::GridWorld& world,
                                           std::vector<ActionId> actions);

struct InstanceSetup {
  std::size_t instance_id = 0;
  double risk = 0.0;
  std::uint64_t seed = 0;
};

/// Instance ids enumerate (level, replication) pairs level-major.
std::vector<InstanceSetup> enumerate_instances(const ExperimentConfig& config);

/// Builds one tree for the instance and evaluates every planner on it.
std::vector<ResultRecord> run_instance(const ExperimentConfig& config,
                                       const InstanceSetup& setup);

/// Runs every instance, streaming CSV rows to `csv` (header first) in
/// instance-id order when it is non-null.
std::vector<ResultRecord> run_experiment(const ExperimentConfig& config,
                                         std::ostream* csv);

/// Opens `config.output_path` before any work; throws an io error if it
/// cannot be written.
std::vector<ResultRecord> run_experiment_to_file(const ExperimentConfig& config);

struct GroupSummary {
  PlannerKind planner = PlannerKind::Single;
  double band_lower = 0.0;
  double band_upper = 0.0;
  std::size_t successes = 0;
  stats::Interval success;
};

struct PlannerSummary {
  PlannerKind planner = PlannerKind::Single;
  stats::Interval path_cost_ratio;
  stats::Interval build_seconds;
  stats::Interval extract_seconds;
  std::size_t records = 0;
};

struct Summary {
  std::vector<GroupSummary> groups;
  std::vector<PlannerSummary> planners;
  std::vector<std::string> warnings;
};

/// Success per (planner, risk band of `band_width`) plus per-planner path-cost
/// ratio over successes and timing. Groups with fewer than two records are
/// left out with a warning.
Summary summarize(const std::vector<ResultRecord>& records,
                  double band_width = 0.1);
std::string format_summary(const Summary& summary);

struct PooledSuccess {
  std::size_t successes = 0;
  std::size_t trials = 0;
  double rate() const { return trials ? double(successes) / double(trials) : 0.0; }
};

/// Success counts of `planner` over records with risk >= `min_risk`.
PooledSuccess pooled_success(const std::vector<ResultRecord>& records,
                             PlannerKind planner, double min_risk);

}  // namespace mcplan::experiment
