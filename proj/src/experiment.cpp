#include "mcplan/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "mcplan/error.hpp"
#include "mcplan/plan_extraction.hpp"
#include "mcplan/tree_io.hpp"

namespace mcplan::experiment {
namespace {

// Sub-streams of an instance seed.
constexpr std::uint64_t kWorldStream = 0;
constexpr std::uint64_t kSearchStream = 1;
constexpr std::uint64_t kPlannerStreamBase = 2;

constexpr double kDefaultExplorationC = 0.03;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  throw PlanningError(ErrorKind::Config, "invalid value '" + std::string(value) +
                                             "' for " + std::string(key));
}

template <class Int>
Int parse_int(std::string_view key, std::string_view text) {
  text = trim(text);
  Int value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) bad_value(key, text);
  return value;
}

double parse_real(std::string_view key, std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    bad_value(key, text);
  }
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  bad_value(key, text);
}

std::string format_fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

ExtractionConfig PlannerSpec::extraction() const {
  switch (kind) {
    case PlannerKind::Single: return ExtractionConfig::top_k(1);
    case PlannerKind::TopK: return ExtractionConfig::top_k(k);
    case PlannerKind::TopQuality: return {k, q, 0.0};
    case PlannerKind::Diverse: return ExtractionConfig::diverse(k, q, d);
    case PlannerKind::Random: break;
  }
  return {k, 0.0, 0.0};
}

std::string_view planner_name(PlannerKind kind) noexcept {
  switch (kind) {
    case PlannerKind::Single: return "single";
    case PlannerKind::Random: return "random";
    case PlannerKind::TopK: return "topk";
    case PlannerKind::TopQuality: return "topquality";
    case PlannerKind::Diverse: return "diverse";
  }
  return "unknown";
}

PlannerSpec parse_planner(std::string_view text) {
  const auto parts = split(trim(text), ':');
  const std::string_view name = trim(parts[0]);
  auto k_at = [&](std::size_t i, std::size_t fallback) {
    if (parts.size() <= i) return fallback;
    const std::string_view v = trim(parts[i]);
    if (v == "inf") return kUnboundedK;
    return parse_int<std::size_t>("planner k", v);
  };
  auto real_at = [&](std::size_t i, double fallback) {
    return parts.size() > i ? parse_real("planner bound", parts[i]) : fallback;
  };
  PlannerSpec spec;
  std::size_t max_parts = 1;
  if (name == "single") {
    spec = PlannerSpec::single();
  } else if (name == "random") {
    spec = PlannerSpec::random(k_at(1, 5));
    max_parts = 2;
  } else if (name == "topk") {
    spec = PlannerSpec::top_k(k_at(1, 5));
    max_parts = 2;
  } else if (name == "topquality") {
    spec = PlannerSpec::top_quality(k_at(1, 5), real_at(2, 0.8));
    max_parts = 3;
  } else if (name == "diverse") {
    spec = PlannerSpec::diverse(k_at(1, 5), real_at(2, 0.8), real_at(3, 0.5));
    max_parts = 4;
  } else {
    bad_value("planners", text);
  }
  if (parts.size() > max_parts) bad_value("planners", text);
  if (spec.q < 0.0 || spec.q > 1.0 || spec.d < 0.0 || spec.d > 1.0) {
    bad_value("planners", text);
  }
  return spec;
}

std::vector<PlannerSpec> parse_planners(std::string_view text) {
  std::vector<PlannerSpec> out;
  for (std::string_view part : split(text, ',')) {
    if (!trim(part).empty()) out.push_back(parse_planner(part));
  }
  if (out.empty()) bad_value("planners", text);
  return out;
}

std::string format_planner(const PlannerSpec& spec) {
  std::ostringstream out;
  out << planner_name(spec.kind);
  auto k_text = [&] {
    return spec.k == kUnboundedK ? std::string("inf") : std::to_string(spec.k);
  };
  switch (spec.kind) {
    case PlannerKind::Single: break;
    case PlannerKind::Random:
    case PlannerKind::TopK: out << ':' << k_text(); break;
    case PlannerKind::TopQuality: out << ':' << k_text() << ':' << spec.q; break;
    case PlannerKind::Diverse:
      out << ':' << k_text() << ':' << spec.q << ':' << spec.d;
      break;
  }
  return out.str();
}

std::vector<PlannerSpec> default_planners() {
  return {PlannerSpec::single(), PlannerSpec::random(5), PlannerSpec::top_k(5),
          PlannerSpec::top_quality(5, 0.8), PlannerSpec::diverse(5, 0.8, 0.5)};
}

std::vector<double> even_risk_levels(std::size_t count) {
  std::vector<double> levels;
  levels.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) {
    levels.push_back(0.9 * static_cast<double>(i) / static_cast<double>(count));
  }
  return levels;
}

ExperimentConfig desk_profile() {
  ExperimentConfig config;
  config.risk_levels = even_risk_levels(20);
  config.replications_per_level = 10;
  config.width = 20;
  config.height = 20;
  config.search.iterations = 5000;
  config.search.max_rollout_steps = 0;
  config.search.value_mode = ValueMode::Average;
  config.search.bandit.exploration_c = kDefaultExplorationC;
  return config;
}

ExperimentConfig full_profile() {
  ExperimentConfig config = desk_profile();
  config.risk_levels = even_risk_levels(100);
  config.replications_per_level = 20;
  config.search.iterations = 20000;
  return config;
}

ExperimentConfig profile_by_name(std::string_view name) {
  if (name == "desk") return desk_profile();
  if (name == "full" || name == "paper") return full_profile();
  bad_value("profile", name);
}

const std::vector<std::string>& setting_keys() {
  static const std::vector<std::string> keys = {
      "profile", "instances", "risk_levels", "replications_per_level",
      "width", "height", "iterations", "max_rollout_steps", "value_mode",
      "exploration_c", "policy", "diversity_refresh_interval",
      "diversity_set_size", "master_seed", "output_path", "planners",
      "detection_radius", "complete_plans", "timing", "threads"};
  return keys;
}

void apply_setting(ExperimentConfig& config, std::string_view key,
                   std::string_view value,
                   std::optional<std::size_t>* declared_instances) {
  value = trim(value);
  if (key == "profile") {
    config = profile_by_name(value);
  } else if (key == "instances") {
    const auto n = parse_int<std::size_t>(key, value);
    if (declared_instances) *declared_instances = n;
  } else if (key == "risk_levels") {
    if (value.find(',') == std::string_view::npos &&
        value.find('.') == std::string_view::npos) {
      config.risk_levels = even_risk_levels(parse_int<std::size_t>(key, value));
    } else {
      config.risk_levels.clear();
      for (std::string_view part : split(value, ',')) {
        const double r = parse_real(key, part);
        if (r < 0.0 || r > 1.0) bad_value(key, part);
        config.risk_levels.push_back(r);
      }
    }
  } else if (key == "replications_per_level") {
    config.replications_per_level = parse_int<std::size_t>(key, value);
  } else if (key == "width") {
    config.width = parse_int<int>(key, value);
  } else if (key == "height") {
    config.height = parse_int<int>(key, value);
  } else if (key == "iterations") {
    config.search.iterations = parse_int<std::size_t>(key, value);
  } else if (key == "max_rollout_steps") {
    config.search.max_rollout_steps = parse_int<std::size_t>(key, value);
  } else if (key == "value_mode") {
    config.search.value_mode = parse_value_mode(value);
  } else if (key == "exploration_c") {
    config.search.bandit.exploration_c = parse_real(key, value);
  } else if (key == "policy") {
    if (value == "ucb1") {
      config.search.bandit.policy = BanditPolicy::Ucb1;
    } else if (value == "diverse_ucb1") {
      config.search.bandit.policy = BanditPolicy::DiverseUcb1;
    } else {
      bad_value(key, value);
    }
  } else if (key == "diversity_refresh_interval") {
    config.search.bandit.diversity_refresh_interval =
        parse_int<std::size_t>(key, value);
  } else if (key == "diversity_set_size") {
    config.search.bandit.diversity_set_size = parse_int<std::size_t>(key, value);
  } else if (key == "master_seed") {
    config.master_seed = parse_int<std::uint64_t>(key, value);
  } else if (key == "output_path") {
    config.output_path = std::string(value);
  } else if (key == "planners") {
    config.planners = parse_planners(value);
  } else if (key == "detection_radius") {
    config.detection_radius = parse_int<int>(key, value);
  } else if (key == "complete_plans") {
    config.complete_plans = parse_bool(key, value);
  } else if (key == "timing") {
    config.record_timing = parse_bool(key, value);
  } else if (key == "threads") {
    config.threads = parse_int<std::size_t>(key, value);
  } else {
    throw PlanningError(ErrorKind::Config,
                        "unknown setting '" + std::string(key) + "'");
  }
}

std::vector<std::pair<std::string, std::string>> parse_settings(
    std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos || trim(line.substr(0, eq)).empty()) {
      throw PlanningError(ErrorKind::Config, "config line " +
                                                 std::to_string(line_no) +
                                                 ": expected key = value");
    }
    out.emplace_back(std::string(trim(line.substr(0, eq))),
                     std::string(trim(line.substr(eq + 1))));
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> load_settings_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PlanningError(ErrorKind::Config, "cannot read config " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_settings(buffer.str());
}

void validate(const ExperimentConfig& config,
              std::optional<std::size_t> declared_instances) {
  if (config.risk_levels.empty() || config.replications_per_level == 0) {
    throw PlanningError(ErrorKind::Config,
                        "need at least one risk level and one replication");
  }
  if (declared_instances && *declared_instances != config.instances()) {
    throw PlanningError(
        ErrorKind::Config,
        "instances = " + std::to_string(*declared_instances) +
            " does not equal risk_levels x replications_per_level = " +
            std::to_string(config.instances()));
  }
  if (config.width < 2 || config.height < 2) {
    throw PlanningError(ErrorKind::Config, "grid must be at least 2x2");
  }
  if (config.detection_radius < 0) {
    throw PlanningError(ErrorKind::Config, "detection_radius must be >= 0");
  }
  if (config.planners.empty()) {
    throw PlanningError(ErrorKind::Config, "no planners configured");
  }
  if (config.threads == 0) {
    throw PlanningError(ErrorKind::Config, "threads must be >= 1");
  }
  SearchConfig search = config.search;
  if (search.max_rollout_steps == 0) search.max_rollout_steps = 1;
  mcplan::validate(search);
}

std::string format_csv_row(const ResultRecord& r) {
  std::string row;
  row += std::to_string(r.instance_id);
  row += ',';
  row += format_fixed(r.risk, 6);
  row += ',';
  row += planner_name(r.planner);
  row += ',';
  row += r.success ? '1' : '0';
  row += ',';
  row += std::to_string(r.plans_emitted);
  row += ',';
  if (r.best_executed_path_length) {
    row += std::to_string(*r.best_executed_path_length);
  }
  row += ',';
  row += std::to_string(r.shortest_path);
  row += ',';
  row += format_fixed(r.tree_build_seconds, 6);
  row += ',';
  row += format_fixed(r.extraction_seconds, 6);
  return row;
}

std::vector<ResultRecord> parse_csv(std::string_view text) {
  std::vector<ResultRecord> out;
  bool header = true;
  for (std::string_view line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (header) {
      if (line != kCsvHeader) {
        throw PlanningError(ErrorKind::Parse, "unexpected CSV header");
      }
      header = false;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 9) throw PlanningError(ErrorKind::Parse, "CSV row needs 9 fields");
    ResultRecord r;
    try {
      r.instance_id = parse_int<std::size_t>("instance_id", f[0]);
      r.risk = parse_real("risk", f[1]);
      bool known = false;
      for (PlannerKind kind : {PlannerKind::Single, PlannerKind::Random,
                               PlannerKind::TopK, PlannerKind::TopQuality,
                               PlannerKind::Diverse}) {
        if (planner_name(kind) == f[2]) {
          r.planner = kind;
          known = true;
        }
      }
      if (!known) bad_value("planner", f[2]);
      r.success = parse_bool("success", f[3]);
      r.plans_emitted = parse_int<std::size_t>("plans_emitted", f[4]);
      if (!f[5].empty()) r.best_executed_path_length = parse_int<int>("best_path_len", f[5]);
      r.shortest_path = parse_int<int>("shortest_path", f[6]);
      r.tree_build_seconds = parse_real("build_s", f[7]);
      r.extraction_seconds = parse_real("extract_s", f[8]);
    } catch (const PlanningError& e) {
      throw PlanningError(ErrorKind::Parse, e.what());
    }
    out.push_back(r);
  }
  return out;
}

std::vector<ResultRecord> load_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PlanningError(ErrorKind::Io, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str());
}

PlanSet run_random_baseline(const SearchTree& tree, std::size_t k, Rng& rng) {
  PlanSet result;
  result.constraints = {k, 0.0, 0.0};
  if (k == 0) return result;
  std::vector<NodeId> leaves;
  for (std::size_t i = 0; i < tree.size(); ++i) {
    const NodeId id = tree.id_at(i);
    if (tree.node(id).visits > 0 && !tree.has_visited_children(id)) {
      leaves.push_back(id);
    }
  }
  std::shuffle(leaves.begin(), leaves.end(), rng);
  leaves.resize(std::min(k, leaves.size()));
  for (NodeId leaf : leaves) {
    result.plans.push_back(make_plan(tree, tree.path_to(leaf)));
  }
  return result;
}

PlanSet plan_set_for(const SearchTree& tree, const PlannerSpec& spec, Rng& rng) {
  if (spec.kind == PlannerKind::Random) {
    return run_random_baseline(tree, spec.k, rng);
  }
  return extract_plans(tree, spec.extraction());
}

std::vector<ActionId> complete_with_greedy(const grid::GridWorld& world,
                                           std::vector<ActionId> actions) {
  grid::Cell position = world.start();
  for (ActionId a : actions) {
    position = grid::apply(position, a);
    if (position == world.goal()) return actions;
  }
  while (position != world.goal() &&
         static_cast<int>(actions.size()) < world.horizon()) {
    const ActionId a = grid::greedy_action(world, position);
    actions.push_back(a);
    position = grid::apply(position, a);
  }
  return actions;
}

std::vector<InstanceSetup> enumerate_instances(const ExperimentConfig& config) {
  std::vector<InstanceSetup> out;
  out.reserve(config.instances());
  for (std::size_t level = 0; level < config.risk_levels.size(); ++level) {
    for (std::size_t rep = 0; rep < config.replications_per_level; ++rep) {
      const std::size_t id = level * config.replications_per_level + rep;
      out.push_back({id, config.risk_levels[level],
                     derive_seed(config.master_seed, id)});
    }
  }
  return out;
}

std::vector<ResultRecord> run_instance(const ExperimentConfig& config,
                                       const InstanceSetup& setup) {
  Rng world_rng = make_stream(setup.seed, kWorldStream);
  const grid::GridWorld world =
      grid::generate_instance(config.width, config.height, setup.risk,
                              world_rng, config.detection_radius);
  const grid::PlanningSimulator sim(world);

  SearchConfig search = config.search;
  search.seed = derive_seed(setup.seed, kSearchStream);
  if (search.max_rollout_steps == 0) {
    search.max_rollout_steps = static_cast<std::size_t>(world.horizon());
  }

  const auto build_start = std::chrono::steady_clock::now();
  const SearchTree tree = run_search(sim, search);
  const double build_seconds = seconds_since(build_start);
  const int shortest = grid::shortest_unobstructed_path(world);

  std::vector<ResultRecord> records;
  for (std::size_t i = 0; i < config.planners.size(); ++i) {
    const PlannerSpec& spec = config.planners[i];
    Rng planner_rng = make_stream(setup.seed, kPlannerStreamBase + i);
    const auto extract_start = std::chrono::steady_clock::now();
    const PlanSet plans = plan_set_for(tree, spec, planner_rng);
    const double extract_seconds = seconds_since(extract_start);

    ResultRecord r;
    r.instance_id = setup.instance_id;
    r.risk = setup.risk;
    r.planner = spec.kind;
    r.plans_emitted = plans.size();
    r.shortest_path = shortest;
    if (config.record_timing) {
      r.tree_build_seconds = build_seconds;
      r.extraction_seconds = extract_seconds;
    }
    for (const Plan& plan : plans.plans) {
      const auto actions = config.complete_plans
                               ? complete_with_greedy(world, plan.actions)
                               : plan.actions;
      const grid::ExecutionOutcome outcome = grid::execute_plan(world, actions);
      if (!outcome.reached_goal) continue;
      r.success = true;
      if (!r.best_executed_path_length ||
          outcome.path_length < *r.best_executed_path_length) {
        r.best_executed_path_length = outcome.path_length;
      }
    }
    records.push_back(r);
  }
  return records;
}

std::vector<ResultRecord> run_experiment(const ExperimentConfig& config,
                                         std::ostream* csv) {
  validate(config);
  const std::vector<InstanceSetup> setups = enumerate_instances(config);
  std::vector<std::vector<ResultRecord>> results(setups.size());
  std::vector<bool> done(setups.size(), false);
  std::size_t next_to_write = 0;
  std::mutex mutex;

  if (csv) *csv << kCsvHeader << '\n' << std::flush;

  // Rows leave in instance-id order whatever order workers finish in.
  auto publish = [&](std::size_t index, std::vector<ResultRecord> rows) {
    std::lock_guard lock(mutex);
    results[index] = std::move(rows);
    done[index] = true;
    while (next_to_write < setups.size() && done[next_to_write]) {
      if (csv) {
        for (const ResultRecord& r : results[next_to_write]) {
          *csv << format_csv_row(r) << '\n';
        }
        csv->flush();
      }
      ++next_to_write;
    }
  };

  const std::size_t workers = std::min(config.threads, setups.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < setups.size(); ++i) {
      publish(i, run_instance(config, setups[i]));
    }
  } else {
    std::size_t next_job = 0;
    std::exception_ptr failure;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          std::size_t job;
          {
            std::lock_guard lock(mutex);
            if (failure || next_job >= setups.size()) return;
            job = next_job++;
          }
          try {
            publish(job, run_instance(config, setups[job]));
          } catch (...) {
            std::lock_guard lock(mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<ResultRecord> all;
  all.reserve(setups.size() * config.planners.size());
  for (auto& rows : results) all.insert(all.end(), rows.begin(), rows.end());
  return all;
}

std::vector<ResultRecord> run_experiment_to_file(const ExperimentConfig& config) {
  validate(config);
  std::ofstream out(config.output_path, std::ios::binary | std::ios::trunc);
  if (config.output_path.empty() || !out) {
    throw PlanningError(ErrorKind::Io,
                        "cannot write output '" + config.output_path + "'");
  }
  auto records = run_experiment(config, &out);
  if (!out) throw PlanningError(ErrorKind::Io, "write to " + config.output_path + " failed");
  return records;
}

PooledSuccess pooled_success(const std::vector<ResultRecord>& records,
                             PlannerKind planner, double min_risk) {
  PooledSuccess out;
  for (const ResultRecord& r : records) {
    if (r.planner != planner || r.risk < min_risk) continue;
    ++out.trials;
    if (r.success) ++out.successes;
  }
  return out;
}

Summary summarize(const std::vector<ResultRecord>& records, double band_width) {
  Summary summary;
  std::vector<PlannerKind> order;
  for (const ResultRecord& r : records) {
    if (std::find(order.begin(), order.end(), r.planner) == order.end()) {
      order.push_back(r.planner);
    }
  }

  for (PlannerKind planner : order) {
    std::map<long, std::pair<std::size_t, std::size_t>> bands;
    std::vector<double> ratios, builds, extracts;
    std::size_t count = 0;
    for (const ResultRecord& r : records) {
      if (r.planner != planner) continue;
      ++count;
      const long band = static_cast<long>(std::floor(r.risk / band_width + 1e-9));
      auto& [successes, trials] = bands[band];
      ++trials;
      if (r.success) ++successes;
      if (r.success && r.best_executed_path_length && r.shortest_path > 0) {
        ratios.push_back(static_cast<double>(*r.best_executed_path_length) /
                         r.shortest_path);
      }
      builds.push_back(r.tree_build_seconds);
      extracts.push_back(r.extraction_seconds);
    }
    for (const auto& [band, counts] : bands) {
      const double lower = static_cast<double>(band) * band_width;
      if (counts.second < 2) {
        summary.warnings.push_back(
            std::string(planner_name(planner)) + " risk band starting at " +
            format_fixed(lower, 2) + " has fewer than 2 records; skipped");
        continue;
      }
      summary.groups.push_back({planner, lower, lower + band_width, counts.first,
                                stats::proportion_ci(counts.first, counts.second)});
    }
    summary.planners.push_back({planner, stats::mean_ci(ratios),
                                stats::mean_ci(builds), stats::mean_ci(extracts),
                                count});
  }
  return summary;
}

std::string format_summary(const Summary& summary) {
  std::ostringstream out;
  out << "success rate by risk band (95% CI)\n";
  out << "planner      band         n    rate     lower    upper\n";
  char line[160];
  for (const GroupSummary& g : summary.groups) {
    std::snprintf(line, sizeof line, "%-12s [%.2f,%.2f)  %-4zu %.4f   %.4f   %.4f\n",
                  std::string(planner_name(g.planner)).c_str(), g.band_lower,
                  g.band_upper, g.success.count, g.success.mean,
                  g.success.lower, g.success.upper);
    out << line;
  }
  out << "\npath cost and timing per planner (95% CI)\n";
  out << "planner      successes  cost_ratio          build_s              extract_s\n";
  for (const PlannerSummary& p : summary.planners) {
    std::snprintf(line, sizeof line,
                  "%-12s %-10zu %.4f+-%.4f     %.6f+-%.6f    %.6f+-%.6f\n",
                  std::string(planner_name(p.planner)).c_str(),
                  p.path_cost_ratio.count, p.path_cost_ratio.mean,
                  p.path_cost_ratio.upper - p.path_cost_ratio.mean,
                  p.build_seconds.mean, p.build_seconds.upper - p.build_seconds.mean,
                  p.extract_seconds.mean,
                  p.extract_seconds.upper - p.extract_seconds.mean);
    out << line;
  }
  for (const std::string& w : summary.warnings) out << "warning: " << w << '\n';
  return out.str();
}

}  // namespace mcplan::experiment
