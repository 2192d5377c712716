#pragma once

// Experiment orchestration: train or load agents, run repeated evaluation
// episodes, aggregate, and write per-run CSVs, summary.json and table.txt.

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "uacim/agent.hpp"
#include "uacim/game.hpp"

namespace uacim {

enum class SweepAxis : std::uint8_t { kNone, kPropagations, kObservability, kBaseRate };

std::string_view to_string(SweepAxis axis);

struct SweepSpec {
  std::vector<double> p_tp;
  std::vector<double> observability;
  std::vector<double> base_rate;

  // Throws ConfigError unless exactly one axis is populated.
  SweepAxis axis() const;
  const std::vector<double>& values() const;
};

struct ExperimentSpec {
  std::string name = "experiment";
  std::filesystem::path dataset;
  GameConfig game;
  std::string tp = "DRL";  // DRL or a heuristic: AF, BF, SGF, CF, RANDOM
  AgentConfig tp_agent;
  std::string fp = "SGF";  // AF, BF, SGF, CF, RANDOM or DRL
  AgentConfig fp_agent;
  std::size_t runs = 50;
  std::size_t train_episodes = 200;
  std::optional<std::filesystem::path> tp_checkpoint;
  std::optional<std::filesystem::path> fp_checkpoint;
  std::filesystem::path out_dir = "runs";
  std::uint64_t seed = 1;
  bool parallel = true;
  bool write_outputs = true;
  SweepSpec sweep;

  // Throws ConfigError.
  void validate() const;
};

// Flat key/value document. Every key is optional; unknown keys are an error.
nlohmann::json spec_to_json(const ExperimentSpec& spec);
void apply_config(ExperimentSpec& spec, const nlohmann::json& config);
ExperimentSpec load_spec(const std::filesystem::path& path);

// Wraps load_edge_list, rethrowing failures as DatasetError.
std::shared_ptr<const SocialGraph> load_dataset(const std::filesystem::path& path);

struct RunSummary {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::size_t rounds = 0;
  std::size_t n_tp = 0;
  std::size_t n_fp = 0;
  double tp_percent = 0.0;
  double tp_accumulated = 0.0;
  double fp_accumulated = 0.0;
  double seconds_per_round = 0.0;
  double vacuity = kNaN;
  double dissonance = kNaN;
  double entropy = kNaN;
  bool exhausted = false;
  std::size_t additivity_violations = 0;
};

struct Report {
  std::string name;
  std::size_t num_nodes = 0;
  std::size_t num_edges = 0;
  std::vector<RunSummary> runs;
  double mean_n_tp = 0.0, sd_n_tp = 0.0;
  double mean_tp_percent = 0.0, sd_tp_percent = 0.0;
  double mean_seconds_per_round = 0.0;
  double mean_vacuity = kNaN, mean_dissonance = kNaN, mean_entropy = kNaN;
  bool exhausted = false;
  std::size_t additivity_violations = 0;
  double train_seconds = 0.0;
  double eval_seconds = 0.0;
  std::vector<CurvePoint> train_curve;

  nlohmann::json to_json() const;
  std::string table() const;
};

// Seed of evaluation run i.
inline std::uint64_t run_seed(std::uint64_t master, std::size_t i) { return stream_seed(master, i); }

// Policies used by an experiment: trained or loaded once, then shared
// read-only by every evaluation run.
struct TrainedAgents {
  std::shared_ptr<PolicyParams> tp;
  std::shared_ptr<PolicyParams> fp;
  std::vector<CurvePoint> curve;
  double seconds = 0.0;
};

TrainedAgents prepare_agents(const ExperimentSpec& spec, std::shared_ptr<const SocialGraph> graph);

Report evaluate(const ExperimentSpec& spec, std::shared_ptr<const SocialGraph> graph,
                const TrainedAgents& agents);

Report run_experiment(const ExperimentSpec& spec, std::shared_ptr<const SocialGraph> graph);
Report run_experiment(const ExperimentSpec& spec);

struct SweepReport {
  SweepAxis axis = SweepAxis::kNone;
  std::vector<double> values;
  std::vector<Report> reports;
};

SweepReport run_sweep(const ExperimentSpec& spec, std::shared_ptr<const SocialGraph> graph);
SweepReport run_sweep(const ExperimentSpec& spec);

// Host description stored next to timing numbers.
nlohmann::json hardware_fingerprint();

}  // namespace uacim
