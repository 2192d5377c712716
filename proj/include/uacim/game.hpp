#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "uacim/graph.hpp"
#include "uacim/policy.hpp"
#include "uacim/users.hpp"

namespace uacim {

struct GameConfig {
  std::size_t rounds = 50;               // seeds per party
  unsigned tp_propagations = 1;
  unsigned fp_propagations = 1;
  double gamma = 0.95;
  TrustModel trust;
  double base_rate = 0.5;                // legitimate users' prior
  double observability = 1.0;
  unsigned sgf_hops = 2;
  bool heuristics_use_observed = true;   // false: fixed heuristics see the true graph
  bool recascade_all_seeds = false;      // cascade from every seed of the party each round
  bool audit_opinions = false;           // check additivity of every updated opinion

  void validate() const;
};

struct GameState {
  std::shared_ptr<const SocialGraph> graph;
  std::shared_ptr<const ObservedGraph> observed;
  GraphScores observed_scores;
  std::shared_ptr<const ObservedGraph> full;  // same object as `observed` when rho == 1
  GraphScores full_scores;
  std::vector<UserState> users;
  std::vector<std::uint8_t> is_seed;
  std::vector<NodeId> tp_seeds;
  std::vector<NodeId> fp_seeds;
  std::size_t round = 0;

  // Opinion audit counters (filled when GameConfig::audit_opinions is set).
  std::size_t opinions_checked = 0;
  std::size_t additivity_violations = 0;
};

// Fresh network: every user legitimate, behavior profiles drawn, observed
// edges drawn from `observe_rng`.
GameState new_game(std::shared_ptr<const SocialGraph> graph, const GameConfig& config,
                   Rng& observe_rng, Rng& behavior_rng);

// Turns `node` into a seed of `party`, overwriting its opinion.
void promote(GameState& state, NodeId node, Party party, const GameConfig& config);

// BFS over the true graph from `origin`, repeated `repetitions` times. A node
// reached from sender w reads with probability P_r; a reading legitimate user
// fuses w's current opinion, then forwards with probability P_s. Each node
// reads at most once per repetition; seeds neither read nor forward.
void cascade(GameState& state, NodeId origin, unsigned repetitions, const GameConfig& config,
             Rng& rng);

struct InfluenceCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t neutral = 0;
};

InfluenceCounts influence_counts(std::span<const UserState> users);

// Sum of b over TP-affiliated users, or of d over FP-affiliated users.
double instant_reward(std::span<const UserState> users, Party party);

// sum_{t=1..T} gamma^(T-(t-1)) R_t.
double accumulated_reward(std::span<const double> rewards, double gamma);

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct RoundLog {
  std::size_t t = 0;
  std::int64_t fp_node = -1;  // dataset id, -1 when no selection
  std::int64_t tp_node = -1;
  std::optional<ActionKind> fp_action;
  std::optional<ActionKind> tp_action;
  double fp_reward = 0.0;
  double tp_reward = 0.0;
  std::size_t n_tp = 0;
  std::size_t n_fp = 0;
  // TP decision uncertainty; NaN when TP is not a learning agent.
  double vacuity = kNaN;
  double dissonance = kNaN;
  double entropy = kNaN;
  bool tp_explored = false;
  double seconds = 0.0;
};

struct EpisodeResult {
  std::vector<RoundLog> rounds;
  std::size_t num_nodes = 0;
  double tp_accumulated = 0.0;
  double fp_accumulated = 0.0;
  InfluenceCounts final_counts;
  bool exhausted = false;
  std::size_t opinions_checked = 0;
  std::size_t additivity_violations = 0;

  double tp_percent() const;
  double mean_seconds_per_round() const;
  double mean_vacuity() const;
  double mean_dissonance() const;
  double mean_entropy() const;
  double explore_fraction() const;
};

// Plays one round: FP selects and cascades p_FP times, then TP selects and
// cascades p_TP times. Returns nullopt when FP has no candidate left.
std::optional<RoundLog> play_round(GameState& state, SeedPolicy& fp, SeedPolicy& tp,
                                   const GameConfig& config, Rng& cascade_rng, Rng& fp_rng,
                                   Rng& tp_rng);

// Full episode. All randomness derives from `seed` through independent streams.
EpisodeResult run_episode(std::shared_ptr<const SocialGraph> graph, const GameConfig& config,
                          SeedPolicy& fp, SeedPolicy& tp, std::uint64_t seed);

// One row per round: t,fp_node,tp_node,R_FP,R_TP,n_TP,n_FP,vacuity,dissonance,entropy
void write_rounds_csv(const EpisodeResult& result, const std::filesystem::path& path);

}  // namespace uacim
