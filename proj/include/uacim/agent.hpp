#pragma once

// PPO seed-selection agent. The policy maps a 2-feature network state to a
// distribution over seed-selection heuristics; the distribution is read as
// multinomial beliefs whose vacuity and dissonance gate exploration.

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uacim/game.hpp"
#include "uacim/mlp.hpp"
#include "uacim/policy.hpp"

namespace uacim {

struct StateVector {
  double free_edges = 0.0;   // edges among free nodes / |E'|
  double free_degree = 0.0;  // max degree in the free-induced subgraph / max degree of G'
};

// Normalized state from the agent's view of the network.
StateVector state_vector(const GraphView& view, std::span<const UserState> users);

enum class EEStrategy : std::uint8_t { kVac, kDis, kVd, kEnt, kEps, kEr, kUcb };

std::string_view to_string(EEStrategy s);
EEStrategy parse_strategy(std::string_view name);  // "VD_EE", "VD-EE" or "VD"

struct EEParams {
  EEStrategy strategy = EEStrategy::kVd;
  double vacuity_threshold = 0.01;
  double dissonance_threshold = 0.6;
  double entropy_threshold = 0.6;
  double eps_start = 1.0;
  double eps_decay = 0.995;
  double eps_floor = 0.05;
  double entropy_coef = 0.01;  // PPO entropy bonus, ER_EE only
  double ucb_c = 1.4142135623730951;

  void validate() const;
  double epsilon(std::size_t episode) const;
};

enum class Scheme : std::uint8_t { kAll, kNoActive };  // DRIM-A / DRIM-NA

std::string_view to_string(Scheme s);
Scheme parse_scheme(std::string_view name);
std::vector<ActionKind> scheme_actions(Scheme s);

struct PpoParams {
  double lr_actor = 3e-4;
  double lr_critic = 1e-3;
  double clip = 0.2;
  unsigned epochs = 80;
  double gamma = 0.95;
  double value_coef = 0.5;
  std::size_t update_every = 4;  // episodes per PPO update
  int hidden = 64;

  void validate() const;
};

struct AgentConfig {
  Scheme scheme = Scheme::kAll;
  EEParams ee;
  PpoParams ppo;
  bool gates_in_training = true;  // false: sample from the policy while training
  unsigned sgf_hops = 2;
};

struct PolicyParams {
  Mlp actor;
  Mlp critic;
  std::vector<ActionKind> actions;

  static PolicyParams init(const AgentConfig& config, std::uint64_t seed);
  std::size_t num_actions() const { return actions.size(); }
  bool finite() const { return actor.finite() && critic.finite(); }
};

struct PolicyOutput {
  std::vector<double> probs;
  double value = 0.0;
};

// Throws NumericError on non-finite logits or value.
PolicyOutput policy_forward(const PolicyParams& params, const StateVector& s);

// Softmax of one column of logits, max-shifted.
std::vector<double> softmax(std::span<const double> logits);

ActionBeliefs quantify_uncertainty(std::span<const double> raw_probs);

enum class Decision : std::uint8_t { kExplore, kExploit };

struct DecisionStats {
  std::size_t episode = 0;
  std::vector<std::size_t> visits;  // per action, for UCB
};

Decision decide(const EEParams& ee, const ActionBeliefs& ab, const DecisionStats& stats, Rng& rng);

std::size_t select_action(const EEParams& ee, const ActionBeliefs& ab, Decision decision,
                          const DecisionStats& stats, Rng& rng);

struct Step {
  StateVector state;
  std::size_t action = 0;
  double log_prob = 0.0;
  double reward = 0.0;
  double value = 0.0;
};

using Trajectory = std::vector<Step>;

// G_t = r_t + gamma * G_{t+1}.
std::vector<double> returns_to_go(std::span<const double> rewards, double gamma);

// Flattened training batch with normalized returns.
struct PpoBatch {
  Eigen::MatrixXd states;  // 2 x N
  std::vector<std::size_t> actions;
  Eigen::VectorXd old_log_probs;
  Eigen::VectorXd returns;
};

PpoBatch make_batch(std::span<const Trajectory> trajectories, double gamma, bool normalize = true);

struct LossTerms {
  double surrogate = 0.0;  // mean clipped surrogate (to be maximized)
  double entropy = 0.0;    // mean policy entropy
  double value_loss = 0.0; // mean squared error
};

// Actor loss  -surrogate - entropy_coef * entropy, advantages = returns - V(s).
// Critic loss value_coef * MSE. Gradients are exact.
struct LossGrad {
  LossTerms terms;
  double actor_loss = 0.0;
  double critic_loss = 0.0;
  std::vector<DenseLayer> actor_grad;
  std::vector<DenseLayer> critic_grad;
};

LossGrad ppo_loss(const PolicyParams& params, const PpoBatch& batch, const PpoParams& ppo,
                  double entropy_coef);

struct Optimizers {
  Adam actor;
  Adam critic;
  Optimizers() = default;
  Optimizers(const PolicyParams& params, const PpoParams& ppo);
};

struct UpdateStats {
  LossTerms first;
  LossTerms last;
  std::size_t samples = 0;
};

// K epochs of full-batch Adam on the clipped objective. Throws NumericError on
// a non-finite loss and leaves `params` untouched in that case.
UpdateStats ppo_update(PolicyParams& params, Optimizers& opt, std::span<const Trajectory> batch,
                       const PpoParams& ppo, double entropy_coef);

// SeedPolicy backed by a policy network. In training mode it records a
// trajectory per episode and runs a PPO update every `update_every` episodes.
class DrlPolicy final : public SeedPolicy {
 public:
  DrlPolicy(std::shared_ptr<PolicyParams> params, AgentConfig config, bool training);

  std::string name() const override;
  std::optional<SeedChoice> choose(const SelectionContext& ctx, Rng& rng) override;
  void reward(double value) override;
  void begin_episode() override;
  void end_episode() override;

  // Runs an update on whatever is buffered.
  void flush();

  void set_training(bool training) { training_ = training; }
  std::size_t episodes_seen() const { return episode_; }
  void set_episode(std::size_t e) { episode_ = e; }
  const std::vector<UpdateStats>& updates() const { return updates_; }

 private:
  std::shared_ptr<PolicyParams> params_;
  AgentConfig config_;
  bool training_;
  Optimizers opt_;
  DecisionStats stats_;
  std::size_t episode_ = 0;
  Trajectory current_;
  std::vector<Trajectory> buffer_;
  std::vector<UpdateStats> updates_;
};

struct CurvePoint {
  std::size_t episode = 0;
  double accumulated_reward = 0.0;
  double mean_vacuity = 0.0;
  double mean_dissonance = 0.0;
  double mean_entropy = 0.0;
  double explore_fraction = 0.0;
  double tp_percent = 0.0;
};

struct TrainResult {
  std::shared_ptr<PolicyParams> tp;
  std::shared_ptr<PolicyParams> fp;  // set when FP is also trained
  std::vector<CurvePoint> curve;     // TP side
  std::uint64_t seed = 0;
  std::size_t episodes = 0;
};

// Trains a TP agent against `fp`. Episode e uses seed stream_seed(seed, e).
TrainResult train(std::shared_ptr<const SocialGraph> graph, const GameConfig& game,
                  const AgentConfig& agent, SeedPolicy& fp, std::size_t episodes,
                  std::uint64_t seed);

// Trains TP and FP agents against each other.
TrainResult co_train(std::shared_ptr<const SocialGraph> graph, const GameConfig& game,
                     const AgentConfig& tp_agent, const AgentConfig& fp_agent,
                     std::size_t episodes, std::uint64_t seed);

void write_curve_csv(std::span<const CurvePoint> curve, const std::filesystem::path& path);

struct Checkpoint {
  PolicyParams params;
  AgentConfig config;
  std::uint64_t seed = 0;
  std::size_t episodes = 0;
};

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path);
// Throws CheckpointError.
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace uacim
