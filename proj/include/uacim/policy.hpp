#pragma once

// Shared vocabulary between the game loop and the seed-selection policies.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uacim/graph.hpp"
#include "uacim/users.hpp"

namespace uacim {

enum class Party : std::uint8_t { kTrue, kFalse };

inline Affiliation affiliation_of(Party p) {
  return p == Party::kTrue ? Affiliation::kTrue : Affiliation::kFalse;
}
inline Party opponent(Party p) { return p == Party::kTrue ? Party::kFalse : Party::kTrue; }

enum class ActionKind : std::uint8_t { kActiveFirst, kBlockingFirst, kSubGreedyFirst, kCentralityFirst };

std::string_view to_string(ActionKind kind);
ActionKind parse_action(std::string_view name);

struct Action {
  ActionKind kind = ActionKind::kCentralityFirst;
  unsigned hops = 2;  // SGF radius
};

// Static per-episode scores on one graph view.
struct GraphScores {
  std::vector<double> degree;
  std::vector<double> hop_count;
  unsigned hops = 2;

  static GraphScores compute(const Adjacency& adj, unsigned hops);
};

struct GraphView {
  const ObservedGraph* graph = nullptr;
  const GraphScores* scores = nullptr;
};

struct SelectionContext {
  GraphView agent_view;       // what a learning agent observes
  GraphView heuristic_view;   // what fixed heuristics select on
  std::span<const UserState> users;
  std::span<const std::uint8_t> is_seed;
  std::span<const std::uint32_t> tie_rank;
  Party party = Party::kTrue;
  std::size_t round = 0;  // 1-based
};

// The policy's action distribution read as subjective beliefs.
struct ActionBeliefs {
  std::vector<double> raw_probs;
  std::vector<double> beliefs;  // after uncertainty maximization
  double vacuity = 0.0;
  double dissonance = 0.0;
  double entropy = 0.0;
};

struct SeedChoice {
  NodeId node = 0;
  ActionKind action = ActionKind::kCentralityFirst;
  std::optional<ActionBeliefs> beliefs;  // set by learning agents
  bool explored = false;
};

class SeedPolicy {
 public:
  virtual ~SeedPolicy() = default;

  virtual std::string name() const = 0;
  // Empty when no candidate remains.
  virtual std::optional<SeedChoice> choose(const SelectionContext& ctx, Rng& rng) = 0;
  // Instant reward earned after the round in which the last choice was made.
  virtual void reward(double /*value*/) {}
  virtual void begin_episode() {}
  virtual void end_episode() {}
};

}  // namespace uacim
