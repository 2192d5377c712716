#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "uacim/policy.hpp"

namespace uacim {

// Deterministic seed selectors over the given view. Candidates are all
// non-seed nodes; ties break toward the lowest dataset id.
//   AF  - max reading * sharing probability
//   BF  - max free degree among candidates adjacent to an opponent-affiliated
//         node; falls back to the global max free degree when none is exposed
//   SGF - max number of nodes within `hops` hops
//   CF  - max degree
std::optional<NodeId> select_seed(const Action& action, const GraphView& view,
                                  const SelectionContext& ctx);

// Applies one fixed heuristic every round.
class HeuristicPolicy final : public SeedPolicy {
 public:
  explicit HeuristicPolicy(Action action) : action_(action) {}
  std::string name() const override;
  std::optional<SeedChoice> choose(const SelectionContext& ctx, Rng& rng) override;

 private:
  Action action_;
};

// Uniformly random candidate.
class RandomPolicy final : public SeedPolicy {
 public:
  std::string name() const override { return "RANDOM"; }
  std::optional<SeedChoice> choose(const SelectionContext& ctx, Rng& rng) override;
};

// Plays a fixed list of internal node ids in order, skipping any that are
// already seeds. Used for reproducibility checks.
class ScriptedPolicy final : public SeedPolicy {
 public:
  explicit ScriptedPolicy(std::vector<NodeId> script) : script_(std::move(script)) {}
  std::string name() const override { return "SCRIPTED"; }
  std::optional<SeedChoice> choose(const SelectionContext& ctx, Rng& rng) override;
  void begin_episode() override { next_ = 0; }

 private:
  std::vector<NodeId> script_;
  std::size_t next_ = 0;
};

std::unique_ptr<SeedPolicy> policy_for(Action action);

}  // namespace uacim
