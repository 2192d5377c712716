#include "uacim/heuristics.hpp"

#include <string>

#include "uacim/errors.hpp"
#include "uacim/kernels.hpp"

namespace uacim {

std::string_view to_string(ActionKind kind) {
  switch (kind) {
    case ActionKind::kActiveFirst: return "AF";
    case ActionKind::kBlockingFirst: return "BF";
    case ActionKind::kSubGreedyFirst: return "SGF";
    case ActionKind::kCentralityFirst: return "CF";
  }
  return "?";
}

ActionKind parse_action(std::string_view name) {
  if (name == "AF") return ActionKind::kActiveFirst;
  if (name == "BF") return ActionKind::kBlockingFirst;
  if (name == "SGF") return ActionKind::kSubGreedyFirst;
  if (name == "CF") return ActionKind::kCentralityFirst;
  throw DomainError("unknown action '" + std::string(name) + "'");
}

GraphScores GraphScores::compute(const Adjacency& adj, unsigned hops) {
  GraphScores s;
  s.hops = hops;
  s.degree.resize(adj.num_nodes());
  for (std::size_t v = 0; v < adj.num_nodes(); ++v) {
    s.degree[v] = static_cast<double>(adj.degree(static_cast<NodeId>(v)));
  }
  const auto counts = kernels::hop_counts(adj, hops);
  s.hop_count.assign(counts.begin(), counts.end());
  return s;
}

namespace {

std::vector<std::uint8_t> candidate_mask(const SelectionContext& ctx) {
  std::vector<std::uint8_t> mask(ctx.is_seed.size());
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = ctx.is_seed[i] ? 0 : 1;
  return mask;
}

std::optional<NodeId> pick(std::span<const double> score, std::span<const std::uint8_t> eligible,
                           std::span<const std::uint32_t> tie_rank) {
  const std::size_t best = kernels::masked_argmax(score, eligible, tie_rank);
  if (best == kernels::npos) return std::nullopt;
  return static_cast<NodeId>(best);
}

}  // namespace

std::optional<NodeId> select_seed(const Action& action, const GraphView& view,
                                  const SelectionContext& ctx) {
  const Adjacency& adj = view.graph->adjacency();
  auto candidates = candidate_mask(ctx);

  switch (action.kind) {
    case ActionKind::kActiveFirst: {
      std::vector<double> activity(ctx.users.size());
      for (std::size_t i = 0; i < activity.size(); ++i) {
        activity[i] = ctx.users[i].behavior.activity();
      }
      return pick(activity, candidates, ctx.tie_rank);
    }
    case ActionKind::kCentralityFirst:
      return pick(view.scores->degree, candidates, ctx.tie_rank);
    case ActionKind::kSubGreedyFirst: {
      if (action.hops == view.scores->hops) {
        return pick(view.scores->hop_count, candidates, ctx.tie_rank);
      }
      const auto counts = kernels::hop_counts(adj, action.hops);
      const std::vector<double> score(counts.begin(), counts.end());
      return pick(score, candidates, ctx.tie_rank);
    }
    case ActionKind::kBlockingFirst: {
      const auto mask = free_mask(ctx.users);
      const auto fdeg = kernels::free_degrees(adj, mask);
      const std::vector<double> score(fdeg.begin(), fdeg.end());
      const Affiliation enemy = affiliation_of(opponent(ctx.party));
      std::vector<std::uint8_t> opposing(ctx.users.size());
      for (std::size_t i = 0; i < opposing.size(); ++i) {
        opposing[i] = affiliation(ctx.users[i].opinion) == enemy ? 1 : 0;
      }
      std::vector<std::uint8_t> exposed(candidates.size(), 0);
      bool any = false;
      for (std::size_t v = 0; v < exposed.size(); ++v) {
        if (!candidates[v]) continue;
        for (NodeId y : adj.neighbors(static_cast<NodeId>(v))) {
          if (opposing[y]) {
            exposed[v] = 1;
            any = true;
            break;
          }
        }
      }
      return pick(score, any ? exposed : candidates, ctx.tie_rank);
    }
  }
  return std::nullopt;
}

std::string HeuristicPolicy::name() const { return std::string(to_string(action_.kind)); }

std::optional<SeedChoice> HeuristicPolicy::choose(const SelectionContext& ctx, Rng& /*rng*/) {
  const auto node = select_seed(action_, ctx.heuristic_view, ctx);
  if (!node) return std::nullopt;
  return SeedChoice{*node, action_.kind, std::nullopt, false};
}

std::optional<SeedChoice> RandomPolicy::choose(const SelectionContext& ctx, Rng& rng) {
  std::vector<NodeId> pool;
  for (std::size_t i = 0; i < ctx.is_seed.size(); ++i) {
    if (!ctx.is_seed[i]) pool.push_back(static_cast<NodeId>(i));
  }
  if (pool.empty()) return std::nullopt;
  return SeedChoice{pool[rng.below(pool.size())], ActionKind::kActiveFirst, std::nullopt, true};
}

std::optional<SeedChoice> ScriptedPolicy::choose(const SelectionContext& ctx, Rng& /*rng*/) {
  while (next_ < script_.size()) {
    const NodeId node = script_[next_++];
    if (node < ctx.is_seed.size() && !ctx.is_seed[node]) {
      return SeedChoice{node, ActionKind::kActiveFirst, std::nullopt, false};
    }
  }
  return std::nullopt;
}

std::unique_ptr<SeedPolicy> policy_for(Action action) {
  return std::make_unique<HeuristicPolicy>(action);
}

}  // namespace uacim
