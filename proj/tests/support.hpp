#pragma once

#include <memory>
#include <vector>

#include "uacim/game.hpp"
#include "uacim/graph.hpp"
#include "uacim/opinion.hpp"
#include "uacim/rng.hpp"

namespace uacim::testing {

// Valid opinion with masses drawn from a flat Dirichlet; a few components are
// zeroed now and then so the boundary cases show up.
inline Opinion random_opinion(Rng& rng, bool open_base_rate = true) {
  double x[3];
  for (double& v : x) {
    v = -std::log(1.0 - rng.uniform());
    if (rng.below(10) == 0) v = 0.0;
  }
  double s = x[0] + x[1] + x[2];
  if (s == 0.0) {
    x[2] = 1.0;
    s = 1.0;
  }
  Opinion op{x[0] / s, x[1] / s, 0.0, 0.5};
  op.u = 1.0 - op.b - op.d;
  if (op.u < 0.0) op.u = 0.0;
  op.a = open_base_rate ? 0.001 + 0.998 * rng.uniform() : rng.uniform();
  return op;
}

inline std::shared_ptr<const SocialGraph> graph_of(std::size_t n, std::vector<Edge> edges) {
  return std::make_shared<const SocialGraph>(n, std::move(edges));
}

inline std::shared_ptr<const SocialGraph> path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return graph_of(n, std::move(e));
}

inline std::shared_ptr<const SocialGraph> star_graph(std::size_t leaves) {
  std::vector<Edge> e;
  for (NodeId i = 1; i <= leaves; ++i) e.push_back({0, i});
  return graph_of(leaves + 1, std::move(e));
}

inline std::shared_ptr<const SocialGraph> random_graph(std::size_t n, std::size_t m, std::uint64_t seed) {
  Rng rng(seed);
  return std::make_shared<const SocialGraph>(synthetic_social_graph(n, m, 0.5, rng));
}

// Game state with every behavior profile forced to (read, share).
inline GameState fixed_game(std::shared_ptr<const SocialGraph> g, const GameConfig& cfg, double read = 1.0,
                            double share = 1.0) {
  Rng o(1), b(2);
  GameState st = new_game(std::move(g), cfg, o, b);
  for (UserState& u : st.users) u.behavior = {read, share};
  return st;
}

inline SelectionContext context_of(const GameState& st, Party party) {
  SelectionContext ctx;
  ctx.agent_view = {st.observed.get(), &st.observed_scores};
  ctx.heuristic_view = ctx.agent_view;
  ctx.users = st.users;
  ctx.is_seed = st.is_seed;
  ctx.tie_rank = st.graph->label_rank();
  ctx.party = party;
  ctx.round = st.round + 1;
  return ctx;
}

}  // namespace uacim::testing
