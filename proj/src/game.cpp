#include "uacim/game.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>

#include "uacim/errors.hpp"

namespace uacim {

void GameConfig::validate() const {
  if (rounds < 1) throw DomainError("rounds must be >= 1");
  if (tp_propagations < 1 || fp_propagations < 1) throw DomainError("propagations must be >= 1");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw DomainError("gamma must lie in [0, 1]");
  if (!(base_rate >= 0.0 && base_rate <= 1.0)) throw DomainError("base rate must lie in [0, 1]");
  if (!(observability >= 0.0 && observability <= 1.0)) {
    throw DomainError("observability must lie in [0, 1]");
  }
  if (!(trust.vacuity_threshold >= 0.0 && trust.vacuity_threshold <= 1.0) ||
      !(trust.dissonance_threshold >= 0.0 && trust.dissonance_threshold <= 1.0)) {
    throw DomainError("trust thresholds must lie in [0, 1]");
  }
  if (sgf_hops < 1) throw DomainError("SGF hop radius must be >= 1");
}

GameState new_game(std::shared_ptr<const SocialGraph> graph, const GameConfig& config,
                   Rng& observe_rng, Rng& behavior_rng) {
  config.validate();
  GameState state;
  state.graph = graph;
  const auto order = edge_permutation(graph->num_edges(), observe_rng);
  state.observed = std::make_shared<ObservedGraph>(graph, config.observability, order);
  state.observed_scores = GraphScores::compute(state.observed->adjacency(), config.sgf_hops);
  if (config.observability < 1.0 && !config.heuristics_use_observed) {
    state.full = std::make_shared<ObservedGraph>(graph, 1.0, order);
    state.full_scores = GraphScores::compute(state.full->adjacency(), config.sgf_hops);
  } else {
    state.full = state.observed;
  }
  const std::size_t n = graph->num_nodes();
  state.users.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    state.users.push_back(
        init_user(static_cast<std::uint32_t>(i), UserRole::kLegitimate, config.base_rate, behavior_rng));
  }
  state.is_seed.assign(n, 0);
  return state;
}

void promote(GameState& state, NodeId node, Party party, const GameConfig& config) {
  UserState& user = state.users[node];
  user.role = party == Party::kTrue ? UserRole::kTip : UserRole::kFip;
  user.opinion = initial_opinion(user.role, config.base_rate);
  state.is_seed[node] = 1;
  (party == Party::kTrue ? state.tp_seeds : state.fp_seeds).push_back(node);
}

void cascade(GameState& state, NodeId origin, unsigned repetitions, const GameConfig& config,
             Rng& rng) {
  const SocialGraph& g = *state.graph;
  auto& users = state.users;
  std::vector<std::uint8_t> read(g.num_nodes());
  std::vector<NodeId> frontier, next;
  for (unsigned rep = 0; rep < repetitions; ++rep) {
    std::fill(read.begin(), read.end(), 0);
    read[origin] = 1;
    frontier.assign(1, origin);
    while (!frontier.empty()) {
      next.clear();
      for (NodeId sender : frontier) {
        const Opinion message = users[sender].opinion;
        for (NodeId v : g.neighbors(sender)) {
          if (read[v] || users[v].role != UserRole::kLegitimate) continue;
          if (!rng.bernoulli(users[v].behavior.read)) continue;
          read[v] = 1;
          receive_opinion(config.trust, users[v], message);
          if (config.audit_opinions) {
            ++state.opinions_checked;
            if (!users[v].opinion.valid()) ++state.additivity_violations;
          }
          if (rng.bernoulli(users[v].behavior.share)) next.push_back(v);
        }
      }
      frontier.swap(next);
    }
  }
}

InfluenceCounts influence_counts(std::span<const UserState> users) {
  InfluenceCounts c;
  for (const UserState& u : users) {
    switch (affiliation(u.opinion)) {
      case Affiliation::kTrue: ++c.tp; break;
      case Affiliation::kFalse: ++c.fp; break;
      case Affiliation::kNeutral: ++c.neutral; break;
    }
  }
  return c;
}

double instant_reward(std::span<const UserState> users, Party party) {
  const Affiliation side = affiliation_of(party);
  double total = 0.0;
  for (const UserState& u : users) {
    if (affiliation(u.opinion) != side) continue;
    total += party == Party::kTrue ? u.opinion.b : u.opinion.d;
  }
  return total;
}

double accumulated_reward(std::span<const double> rewards, double gamma) {
  const std::size_t horizon = rewards.size();
  double total = 0.0;
  for (std::size_t t = 1; t <= horizon; ++t) {
    total += std::pow(gamma, static_cast<double>(horizon - (t - 1))) * rewards[t - 1];
  }
  return total;
}

namespace {

double mean_finite(const std::vector<RoundLog>& rounds, double RoundLog::*field) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const RoundLog& r : rounds) {
    if (std::isfinite(r.*field)) {
      sum += r.*field;
      ++n;
    }
  }
  return n ? sum / static_cast<double>(n) : kNaN;
}

SelectionContext make_context(const GameState& state, Party party) {
  SelectionContext ctx;
  ctx.agent_view = {state.observed.get(), &state.observed_scores};
  ctx.heuristic_view = state.full == state.observed
                           ? ctx.agent_view
                           : GraphView{state.full.get(), &state.full_scores};
  ctx.users = state.users;
  ctx.is_seed = state.is_seed;
  ctx.tie_rank = state.graph->label_rank();
  ctx.party = party;
  ctx.round = state.round + 1;
  return ctx;
}

void spread(GameState& state, Party party, NodeId fresh, unsigned repetitions,
            const GameConfig& config, Rng& rng) {
  if (!config.recascade_all_seeds) {
    cascade(state, fresh, repetitions, config, rng);
    return;
  }
  const auto& seeds = party == Party::kTrue ? state.tp_seeds : state.fp_seeds;
  for (NodeId s : seeds) cascade(state, s, repetitions, config, rng);
}

}  // namespace

double EpisodeResult::tp_percent() const {
  return num_nodes ? 100.0 * static_cast<double>(final_counts.tp) / static_cast<double>(num_nodes)
                   : 0.0;
}

double EpisodeResult::mean_seconds_per_round() const { return mean_finite(rounds, &RoundLog::seconds); }
double EpisodeResult::mean_vacuity() const { return mean_finite(rounds, &RoundLog::vacuity); }
double EpisodeResult::mean_dissonance() const { return mean_finite(rounds, &RoundLog::dissonance); }
double EpisodeResult::mean_entropy() const { return mean_finite(rounds, &RoundLog::entropy); }

double EpisodeResult::explore_fraction() const {
  if (rounds.empty()) return 0.0;
  std::size_t n = 0;
  for (const RoundLog& r : rounds) n += r.tp_explored ? 1 : 0;
  return static_cast<double>(n) / static_cast<double>(rounds.size());
}

std::optional<RoundLog> play_round(GameState& state, SeedPolicy& fp, SeedPolicy& tp,
                                   const GameConfig& config, Rng& cascade_rng, Rng& fp_rng,
                                   Rng& tp_rng) {
  const auto start = std::chrono::steady_clock::now();
  RoundLog log;
  log.t = state.round + 1;

  const auto fp_choice = fp.choose(make_context(state, Party::kFalse), fp_rng);
  if (!fp_choice) return std::nullopt;
  promote(state, fp_choice->node, Party::kFalse, config);
  log.fp_node = state.graph->label(fp_choice->node);
  log.fp_action = fp_choice->action;
  spread(state, Party::kFalse, fp_choice->node, config.fp_propagations, config, cascade_rng);

  const auto tp_choice = tp.choose(make_context(state, Party::kTrue), tp_rng);
  if (tp_choice) {
    promote(state, tp_choice->node, Party::kTrue, config);
    log.tp_node = state.graph->label(tp_choice->node);
    log.tp_action = tp_choice->action;
    if (tp_choice->beliefs) {
      log.vacuity = tp_choice->beliefs->vacuity;
      log.dissonance = tp_choice->beliefs->dissonance;
      log.entropy = tp_choice->beliefs->entropy;
    }
    log.tp_explored = tp_choice->explored;
    spread(state, Party::kTrue, tp_choice->node, config.tp_propagations, config, cascade_rng);
  }

  state.round = log.t;
  log.fp_reward = instant_reward(state.users, Party::kFalse);
  log.tp_reward = instant_reward(state.users, Party::kTrue);
  const InfluenceCounts counts = influence_counts(state.users);
  log.n_tp = counts.tp;
  log.n_fp = counts.fp;
  fp.reward(log.fp_reward);
  if (tp_choice) tp.reward(log.tp_reward);
  log.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return log;
}

EpisodeResult run_episode(std::shared_ptr<const SocialGraph> graph, const GameConfig& config,
                          SeedPolicy& fp, SeedPolicy& tp, std::uint64_t seed) {
  Rng observe_rng(stream_seed(seed, 0));
  Rng behavior_rng(stream_seed(seed, 1));
  Rng cascade_rng(stream_seed(seed, 2));
  Rng fp_rng(stream_seed(seed, 3));
  Rng tp_rng(stream_seed(seed, 4));

  GameState state = new_game(std::move(graph), config, observe_rng, behavior_rng);
  fp.begin_episode();
  tp.begin_episode();

  EpisodeResult result;
  result.num_nodes = state.users.size();
  std::vector<double> tp_rewards, fp_rewards;
  for (std::size_t t = 0; t < config.rounds; ++t) {
    auto log = play_round(state, fp, tp, config, cascade_rng, fp_rng, tp_rng);
    if (!log) {
      result.exhausted = true;
      break;
    }
    if (log->tp_node < 0) result.exhausted = true;
    tp_rewards.push_back(log->tp_reward);
    fp_rewards.push_back(log->fp_reward);
    result.rounds.push_back(*log);
    if (result.exhausted) break;
  }
  fp.end_episode();
  tp.end_episode();

  result.tp_accumulated = accumulated_reward(tp_rewards, config.gamma);
  result.fp_accumulated = accumulated_reward(fp_rewards, config.gamma);
  result.final_counts = influence_counts(state.users);
  result.opinions_checked = state.opinions_checked;
  result.additivity_violations = state.additivity_violations;
  return result;
}

void write_rounds_csv(const EpisodeResult& result, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << "t,fp_node,tp_node,R_FP,R_TP,n_TP,n_FP,vacuity,dissonance,entropy\n";
  out.precision(10);
  auto num = [&](double x) {
    if (std::isfinite(x)) out << x;
  };
  for (const RoundLog& r : result.rounds) {
    out << r.t << ',' << r.fp_node << ',' << r.tp_node << ',';
    num(r.fp_reward);
    out << ',';
    num(r.tp_reward);
    out << ',' << r.n_tp << ',' << r.n_fp << ',';
    num(r.vacuity);
    out << ',';
    num(r.dissonance);
    out << ',';
    num(r.entropy);
    out << '\n';
  }
}

}  // namespace uacim
