#include "uacim/agent.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "uacim/errors.hpp"
#include "uacim/heuristics.hpp"
#include "uacim/kernels.hpp"
#include "uacim/opinion.hpp"

namespace uacim {

StateVector state_vector(const GraphView& view, std::span<const UserState> users) {
  const ObservedGraph& og = *view.graph;
  const StateFeatures f = state_features(og, users);
  StateVector s;
  if (og.num_edges() > 0) {
    s.free_edges = static_cast<double>(f.free_edge_count) / static_cast<double>(og.num_edges());
  }
  if (og.max_degree() > 0) {
    s.free_degree = static_cast<double>(f.max_free_degree) / static_cast<double>(og.max_degree());
  }
  return s;
}

std::string_view to_string(EEStrategy s) {
  switch (s) {
    case EEStrategy::kVac: return "VAC_EE";
    case EEStrategy::kDis: return "DIS_EE";
    case EEStrategy::kVd: return "VD_EE";
    case EEStrategy::kEnt: return "ENT_EE";
    case EEStrategy::kEps: return "EPS_EE";
    case EEStrategy::kEr: return "ER_EE";
    case EEStrategy::kUcb: return "UCB_EE";
  }
  return "?";
}

EEStrategy parse_strategy(std::string_view name) {
  std::string key(name);
  std::replace(key.begin(), key.end(), '-', '_');
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (key.size() > 3 && key.ends_with("_EE")) key.resize(key.size() - 3);
  if (key == "VAC") return EEStrategy::kVac;
  if (key == "DIS") return EEStrategy::kDis;
  if (key == "VD") return EEStrategy::kVd;
  if (key == "ENT") return EEStrategy::kEnt;
  if (key == "EPS") return EEStrategy::kEps;
  if (key == "ER") return EEStrategy::kEr;
  if (key == "UCB") return EEStrategy::kUcb;
  throw DomainError("unknown exploration strategy '" + std::string(name) + "'");
}

void EEParams::validate() const {
  auto unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!unit(vacuity_threshold) || !unit(dissonance_threshold) || !unit(entropy_threshold)) {
    throw DomainError("exploration thresholds must lie in [0, 1]");
  }
  if (!unit(eps_start) || !unit(eps_decay) || !unit(eps_floor)) {
    throw DomainError("epsilon schedule parameters must lie in [0, 1]");
  }
  if (!(entropy_coef >= 0.0) || !(ucb_c >= 0.0)) {
    throw DomainError("entropy and UCB coefficients must be non-negative");
  }
}

double EEParams::epsilon(std::size_t episode) const {
  return std::max(eps_floor, eps_start * std::pow(eps_decay, static_cast<double>(episode)));
}

std::string_view to_string(Scheme s) { return s == Scheme::kAll ? "DRIM-A" : "DRIM-NA"; }

Scheme parse_scheme(std::string_view name) {
  if (name == "DRIM-A" || name == "A") return Scheme::kAll;
  if (name == "DRIM-NA" || name == "NA") return Scheme::kNoActive;
  throw DomainError("unknown scheme '" + std::string(name) + "'");
}

std::vector<ActionKind> scheme_actions(Scheme s) {
  if (s == Scheme::kAll) {
    return {ActionKind::kActiveFirst, ActionKind::kBlockingFirst, ActionKind::kSubGreedyFirst,
            ActionKind::kCentralityFirst};
  }
  return {ActionKind::kBlockingFirst, ActionKind::kSubGreedyFirst, ActionKind::kCentralityFirst};
}

void PpoParams::validate() const {
  if (!(lr_actor > 0.0) || !(lr_critic > 0.0)) throw DomainError("learning rates must be positive");
  if (!(clip > 0.0 && clip < 1.0)) throw DomainError("clip must lie in (0, 1)");
  if (epochs < 1) throw DomainError("PPO epochs must be >= 1");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw DomainError("gamma must lie in [0, 1]");
  if (update_every < 1) throw DomainError("update interval must be >= 1");
  if (hidden < 1) throw DomainError("hidden width must be >= 1");
}

PolicyParams PolicyParams::init(const AgentConfig& config, std::uint64_t seed) {
  config.ee.validate();
  config.ppo.validate();
  Rng rng(seed);
  PolicyParams p;
  p.actions = scheme_actions(config.scheme);
  const int h = config.ppo.hidden;
  p.actor = Mlp({2, h, h, static_cast<int>(p.actions.size())}, rng);
  p.critic = Mlp({2, h, h, 1}, rng);
  return p;
}

std::vector<double> softmax(std::span<const double> logits) {
  const double top = *std::max_element(logits.begin(), logits.end());
  std::vector<double> p(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = std::exp(logits[i] - top);
    sum += p[i];
  }
  for (double& x : p) x /= sum;
  return p;
}

namespace {

Eigen::Vector2d as_input(const StateVector& s) { return {s.free_edges, s.free_degree}; }

}  // namespace

PolicyOutput policy_forward(const PolicyParams& params, const StateVector& s) {
  const Eigen::VectorXd logits = params.actor.forward(as_input(s));
  const Eigen::VectorXd value = params.critic.forward(as_input(s));
  if (!logits.allFinite() || !value.allFinite()) {
    throw NumericError("policy network produced a non-finite output");
  }
  PolicyOutput out;
  out.probs = softmax(std::span<const double>(logits.data(), static_cast<std::size_t>(logits.size())));
  out.value = value(0);
  return out;
}

ActionBeliefs quantify_uncertainty(std::span<const double> raw_probs) {
  ActionBeliefs ab;
  ab.raw_probs.assign(raw_probs.begin(), raw_probs.end());
  const MultinomialBeliefs um = maximize_uncertainty(MultinomialBeliefs::from_probabilities(raw_probs));
  ab.beliefs = um.beliefs;
  ab.vacuity = um.vacuity;
  ab.dissonance = dissonance(um);
  ab.entropy = entropy_normalized(raw_probs);
  return ab;
}

Decision decide(const EEParams& ee, const ActionBeliefs& ab, const DecisionStats& stats, Rng& rng) {
  auto gate = [](bool explore) { return explore ? Decision::kExplore : Decision::kExploit; };
  switch (ee.strategy) {
    case EEStrategy::kVac: return gate(ab.vacuity > ee.vacuity_threshold);
    case EEStrategy::kDis: return gate(ab.dissonance > ee.dissonance_threshold);
    case EEStrategy::kVd:
      if (ab.vacuity > ee.vacuity_threshold) return Decision::kExplore;
      return gate(ab.dissonance > ee.dissonance_threshold);
    case EEStrategy::kEnt: return gate(ab.entropy > ee.entropy_threshold);
    case EEStrategy::kEps: return gate(rng.uniform() < ee.epsilon(stats.episode));
    case EEStrategy::kEr:
    case EEStrategy::kUcb: return Decision::kExploit;
  }
  return Decision::kExploit;
}

std::size_t select_action(const EEParams& ee, const ActionBeliefs& ab, Decision decision,
                          const DecisionStats& stats, Rng& rng) {
  const std::size_t k = ab.raw_probs.size();
  if (decision == Decision::kExplore) return rng.below(k);
  if (ee.strategy == EEStrategy::kUcb) {
    std::size_t total = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t n = i < stats.visits.size() ? stats.visits[i] : 0;
      if (n == 0) return i;
      total += n;
    }
    const double log_n = std::log(static_cast<double>(total));
    std::size_t best = 0;
    double best_score = -1.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double score =
          ab.raw_probs[i] + ee.ucb_c * std::sqrt(log_n / static_cast<double>(stats.visits[i]));
      if (score > best_score) {
        best_score = score;
        best = i;
      }
    }
    return best;
  }
  return static_cast<std::size_t>(
      std::max_element(ab.raw_probs.begin(), ab.raw_probs.end()) - ab.raw_probs.begin());
}

std::vector<double> returns_to_go(std::span<const double> rewards, double gamma) {
  std::vector<double> g(rewards.size());
  double acc = 0.0;
  for (std::size_t t = rewards.size(); t-- > 0;) {
    acc = rewards[t] + gamma * acc;
    g[t] = acc;
  }
  return g;
}

PpoBatch make_batch(std::span<const Trajectory> trajectories, double gamma, bool normalize) {
  std::size_t n = 0;
  for (const auto& tr : trajectories) n += tr.size();
  if (n == 0) throw DomainError("PPO batch is empty");
  PpoBatch b;
  b.states.resize(2, static_cast<Eigen::Index>(n));
  b.old_log_probs.resize(static_cast<Eigen::Index>(n));
  b.returns.resize(static_cast<Eigen::Index>(n));
  b.actions.reserve(n);
  Eigen::Index i = 0;
  std::vector<double> rewards;
  for (const auto& tr : trajectories) {
    rewards.clear();
    for (const Step& s : tr) rewards.push_back(s.reward);
    const auto g = returns_to_go(rewards, gamma);
    for (std::size_t t = 0; t < tr.size(); ++t, ++i) {
      b.states.col(i) = as_input(tr[t].state);
      b.actions.push_back(tr[t].action);
      b.old_log_probs(i) = tr[t].log_prob;
      b.returns(i) = g[t];
    }
  }
  if (normalize) {
    const double mean = b.returns.mean();
    double sd = 0.0;
    if (n > 1) {
      sd = std::sqrt((b.returns.array() - mean).square().sum() / static_cast<double>(n - 1));
    }
    b.returns = (b.returns.array() - mean) / (sd + 1e-7);
  }
  return b;
}

LossGrad ppo_loss(const PolicyParams& params, const PpoBatch& batch, const PpoParams& ppo,
                  double entropy_coef) {
  const Eigen::Index n = batch.states.cols();
  const double inv_n = 1.0 / static_cast<double>(n);
  Mlp::Cache actor_cache, critic_cache;
  const Eigen::MatrixXd logits = params.actor.forward(batch.states, actor_cache);
  const Eigen::MatrixXd values = params.critic.forward(batch.states, critic_cache);
  const Eigen::Index k = logits.rows();

  LossGrad out;
  Eigen::MatrixXd d_logits(k, n);
  Eigen::MatrixXd d_values(1, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd col = logits.col(i);
    const auto p = softmax(std::span<const double>(col.data(), static_cast<std::size_t>(k)));
    const std::size_t a = batch.actions[static_cast<std::size_t>(i)];
    const double logp = std::log(p[a]);
    const double ratio = std::exp(logp - batch.old_log_probs(i));
    const double adv = batch.returns(i) - values(0, i);
    const double surr1 = ratio * adv;
    const double surr2 = std::clamp(ratio, 1.0 - ppo.clip, 1.0 + ppo.clip) * adv;
    // The unclipped branch carries the gradient; the clipped one is flat.
    const double d_surr_d_logp = surr1 <= surr2 ? ratio * adv : 0.0;
    out.terms.surrogate += std::min(surr1, surr2) * inv_n;

    double h = 0.0;
    for (Eigen::Index j = 0; j < k; ++j) {
      if (p[static_cast<std::size_t>(j)] > 0.0) h -= p[j] * std::log(p[j]);
    }
    out.terms.entropy += h * inv_n;

    for (Eigen::Index j = 0; j < k; ++j) {
      const double pj = p[static_cast<std::size_t>(j)];
      const double d_logp = (static_cast<std::size_t>(j) == a ? 1.0 : 0.0) - pj;
      const double d_h = pj > 0.0 ? -pj * (std::log(pj) + h) : 0.0;
      d_logits(j, i) = -inv_n * d_surr_d_logp * d_logp - entropy_coef * inv_n * d_h;
    }
    const double err = values(0, i) - batch.returns(i);
    out.terms.value_loss += err * err * inv_n;
    d_values(0, i) = 2.0 * ppo.value_coef * err * inv_n;
  }
  out.actor_loss = -out.terms.surrogate - entropy_coef * out.terms.entropy;
  out.critic_loss = ppo.value_coef * out.terms.value_loss;
  out.actor_grad = params.actor.backward(actor_cache, d_logits);
  out.critic_grad = params.critic.backward(critic_cache, d_values);
  return out;
}

Optimizers::Optimizers(const PolicyParams& params, const PpoParams& ppo)
    : actor(params.actor, ppo.lr_actor), critic(params.critic, ppo.lr_critic) {}

UpdateStats ppo_update(PolicyParams& params, Optimizers& opt, std::span<const Trajectory> batch,
                       const PpoParams& ppo, double entropy_coef) {
  const PpoBatch b = make_batch(batch, ppo.gamma);
  PolicyParams next = params;
  Optimizers next_opt = opt;
  UpdateStats stats;
  stats.samples = static_cast<std::size_t>(b.states.cols());
  for (unsigned epoch = 0; epoch < ppo.epochs; ++epoch) {
    const LossGrad lg = ppo_loss(next, b, ppo, entropy_coef);
    if (!std::isfinite(lg.actor_loss) || !std::isfinite(lg.critic_loss)) {
      std::ostringstream msg;
      msg << "non-finite PPO loss at epoch " << epoch << " (actor " << lg.actor_loss << ", critic "
          << lg.critic_loss << ", samples " << stats.samples << ")";
      throw NumericError(msg.str());
    }
    if (epoch == 0) stats.first = lg.terms;
    stats.last = lg.terms;
    next_opt.actor.step(next.actor, lg.actor_grad);
    next_opt.critic.step(next.critic, lg.critic_grad);
  }
  if (!next.finite()) throw NumericError("PPO update produced non-finite parameters");
  params = std::move(next);
  opt = std::move(next_opt);
  return stats;
}

DrlPolicy::DrlPolicy(std::shared_ptr<PolicyParams> params, AgentConfig config, bool training)
    : params_(std::move(params)), config_(config), training_(training), opt_(*params_, config.ppo) {
  config_.ee.validate();
  config_.ppo.validate();
  stats_.visits.assign(params_->num_actions(), 0);
}

std::string DrlPolicy::name() const {
  return std::string(to_string(config_.scheme)) + "-" + std::string(to_string(config_.ee.strategy));
}

std::optional<SeedChoice> DrlPolicy::choose(const SelectionContext& ctx, Rng& rng) {
  const StateVector s = state_vector(ctx.agent_view, ctx.users);
  const PolicyOutput out = policy_forward(*params_, s);
  ActionBeliefs ab = quantify_uncertainty(out.probs);

  std::size_t idx = 0;
  bool explored = false;
  if (training_ && !config_.gates_in_training) {
    double u = rng.uniform(), acc = 0.0;
    idx = out.probs.size() - 1;
    for (std::size_t i = 0; i < out.probs.size(); ++i) {
      acc += out.probs[i];
      if (u < acc) {
        idx = i;
        break;
      }
    }
  } else {
    stats_.episode = episode_;
    const Decision d = decide(config_.ee, ab, stats_, rng);
    idx = select_action(config_.ee, ab, d, stats_, rng);
    explored = d == Decision::kExplore;
  }
  ++stats_.visits[idx];

  const ActionKind kind = params_->actions[idx];
  const auto node = select_seed(Action{kind, config_.sgf_hops}, ctx.agent_view, ctx);
  if (!node) return std::nullopt;
  if (training_) current_.push_back(Step{s, idx, std::log(out.probs[idx]), 0.0, out.value});
  return SeedChoice{*node, kind, std::move(ab), explored};
}

void DrlPolicy::reward(double value) {
  if (training_ && !current_.empty()) current_.back().reward = value;
}

void DrlPolicy::begin_episode() { current_.clear(); }

void DrlPolicy::end_episode() {
  ++episode_;
  if (!training_) return;
  if (!current_.empty()) buffer_.push_back(std::move(current_));
  current_.clear();
  if (buffer_.size() >= config_.ppo.update_every) flush();
}

void DrlPolicy::flush() {
  if (buffer_.empty()) return;
  const double c_ent = config_.ee.strategy == EEStrategy::kEr ? config_.ee.entropy_coef : 0.0;
  updates_.push_back(ppo_update(*params_, opt_, buffer_, config_.ppo, c_ent));
  buffer_.clear();
}

namespace {

CurvePoint curve_point(std::size_t e, const EpisodeResult& r) {
  CurvePoint c;
  c.episode = e;
  c.accumulated_reward = r.tp_accumulated;
  c.mean_vacuity = r.mean_vacuity();
  c.mean_dissonance = r.mean_dissonance();
  c.mean_entropy = r.mean_entropy();
  c.explore_fraction = r.explore_fraction();
  c.tp_percent = r.tp_percent();
  return c;
}

}  // namespace

TrainResult train(std::shared_ptr<const SocialGraph> graph, const GameConfig& game,
                  const AgentConfig& agent, SeedPolicy& fp, std::size_t episodes,
                  std::uint64_t seed) {
  if (episodes < 1) throw DomainError("training needs at least one episode");
  TrainResult result;
  result.seed = seed;
  result.episodes = episodes;
  result.tp = std::make_shared<PolicyParams>(PolicyParams::init(agent, stream_seed(seed, 0xA11CE)));
  DrlPolicy tp(result.tp, agent, true);
  for (std::size_t e = 0; e < episodes; ++e) {
    const EpisodeResult r = run_episode(graph, game, fp, tp, stream_seed(seed, e));
    result.curve.push_back(curve_point(e, r));
  }
  tp.flush();
  return result;
}

TrainResult co_train(std::shared_ptr<const SocialGraph> graph, const GameConfig& game,
                     const AgentConfig& tp_agent, const AgentConfig& fp_agent,
                     std::size_t episodes, std::uint64_t seed) {
  if (episodes < 1) throw DomainError("training needs at least one episode");
  TrainResult result;
  result.seed = seed;
  result.episodes = episodes;
  result.tp = std::make_shared<PolicyParams>(PolicyParams::init(tp_agent, stream_seed(seed, 0xA11CE)));
  result.fp = std::make_shared<PolicyParams>(PolicyParams::init(fp_agent, stream_seed(seed, 0xB0B)));
  DrlPolicy tp(result.tp, tp_agent, true);
  DrlPolicy fp(result.fp, fp_agent, true);
  for (std::size_t e = 0; e < episodes; ++e) {
    const EpisodeResult r = run_episode(graph, game, fp, tp, stream_seed(seed, e));
    result.curve.push_back(curve_point(e, r));
  }
  tp.flush();
  fp.flush();
  return result;
}

void write_curve_csv(std::span<const CurvePoint> curve, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << "episode,accumulated_reward,mean_vacuity,mean_dissonance,mean_entropy,explore_fraction,"
         "tp_percent\n";
  out.precision(10);
  for (const CurvePoint& c : curve) {
    out << c.episode << ',' << c.accumulated_reward << ',' << c.mean_vacuity << ','
        << c.mean_dissonance << ',' << c.mean_entropy << ',' << c.explore_fraction << ','
        << c.tp_percent << '\n';
  }
}

namespace {

using nlohmann::json;

constexpr int kCheckpointVersion = 1;

json dump_net(const Mlp& net) {
  json layers = json::array();
  for (const auto& l : net.layers()) {
    json w = json::array();
    for (Eigen::Index r = 0; r < l.weight.rows(); ++r) {
      std::vector<double> row(static_cast<std::size_t>(l.weight.cols()));
      for (Eigen::Index c = 0; c < l.weight.cols(); ++c) row[static_cast<std::size_t>(c)] = l.weight(r, c);
      w.push_back(row);
    }
    layers.push_back({{"weight", w}, {"bias", std::vector<double>(l.bias.begin(), l.bias.end())}});
  }
  return {{"sizes", net.sizes()}, {"layers", layers}};
}

Mlp load_net(const json& j, const std::vector<int>& expected) {
  const auto sizes = j.at("sizes").get<std::vector<int>>();
  if (sizes != expected) throw CheckpointError("network shape does not match the action set");
  Rng rng(0);
  Mlp net(sizes, rng);
  const auto& layers = j.at("layers");
  if (layers.size() != net.layers().size()) throw CheckpointError("wrong number of layers");
  for (std::size_t l = 0; l < layers.size(); ++l) {
    auto& dst = net.layers()[l];
    const auto w = layers[l].at("weight").get<std::vector<std::vector<double>>>();
    const auto b = layers[l].at("bias").get<std::vector<double>>();
    if (w.size() != static_cast<std::size_t>(dst.weight.rows()) ||
        b.size() != static_cast<std::size_t>(dst.bias.size())) {
      throw CheckpointError("layer " + std::to_string(l) + " has the wrong shape");
    }
    for (std::size_t r = 0; r < w.size(); ++r) {
      if (w[r].size() != static_cast<std::size_t>(dst.weight.cols())) {
        throw CheckpointError("layer " + std::to_string(l) + " has the wrong shape");
      }
      for (std::size_t c = 0; c < w[r].size(); ++c) {
        dst.weight(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = w[r][c];
      }
    }
    for (std::size_t r = 0; r < b.size(); ++r) dst.bias(static_cast<Eigen::Index>(r)) = b[r];
  }
  if (!net.finite()) throw CheckpointError("checkpoint holds non-finite weights");
  return net;
}

}  // namespace

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
  json actions = json::array();
  for (ActionKind a : ckpt.params.actions) actions.push_back(std::string(to_string(a)));
  const EEParams& ee = ckpt.config.ee;
  const PpoParams& ppo = ckpt.config.ppo;
  json j = {
      {"format", "uacim-policy"},
      {"version", kCheckpointVersion},
      {"scheme", std::string(to_string(ckpt.config.scheme))},
      {"actions", actions},
      {"seed", ckpt.seed},
      {"episodes", ckpt.episodes},
      {"sgf_hops", ckpt.config.sgf_hops},
      {"gates_in_training", ckpt.config.gates_in_training},
      {"ee",
       {{"strategy", std::string(to_string(ee.strategy))},
        {"vacuity_threshold", ee.vacuity_threshold},
        {"dissonance_threshold", ee.dissonance_threshold},
        {"entropy_threshold", ee.entropy_threshold},
        {"eps_start", ee.eps_start},
        {"eps_decay", ee.eps_decay},
        {"eps_floor", ee.eps_floor},
        {"entropy_coef", ee.entropy_coef},
        {"ucb_c", ee.ucb_c}}},
      {"ppo",
       {{"lr_actor", ppo.lr_actor},
        {"lr_critic", ppo.lr_critic},
        {"clip", ppo.clip},
        {"epochs", ppo.epochs},
        {"gamma", ppo.gamma},
        {"value_coef", ppo.value_coef},
        {"update_every", ppo.update_every},
        {"hidden", ppo.hidden}}},
      {"actor", dump_net(ckpt.params.actor)},
      {"critic", dump_net(ckpt.params.critic)},
  };
  std::ofstream out(path);
  if (!out) throw CheckpointError("cannot write checkpoint '" + path.string() + "'");
  out << j.dump(1) << '\n';
  if (!out) throw CheckpointError("failed writing checkpoint '" + path.string() + "'");
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CheckpointError("cannot open checkpoint '" + path.string() + "'");
  try {
    const json j = json::parse(in);
    if (j.at("format") != "uacim-policy") throw CheckpointError("not a policy checkpoint");
    const int version = j.at("version").get<int>();
    if (version != kCheckpointVersion) {
      throw CheckpointError("unsupported checkpoint version " + std::to_string(version));
    }
    Checkpoint c;
    c.config.scheme = parse_scheme(j.at("scheme").get<std::string>());
    c.seed = j.at("seed").get<std::uint64_t>();
    c.episodes = j.at("episodes").get<std::size_t>();
    c.config.sgf_hops = j.at("sgf_hops").get<unsigned>();
    c.config.gates_in_training = j.at("gates_in_training").get<bool>();
    const json& ee = j.at("ee");
    c.config.ee.strategy = parse_strategy(ee.at("strategy").get<std::string>());
    c.config.ee.vacuity_threshold = ee.at("vacuity_threshold");
    c.config.ee.dissonance_threshold = ee.at("dissonance_threshold");
    c.config.ee.entropy_threshold = ee.at("entropy_threshold");
    c.config.ee.eps_start = ee.at("eps_start");
    c.config.ee.eps_decay = ee.at("eps_decay");
    c.config.ee.eps_floor = ee.at("eps_floor");
    c.config.ee.entropy_coef = ee.at("entropy_coef");
    c.config.ee.ucb_c = ee.at("ucb_c");
    const json& ppo = j.at("ppo");
    c.config.ppo.lr_actor = ppo.at("lr_actor");
    c.config.ppo.lr_critic = ppo.at("lr_critic");
    c.config.ppo.clip = ppo.at("clip");
    c.config.ppo.epochs = ppo.at("epochs");
    c.config.ppo.gamma = ppo.at("gamma");
    c.config.ppo.value_coef = ppo.at("value_coef");
    c.config.ppo.update_every = ppo.at("update_every");
    c.config.ppo.hidden = ppo.at("hidden");

    for (const auto& a : j.at("actions")) c.params.actions.push_back(parse_action(a.get<std::string>()));
    if (c.params.actions != scheme_actions(c.config.scheme)) {
      throw CheckpointError("action set does not match scheme " +
                            std::string(to_string(c.config.scheme)));
    }
    const int h = c.config.ppo.hidden;
    const int k = static_cast<int>(c.params.actions.size());
    c.params.actor = load_net(j.at("actor"), {2, h, h, k});
    c.params.critic = load_net(j.at("critic"), {2, h, h, 1});
    return c;
  } catch (const CheckpointError&) {
    throw;
  } catch (const std::exception& e) {
    throw CheckpointError("malformed checkpoint '" + path.string() + "': " + e.what());
  }
}

}  // namespace uacim
