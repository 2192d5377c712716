#include "uacim/experiment.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include <omp.h>

#include "uacim/errors.hpp"
#include "uacim/heuristics.hpp"

namespace uacim {

using nlohmann::json;

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kNone: return "none";
    case SweepAxis::kPropagations: return "p_TP";
    case SweepAxis::kObservability: return "observability";
    case SweepAxis::kBaseRate: return "a";
  }
  return "?";
}

SweepAxis SweepSpec::axis() const {
  const int populated = !p_tp.empty() + !observability.empty() + !base_rate.empty();
  if (populated == 0) throw ConfigError("sweep needs one axis (p_TP, observability or a)");
  if (populated > 1) {
    throw ConfigError("sweep has more than one axis; cross products must be run as separate sweeps");
  }
  if (!p_tp.empty()) return SweepAxis::kPropagations;
  if (!observability.empty()) return SweepAxis::kObservability;
  return SweepAxis::kBaseRate;
}

const std::vector<double>& SweepSpec::values() const {
  switch (axis()) {
    case SweepAxis::kPropagations: return p_tp;
    case SweepAxis::kObservability: return observability;
    default: return base_rate;
  }
}

namespace {

bool is_heuristic(const std::string& s) {
  return s == "AF" || s == "BF" || s == "SGF" || s == "CF" || s == "RANDOM";
}

}  // namespace

void ExperimentSpec::validate() const {
  try {
    game.validate();
    tp_agent.ee.validate();
    tp_agent.ppo.validate();
    fp_agent.ee.validate();
    fp_agent.ppo.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (runs < 1) throw ConfigError("runs must be >= 1");
  if (tp != "DRL" && !is_heuristic(tp)) throw ConfigError("unknown TP strategy '" + tp + "'");
  if (fp != "DRL" && !is_heuristic(fp)) throw ConfigError("unknown FP strategy '" + fp + "'");
  const bool needs_training = (tp == "DRL" && !tp_checkpoint) || (fp == "DRL" && !fp_checkpoint);
  if (needs_training && train_episodes < 1) {
    throw ConfigError("a DRL party needs a checkpoint or train_episodes >= 1");
  }
  for (double v : sweep.p_tp) {
    if (!(v >= 1.0 && v == std::floor(v))) throw ConfigError("p_TP sweep values must be integers >= 1");
  }
  for (double v : sweep.observability) {
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("observability sweep values must lie in [0, 1]");
  }
  for (double v : sweep.base_rate) {
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("base-rate sweep values must lie in [0, 1]");
  }
}

// ---------------------------------------------------------------- config

namespace {

struct Key {
  std::function<json(const ExperimentSpec&)> get;
  std::function<void(ExperimentSpec&, const json&)> set;
};

template <typename T>
T as(const json& v, const std::string& key) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

using Keys = std::map<std::string, Key>;

#define UACIM_KEY(name, type, field)                                                     \
  keys[name] = Key{[](const ExperimentSpec& s) { return json(s.field); },                \
                   [](ExperimentSpec& s, const json& v) { s.field = as<type>(v, name); }}

const Keys& config_keys() {
  static const Keys table = [] {
    Keys keys;
    UACIM_KEY("name", std::string, name);
    keys["dataset"] = Key{[](const ExperimentSpec& s) { return json(s.dataset.string()); },
                          [](ExperimentSpec& s, const json& v) {
                            s.dataset = as<std::string>(v, "dataset");
                          }};
    keys["out_dir"] = Key{[](const ExperimentSpec& s) { return json(s.out_dir.string()); },
                          [](ExperimentSpec& s, const json& v) {
                            s.out_dir = as<std::string>(v, "out_dir");
                          }};
    UACIM_KEY("runs", std::size_t, runs);
    UACIM_KEY("train_episodes", std::size_t, train_episodes);
    UACIM_KEY("seed", std::uint64_t, seed);
    UACIM_KEY("parallel", bool, parallel);
    UACIM_KEY("tp", std::string, tp);
    UACIM_KEY("fp", std::string, fp);

    // Game
    UACIM_KEY("T", std::size_t, game.rounds);
    UACIM_KEY("p_TP", unsigned, game.tp_propagations);
    UACIM_KEY("p_FP", unsigned, game.fp_propagations);
    UACIM_KEY("gamma", double, game.gamma);
    UACIM_KEY("a", double, game.base_rate);
    UACIM_KEY("observability", double, game.observability);
    UACIM_KEY("d", unsigned, game.sgf_hops);
    UACIM_KEY("T_v", double, game.trust.vacuity_threshold);
    UACIM_KEY("T_d", double, game.trust.dissonance_threshold);
    UACIM_KEY("heuristics_use_observed", bool, game.heuristics_use_observed);
    UACIM_KEY("recascade_all_seeds", bool, game.recascade_all_seeds);
    UACIM_KEY("audit_opinions", bool, game.audit_opinions);
    keys["trust_model"] = Key{
        [](const ExperimentSpec& s) { return json(std::string(to_string(s.game.trust.kind))); },
        [](ExperimentSpec& s, const json& v) {
          try {
            s.game.trust.kind = parse_trust_model(as<std::string>(v, "trust_model"));
          } catch (const DomainError& e) {
            throw ConfigError(e.what());
          }
        }};

    // Agents. The same learning hyper-parameters apply to both parties.
    auto agent_key = [&keys](const std::string& name, auto member) {
      using T = std::remove_cvref_t<decltype(std::declval<AgentConfig&>().*member)>;
      keys[name] = Key{[member](const ExperimentSpec& s) { return json(s.tp_agent.*member); },
                       [member, name](ExperimentSpec& s, const json& v) {
                         s.tp_agent.*member = as<T>(v, name);
                         s.fp_agent.*member = s.tp_agent.*member;
                       }};
    };
    auto ppo_key = [&keys](const std::string& name, auto member) {
      using T = std::remove_cvref_t<decltype(std::declval<PpoParams&>().*member)>;
      keys[name] = Key{[member](const ExperimentSpec& s) { return json(s.tp_agent.ppo.*member); },
                       [member, name](ExperimentSpec& s, const json& v) {
                         s.tp_agent.ppo.*member = as<T>(v, name);
                         s.fp_agent.ppo.*member = s.tp_agent.ppo.*member;
                       }};
    };
    auto ee_key = [&keys](const std::string& name, auto member) {
      using T = std::remove_cvref_t<decltype(std::declval<EEParams&>().*member)>;
      keys[name] = Key{[member](const ExperimentSpec& s) { return json(s.tp_agent.ee.*member); },
                       [member, name](ExperimentSpec& s, const json& v) {
                         s.tp_agent.ee.*member = as<T>(v, name);
                         s.fp_agent.ee.*member = s.tp_agent.ee.*member;
                       }};
    };
    ppo_key("lr_a", &PpoParams::lr_actor);
    ppo_key("lr_c", &PpoParams::lr_critic);
    ppo_key("K_epo", &PpoParams::epochs);
    ppo_key("clip_epsilon", &PpoParams::clip);
    ppo_key("value_coef", &PpoParams::value_coef);
    ppo_key("update_every", &PpoParams::update_every);
    ppo_key("hidden", &PpoParams::hidden);
    agent_key("gates_in_training", &AgentConfig::gates_in_training);
    ee_key("agent_T_v", &EEParams::vacuity_threshold);
    ee_key("agent_T_d", &EEParams::dissonance_threshold);
    ee_key("T_e", &EEParams::entropy_threshold);
    ee_key("eps_start", &EEParams::eps_start);
    ee_key("eps_decay", &EEParams::eps_decay);
    ee_key("eps_floor", &EEParams::eps_floor);
    ee_key("c_ent", &EEParams::entropy_coef);
    ee_key("c_ucb", &EEParams::ucb_c);

    auto named = [&keys](const std::string& name, auto get, auto set) {
      keys[name] = Key{get, [set, name](ExperimentSpec& s, const json& v) {
                         try {
                           set(s, as<std::string>(v, name));
                         } catch (const DomainError& e) {
                           throw ConfigError(e.what());
                         }
                       }};
    };
    named(
        "tp_scheme", [](const ExperimentSpec& s) { return json(std::string(to_string(s.tp_agent.scheme))); },
        [](ExperimentSpec& s, const std::string& v) { s.tp_agent.scheme = parse_scheme(v); });
    named(
        "fp_scheme", [](const ExperimentSpec& s) { return json(std::string(to_string(s.fp_agent.scheme))); },
        [](ExperimentSpec& s, const std::string& v) { s.fp_agent.scheme = parse_scheme(v); });
    named(
        "tp_ee", [](const ExperimentSpec& s) { return json(std::string(to_string(s.tp_agent.ee.strategy))); },
        [](ExperimentSpec& s, const std::string& v) { s.tp_agent.ee.strategy = parse_strategy(v); });
    named(
        "fp_ee", [](const ExperimentSpec& s) { return json(std::string(to_string(s.fp_agent.ee.strategy))); },
        [](ExperimentSpec& s, const std::string& v) { s.fp_agent.ee.strategy = parse_strategy(v); });

    auto path_opt = [&keys](const std::string& name,
                            std::optional<std::filesystem::path> ExperimentSpec::*member) {
      keys[name] = Key{[member](const ExperimentSpec& s) {
                         return (s.*member) ? json((s.*member)->string()) : json(nullptr);
                       },
                       [member, name](ExperimentSpec& s, const json& v) {
                         if (v.is_null()) {
                           (s.*member).reset();
                         } else {
                           s.*member = std::filesystem::path(as<std::string>(v, name));
                         }
                       }};
    };
    path_opt("tp_checkpoint", &ExperimentSpec::tp_checkpoint);
    path_opt("fp_checkpoint", &ExperimentSpec::fp_checkpoint);

    UACIM_KEY("sweep_p_TP", std::vector<double>, sweep.p_tp);
    UACIM_KEY("sweep_observability", std::vector<double>, sweep.observability);
    UACIM_KEY("sweep_a", std::vector<double>, sweep.base_rate);
    return keys;
  }();
  return table;
}

#undef UACIM_KEY

}  // namespace

json spec_to_json(const ExperimentSpec& spec) {
  json j = json::object();
  for (const auto& [name, key] : config_keys()) j[name] = key.get(spec);
  return j;
}

void apply_config(ExperimentSpec& spec, const json& config) {
  if (!config.is_object()) throw ConfigError("config must be a JSON object");
  const auto& keys = config_keys();
  for (const auto& [name, value] : config.items()) {
    const auto it = keys.find(name);
    if (it == keys.end()) throw ConfigError("unknown config key '" + name + "'");
    it->second.set(spec, value);
  }
  // The trust thresholds and the agent gates share defaults unless set apart.
  if (!config.contains("agent_T_v") && config.contains("T_v")) {
    spec.tp_agent.ee.vacuity_threshold = spec.fp_agent.ee.vacuity_threshold =
        spec.game.trust.vacuity_threshold;
  }
  if (!config.contains("agent_T_d") && config.contains("T_d")) {
    spec.tp_agent.ee.dissonance_threshold = spec.fp_agent.ee.dissonance_threshold =
        spec.game.trust.dissonance_threshold;
  }
  if (config.contains("gamma")) spec.tp_agent.ppo.gamma = spec.fp_agent.ppo.gamma = spec.game.gamma;
  if (config.contains("d")) spec.tp_agent.sgf_hops = spec.fp_agent.sgf_hops = spec.game.sgf_hops;
}

ExperimentSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  ExperimentSpec spec;
  apply_config(spec, j);
  return spec;
}

std::shared_ptr<const SocialGraph> load_dataset(const std::filesystem::path& path) {
  if (path.empty()) throw DatasetError("no dataset given");
  try {
    return std::make_shared<const SocialGraph>(load_edge_list(path));
  } catch (const std::exception& e) {
    throw DatasetError("dataset '" + path.string() + "': " + e.what());
  }
}

// ---------------------------------------------------------------- agents

namespace {

std::shared_ptr<PolicyParams> load_agent(const std::filesystem::path& path, AgentConfig& config,
                                         std::size_t& episodes) {
  Checkpoint c = load_checkpoint(path);
  config = c.config;
  episodes = c.episodes;
  return std::make_shared<PolicyParams>(std::move(c.params));
}

std::unique_ptr<SeedPolicy> make_drl(const std::shared_ptr<PolicyParams>& params,
                                     const AgentConfig& config, std::size_t episodes) {
  auto p = std::make_unique<DrlPolicy>(params, config, false);
  p->set_episode(episodes);
  return p;
}

std::unique_ptr<SeedPolicy> make_heuristic(const std::string& which, unsigned hops) {
  if (which == "RANDOM") return std::make_unique<RandomPolicy>();
  return std::make_unique<HeuristicPolicy>(Action{parse_action(which), hops});
}

// FP-side training against a fixed TP.
std::shared_ptr<PolicyParams> train_fp_agent(std::shared_ptr<const SocialGraph> graph,
                                       const GameConfig& game, const AgentConfig& agent,
                                       SeedPolicy& tp, std::size_t episodes, std::uint64_t seed) {
  auto params = std::make_shared<PolicyParams>(PolicyParams::init(agent, stream_seed(seed, 0xB0B)));
  DrlPolicy fp(params, agent, true);
  for (std::size_t e = 0; e < episodes; ++e) run_episode(graph, game, fp, tp, stream_seed(seed, e));
  fp.flush();
  return params;
}

constexpr std::uint64_t kTrainStream = 0x7261696eULL;

}  // namespace

TrainedAgents prepare_agents(const ExperimentSpec& spec, std::shared_ptr<const SocialGraph> graph) {
  spec.validate();
  const auto start = std::chrono::steady_clock::now();
  TrainedAgents out;
  AgentConfig tp_cfg = spec.tp_agent, fp_cfg = spec.fp_agent;
  std::size_t tp_episodes = 0, fp_episodes = 0;
  if (spec.tp == "DRL" && spec.tp_checkpoint) out.tp = load_agent(*spec.tp_checkpoint, tp_cfg, tp_episodes);
  if (spec.fp == "DRL" && spec.fp_checkpoint) out.fp = load_agent(*spec.fp_checkpoint, fp_cfg, fp_episodes);

  const std::uint64_t seed = stream_seed(spec.seed, kTrainStream);
  const bool train_tp = spec.tp == "DRL" && !out.tp;
  const bool train_fp = spec.fp == "DRL" && !out.fp;
  if (train_tp && train_fp) {
    auto r = co_train(graph, spec.game, tp_cfg, fp_cfg, spec.train_episodes, seed);
    out.tp = r.tp;
    out.fp = r.fp;
    out.curve = std::move(r.curve);
  } else if (train_tp) {
    auto fp = spec.fp == "DRL" ? make_drl(out.fp, fp_cfg, fp_episodes)
                               : make_heuristic(spec.fp, spec.game.sgf_hops);
    auto r = train(graph, spec.game, tp_cfg, *fp, spec.train_episodes, seed);
    out.tp = r.tp;
    out.curve = std::move(r.curve);
  } else if (train_fp) {
    auto tp = spec.tp == "DRL" ? make_drl(out.tp, tp_cfg, tp_episodes)
                               : make_heuristic(spec.tp, spec.game.sgf_hops);
    out.fp = train_fp_agent(graph, spec.game, fp_cfg, *tp, spec.train_episodes, seed);
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

// ---------------------------------------------------------------- evaluation

namespace {

double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  std::size_t n = 0;
  for (double x : xs) {
    if (std::isfinite(x)) {
      s += x;
      ++n;
    }
  }
  return n ? s / static_cast<double>(n) : kNaN;
}

double sd_of(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean_of(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

Report evaluate(const ExperimentSpec& spec, std::shared_ptr<const SocialGraph> graph,
                const TrainedAgents& agents) {
  spec.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::size_t runs = spec.runs;
  std::vector<EpisodeResult> results(runs);

  AgentConfig tp_cfg = spec.tp_agent, fp_cfg = spec.fp_agent;
  std::size_t tp_episodes = spec.train_episodes, fp_episodes = spec.train_episodes;
  if (spec.tp == "DRL" && spec.tp_checkpoint) load_agent(*spec.tp_checkpoint, tp_cfg, tp_episodes);
  if (spec.fp == "DRL" && spec.fp_checkpoint) load_agent(*spec.fp_checkpoint, fp_cfg, fp_episodes);
  if ((spec.tp == "DRL" && !agents.tp) || (spec.fp == "DRL" && !agents.fp)) {
    throw CheckpointError("a DRL party has no trained or loaded policy");
  }

  auto one_run = [&](std::size_t i) {
    auto tp = spec.tp == "DRL" ? make_drl(agents.tp, tp_cfg, tp_episodes)
                               : make_heuristic(spec.tp, spec.game.sgf_hops);
    auto fp = spec.fp == "DRL" ? make_drl(agents.fp, fp_cfg, fp_episodes)
                               : make_heuristic(spec.fp, spec.game.sgf_hops);
    results[i] = run_episode(graph, spec.game, *fp, *tp, run_seed(spec.seed, i));
  };

  if (spec.parallel && runs > 1) {
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t i = 0; i < runs; ++i) {
      try {
        one_run(i);
      } catch (...) {
#pragma omp critical(uacim_eval_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  } else {
    for (std::size_t i = 0; i < runs; ++i) one_run(i);
  }

  Report rep;
  rep.name = spec.name;
  rep.num_nodes = graph->num_nodes();
  rep.num_edges = graph->num_edges();
  rep.train_seconds = agents.seconds;
  rep.train_curve = agents.curve;
  std::vector<double> n_tp, pct, secs, vac, dis, ent;
  for (std::size_t i = 0; i < runs; ++i) {
    const EpisodeResult& r = results[i];
    RunSummary s;
    s.index = i;
    s.seed = run_seed(spec.seed, i);
    s.rounds = r.rounds.size();
    s.n_tp = r.final_counts.tp;
    s.n_fp = r.final_counts.fp;
    s.tp_percent = r.tp_percent();
    s.tp_accumulated = r.tp_accumulated;
    s.fp_accumulated = r.fp_accumulated;
    s.seconds_per_round = r.mean_seconds_per_round();
    s.vacuity = r.mean_vacuity();
    s.dissonance = r.mean_dissonance();
    s.entropy = r.mean_entropy();
    s.exhausted = r.exhausted;
    s.additivity_violations = r.additivity_violations;
    rep.runs.push_back(s);
    rep.exhausted = rep.exhausted || r.exhausted;
    rep.additivity_violations += r.additivity_violations;
    n_tp.push_back(static_cast<double>(s.n_tp));
    pct.push_back(s.tp_percent);
    secs.push_back(s.seconds_per_round);
    vac.push_back(s.vacuity);
    dis.push_back(s.dissonance);
    ent.push_back(s.entropy);
  }
  rep.mean_n_tp = mean_of(n_tp);
  rep.sd_n_tp = sd_of(n_tp);
  rep.mean_tp_percent = mean_of(pct);
  rep.sd_tp_percent = sd_of(pct);
  rep.mean_seconds_per_round = mean_of(secs);
  rep.mean_vacuity = mean_of(vac);
  rep.mean_dissonance = mean_of(dis);
  rep.mean_entropy = mean_of(ent);
  rep.eval_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (spec.write_outputs) {
    const auto dir = spec.out_dir / spec.name;
    std::filesystem::create_directories(dir);
    for (std::size_t i = 0; i < runs; ++i) {
      write_rounds_csv(results[i], dir / ("run_" + std::to_string(i) + ".csv"));
    }
    json summary = rep.to_json();
    summary["spec"] = spec_to_json(spec);
    summary["hardware"] = hardware_fingerprint();
    std::ofstream(dir / "summary.json") << summary.dump(2) << '\n';
    std::ofstream(dir / "table.txt") << rep.table();
    if (!agents.curve.empty()) write_curve_csv(agents.curve, dir / "train_curve.csv");
    if (spec.tp == "DRL" && !spec.tp_checkpoint) {
      save_checkpoint({*agents.tp, tp_cfg, spec.seed, spec.train_episodes}, dir / "tp_policy.json");
    }
    if (spec.fp == "DRL" && !spec.fp_checkpoint) {
      save_checkpoint({*agents.fp, fp_cfg, spec.seed, spec.train_episodes}, dir / "fp_policy.json");
    }
  }
  return rep;
}

Report run_experiment(const ExperimentSpec& spec, std::shared_ptr<const SocialGraph> graph) {
  const TrainedAgents agents = prepare_agents(spec, graph);
  return evaluate(spec, std::move(graph), agents);
}

Report run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  return run_experiment(spec, load_dataset(spec.dataset));
}

json Report::to_json() const {
  json runs_json = json::array();
  for (const RunSummary& r : runs) {
    runs_json.push_back({{"run", r.index},
                         {"seed", r.seed},
                         {"rounds", r.rounds},
                         {"n_TP", r.n_tp},
                         {"n_FP", r.n_fp},
                         {"tp_percent", r.tp_percent},
                         {"R_TP", r.tp_accumulated},
                         {"R_FP", r.fp_accumulated},
                         {"seconds_per_round", r.seconds_per_round},
                         {"vacuity", finite_or_null(r.vacuity)},
                         {"dissonance", finite_or_null(r.dissonance)},
                         {"entropy", finite_or_null(r.entropy)},
                         {"exhausted", r.exhausted}});
  }
  return {{"name", name},
          {"nodes", num_nodes},
          {"edges", num_edges},
          {"runs", runs.size()},
          {"mean_n_TP", mean_n_tp},
          {"sd_n_TP", sd_n_tp},
          {"mean_tp_percent", mean_tp_percent},
          {"sd_tp_percent", sd_tp_percent},
          {"mean_seconds_per_round", mean_seconds_per_round},
          {"mean_vacuity", finite_or_null(mean_vacuity)},
          {"mean_dissonance", finite_or_null(mean_dissonance)},
          {"mean_entropy", finite_or_null(mean_entropy)},
          {"exhausted", exhausted},
          {"additivity_violations", additivity_violations},
          {"train_seconds", train_seconds},
          {"eval_seconds", eval_seconds},
          {"per_run", runs_json}};
}

std::string Report::table() const {
  std::ostringstream os;
  os << std::fixed;
  os << name << "  (" << num_nodes << " nodes, " << num_edges << " edges, " << runs.size()
     << " runs)\n";
  os << std::setprecision(2);
  os << "  n^TP        " << mean_n_tp << " +- " << sd_n_tp << '\n';
  os << "  % TP        " << mean_tp_percent << " +- " << sd_tp_percent << '\n';
  os << std::setprecision(4);
  os << "  s / round   " << mean_seconds_per_round << '\n';
  auto opt = [&](const char* label, double x) {
    os << "  " << label;
    if (std::isfinite(x)) {
      os << x << '\n';
    } else {
      os << "-\n";
    }
  };
  opt("vacuity     ", mean_vacuity);
  opt("dissonance  ", mean_dissonance);
  opt("entropy     ", mean_entropy);
  if (exhausted) os << "  note: candidate pool exhausted in at least one run\n";
  return os.str();
}

// ---------------------------------------------------------------- sweeps

namespace {

std::string value_label(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

SweepReport run_sweep(const ExperimentSpec& spec, std::shared_ptr<const SocialGraph> graph) {
  spec.validate();
  SweepReport out;
  out.axis = spec.sweep.axis();
  out.values = spec.sweep.values();
  for (double v : out.values) {
    ExperimentSpec one = spec;
    one.sweep = {};
    one.name = spec.name + "/" + std::string(to_string(out.axis)) + "=" + value_label(v);
    switch (out.axis) {
      case SweepAxis::kPropagations: one.game.tp_propagations = static_cast<unsigned>(v); break;
      case SweepAxis::kObservability: one.game.observability = v; break;
      case SweepAxis::kBaseRate: one.game.base_rate = v; break;
      case SweepAxis::kNone: break;
    }
    out.reports.push_back(run_experiment(one, graph));
  }
  if (spec.write_outputs) {
    const auto dir = spec.out_dir / spec.name;
    std::filesystem::create_directories(dir);
    std::ofstream csv(dir / "sweep.csv");
    csv << to_string(out.axis) << ",mean_tp_percent,sd_tp_percent,mean_n_TP\n";
    csv.precision(10);
    for (std::size_t i = 0; i < out.values.size(); ++i) {
      const Report& r = out.reports[i];
      csv << out.values[i] << ',' << r.mean_tp_percent << ',' << r.sd_tp_percent << ','
          << r.mean_n_tp << '\n';
    }
  }
  return out;
}

SweepReport run_sweep(const ExperimentSpec& spec) {
  spec.validate();
  return run_sweep(spec, load_dataset(spec.dataset));
}

json hardware_fingerprint() {
  std::string cpu = "unknown";
  std::ifstream info("/proc/cpuinfo");
  for (std::string line; std::getline(info, line);) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) cpu = line.substr(colon + 2);
      break;
    }
  }
  return {{"cpu", cpu},
          {"hardware_threads", std::thread::hardware_concurrency()},
          {"omp_max_threads", omp_get_max_threads()},
          {"compiler", __VERSION__}};
}

}  // namespace uacim
