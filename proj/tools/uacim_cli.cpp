// uacim: train, evaluate and sweep seed-selection agents on an edge-list graph.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "uacim/agent.hpp"
#include "uacim/errors.hpp"
#include "uacim/experiment.hpp"

namespace {

using nlohmann::json;
using namespace uacim;

enum Exit : int { kOk = 0, kConfig = 2, kDataset = 3, kCheckpoint = 4, kNumeric = 5 };

// Flags shared by train, eval and sweep. Each one maps onto a config key and
// only overrides the config file when given.
struct SpecFlags {
  std::string config;
  std::vector<std::string> sets;
  json overrides = json::object();

  void add(CLI::App* app) {
    app->add_option("-c,--config", config, "JSON config file (flat key/value)");
    app->add_option("--set", sets, "Override any config key: --set key=value (value parsed as JSON)");
    string(app, "--dataset", "dataset", "Edge list file");
    string(app, "--name", "name", "Experiment name (output subdirectory)");
    string(app, "--out", "out_dir", "Output root directory");
    integer(app, "--seed", "seed", "Master seed");
    integer(app, "--runs", "runs", "Evaluation runs");
    integer(app, "--train-episodes", "train_episodes", "Training episodes for DRL parties");
    string(app, "--tp", "tp", "TP strategy: DRL, AF, BF, SGF, CF, RANDOM");
    string(app, "--fp", "fp", "FP strategy: DRL, AF, BF, SGF, CF, RANDOM");
    string(app, "--tp-scheme", "tp_scheme", "DRIM-A or DRIM-NA");
    string(app, "--tp-ee", "tp_ee", "VAC_EE, DIS_EE, VD_EE, ENT_EE, EPS_EE, ER_EE, UCB_EE");
    string(app, "--fp-ee", "fp_ee", "Exploration strategy of a DRL false party");
    string(app, "--trust-model", "trust_model", "UOM, HOM or NOM");
    integer(app, "--T", "T", "Seeds per party");
    integer(app, "--p-tp", "p_TP", "Cascade repetitions per TP seed");
    integer(app, "--p-fp", "p_FP", "Cascade repetitions per FP seed");
    real(app, "--observability", "observability", "Fraction of edges visible to agents");
    real(app, "--a", "a", "Base rate of legitimate users");
    real(app, "--gamma", "gamma", "Reward discount");
    string(app, "--tp-checkpoint", "tp_checkpoint", "Load the TP policy instead of training");
    string(app, "--fp-checkpoint", "fp_checkpoint", "Load the FP policy instead of training");
    app->add_flag_callback("--serial", [this] { overrides["parallel"] = false; },
                           "Run evaluation episodes serially");
  }

  void string(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    app->add_option_function<std::string>(flag, [this, key](const std::string& v) { overrides[key] = v; },
                                          help);
  }
  void integer(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    app->add_option_function<std::uint64_t>(flag, [this, key](std::uint64_t v) { overrides[key] = v; },
                                            help);
  }
  void real(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    app->add_option_function<double>(flag, [this, key](double v) { overrides[key] = v; }, help);
  }

  ExperimentSpec build() const {
    ExperimentSpec spec = config.empty() ? ExperimentSpec{} : load_spec(config);
    json all = overrides;
    for (const std::string& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
      const std::string key = kv.substr(0, eq), raw = kv.substr(eq + 1);
      try {
        all[key] = json::parse(raw);
      } catch (const json::parse_error&) {
        all[key] = raw;  // bare strings
      }
    }
    apply_config(spec, all);
    spec.validate();
    return spec;
  }
};

void print_report(const Report& r) { std::cout << r.table(); }

int run(int argc, char** argv) {
  CLI::App app{"Competitive influence maximization with subjective-logic opinions"};
  app.require_subcommand(1);

  SpecFlags train_flags, eval_flags, sweep_flags;

  auto* train_cmd = app.add_subcommand("train", "Train DRL parties and write checkpoints and learning curves");
  train_flags.add(train_cmd);

  auto* eval_cmd = app.add_subcommand("eval", "Train or load agents, then run and aggregate evaluation episodes");
  eval_flags.add(eval_cmd);

  auto* sweep_cmd = app.add_subcommand("sweep", "Run one experiment per value of a single axis");
  sweep_flags.add(sweep_cmd);
  std::string axis;
  std::vector<double> values;
  sweep_cmd->add_option("--axis", axis, "p_TP, observability or a")->required();
  sweep_cmd->add_option("--values", values, "Axis values")->delimiter(',')->required();

  auto* inspect_cmd = app.add_subcommand("inspect", "Summarize a checkpoint or a dataset");
  std::string inspect_ckpt, inspect_graph;
  inspect_cmd->add_option("--checkpoint", inspect_ckpt, "Policy checkpoint");
  inspect_cmd->add_option("--dataset", inspect_graph, "Edge list");

  auto* config_cmd = app.add_subcommand("config", "Print the default configuration");

  auto* gen_cmd = app.add_subcommand("gen-graph", "Write a synthetic clustered scale-free edge list");
  std::size_t gen_nodes = 1133, gen_edges = 5452;
  double gen_triad = 0.5;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  gen_cmd->add_option("--nodes", gen_nodes, "Node count")->capture_default_str();
  gen_cmd->add_option("--edges", gen_edges, "Edge count")->capture_default_str();
  gen_cmd->add_option("--triad", gen_triad, "Triad formation probability")->capture_default_str();
  gen_cmd->add_option("--seed", gen_seed, "Seed")->capture_default_str();
  gen_cmd->add_option("--out", gen_out, "Output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  if (*train_cmd) {
    const ExperimentSpec spec = train_flags.build();
    if (spec.tp != "DRL" && spec.fp != "DRL") throw ConfigError("train needs --tp DRL or --fp DRL");
    const auto graph = load_dataset(spec.dataset);
    const TrainedAgents agents = prepare_agents(spec, graph);
    const auto dir = spec.out_dir / spec.name;
    std::filesystem::create_directories(dir);
    if (agents.tp && !spec.tp_checkpoint) {
      save_checkpoint({*agents.tp, spec.tp_agent, spec.seed, spec.train_episodes}, dir / "tp_policy.json");
      std::cout << "wrote " << (dir / "tp_policy.json").string() << '\n';
    }
    if (agents.fp && !spec.fp_checkpoint) {
      save_checkpoint({*agents.fp, spec.fp_agent, spec.seed, spec.train_episodes}, dir / "fp_policy.json");
      std::cout << "wrote " << (dir / "fp_policy.json").string() << '\n';
    }
    if (!agents.curve.empty()) {
      write_curve_csv(agents.curve, dir / "train_curve.csv");
      std::cout << "wrote " << (dir / "train_curve.csv").string() << "  (" << agents.seconds << " s)\n";
    }
    return kOk;
  }

  if (*eval_cmd) {
    const ExperimentSpec spec = eval_flags.build();
    print_report(run_experiment(spec));
    return kOk;
  }

  if (*sweep_cmd) {
    ExperimentSpec spec = sweep_flags.build();
    spec.sweep = {};
    if (axis == "p_TP") {
      spec.sweep.p_tp = values;
    } else if (axis == "observability" || axis == "rho") {
      spec.sweep.observability = values;
    } else if (axis == "a" || axis == "base_rate") {
      spec.sweep.base_rate = values;
    } else {
      throw ConfigError("unknown sweep axis '" + axis + "'");
    }
    spec.validate();
    const SweepReport rep = run_sweep(spec);
    for (std::size_t i = 0; i < rep.values.size(); ++i) {
      std::cout << to_string(rep.axis) << " = " << rep.values[i] << '\n';
      print_report(rep.reports[i]);
    }
    return kOk;
  }

  if (*inspect_cmd) {
    if (inspect_ckpt.empty() && inspect_graph.empty()) {
      throw ConfigError("inspect needs --checkpoint or --dataset");
    }
    if (!inspect_ckpt.empty()) {
      const Checkpoint c = load_checkpoint(inspect_ckpt);
      std::cout << "checkpoint " << inspect_ckpt << '\n'
                << "  scheme     " << to_string(c.config.scheme) << '\n'
                << "  strategy   " << to_string(c.config.ee.strategy) << '\n'
                << "  actions   ";
      for (ActionKind a : c.params.actions) std::cout << ' ' << to_string(a);
      std::cout << "\n  actor     ";
      for (int s : c.params.actor.sizes()) std::cout << ' ' << s;
      std::cout << "\n  critic    ";
      for (int s : c.params.critic.sizes()) std::cout << ' ' << s;
      std::cout << "\n  seed       " << c.seed << "\n  episodes   " << c.episodes << '\n';
      const PolicyOutput out = policy_forward(c.params, StateVector{1.0, 1.0});
      const ActionBeliefs ab = quantify_uncertainty(out.probs);
      std::cout << "  pi(1,1)   ";
      for (double p : out.probs) std::cout << ' ' << p;
      std::cout << "\n  vacuity    " << ab.vacuity << "\n  dissonance " << ab.dissonance << '\n';
    }
    if (!inspect_graph.empty()) {
      const auto g = load_dataset(inspect_graph);
      std::vector<std::size_t> deg(g->num_nodes());
      for (std::size_t v = 0; v < deg.size(); ++v) deg[v] = g->degree(static_cast<NodeId>(v));
      std::nth_element(deg.begin(), deg.begin() + static_cast<long>(deg.size() / 2), deg.end());
      std::cout << "dataset " << inspect_graph << '\n'
                << "  nodes          " << g->num_nodes() << '\n'
                << "  edges          " << g->num_edges() << '\n'
                << "  max degree     " << g->max_degree() << '\n'
                << "  median degree  " << (deg.empty() ? 0 : deg[deg.size() / 2]) << '\n';
    }
    return kOk;
  }

  if (*config_cmd) {
    std::cout << spec_to_json(ExperimentSpec{}).dump(2) << '\n';
    return kOk;
  }

  if (*gen_cmd) {
    Rng rng(gen_seed);
    const SocialGraph g = synthetic_social_graph(gen_nodes, gen_edges, gen_triad, rng);
    write_edge_list(g, gen_out,
                    "synthetic clustered scale-free graph, seed " + std::to_string(gen_seed) +
                        ", triad probability " + std::to_string(gen_triad));
    std::cout << "wrote " << gen_out << " (" << g.num_nodes() << " nodes, " << g.num_edges()
              << " edges)\n";
    return kOk;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const DatasetError& e) {
    std::cerr << "dataset error: " << e.what() << '\n';
    return kDataset;
  } catch (const CheckpointError& e) {
    std::cerr << "checkpoint error: " << e.what() << '\n';
    return kCheckpoint;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
