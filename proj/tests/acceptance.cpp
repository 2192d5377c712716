// Acceptance run: one PASS/FAIL line per criterion.
//
// Usage: uacim_acceptance [--dataset PATH] [--expect-fail 4,6,...]
// The dataset defaults to $UACIM_URV_EMAIL, then to the bundled stand-in.
// Exit status is 0 when the set of failing criteria equals the --expect-fail
// set, so a known shortfall does not mask a regression and a fix is noticed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "uacim/agent.hpp"
#include "uacim/errors.hpp"
#include "uacim/experiment.hpp"
#include "uacim/heuristics.hpp"

using namespace uacim;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// ------------------------------------------------------------ shared setup

std::filesystem::path g_dataset;
std::shared_ptr<const SocialGraph> g_graph;

constexpr std::size_t kDeskRounds = 20;
constexpr std::size_t kDeskRuns = 10;
constexpr std::size_t kTrainEpisodes = 200;

ExperimentSpec desk_spec() {
  ExperimentSpec s;
  s.name = "acceptance";
  s.dataset = g_dataset;
  s.game.rounds = kDeskRounds;
  s.runs = kDeskRuns;
  s.train_episodes = kTrainEpisodes;
  s.write_outputs = false;
  s.tp = "DRL";
  s.fp = "SGF";
  s.tp_agent.ee.strategy = EEStrategy::kVd;
  s.fp_agent.ee.strategy = EEStrategy::kVd;
  return s;
}

ExperimentSpec dual_drl_spec() {
  ExperimentSpec s = desk_spec();
  s.fp = "DRL";
  return s;
}

// ------------------------------------------------------------ criterion 1

Opinion draw_opinion(Rng& rng) {
  double x[3];
  for (double& v : x) v = -std::log(1.0 - rng.uniform());
  const double s = x[0] + x[1] + x[2];
  Opinion op{x[0] / s, x[1] / s, 0.0, 0.001 + 0.998 * rng.uniform()};
  op.u = std::max(0.0, 1.0 - op.b - op.d);
  return op;
}

Verdict criterion_1() {
  const auto t0 = Clock::now();
  int bad = 0;
  auto near = [&](double got, double want, double tol = 1e-6) {
    if (!(std::abs(got - want) <= tol)) ++bad;
  };
  const Opinion legit = opinion_from_evidence({1, 1, 101}, 0.5);
  near(legit.b, 0.009709);
  near(legit.d, 0.009709);
  near(legit.u, 0.980583);
  const Opinion tip = opinion_from_evidence({100, 1, 2}, 1.0);
  near(tip.b, 0.970874);
  near(tip.d, 0.009709);
  near(tip.u, 0.019417);
  const Projection p = projected({0.2, 0.3, 0.5, 0.5});
  near(p.belief, 0.45);
  near(p.disbelief, 0.55);
  const Opinion um = maximize_uncertainty(Opinion{0.6, 0.4, 0.0, 0.5});
  near(um.b, 0.2);
  near(um.d, 0.0);
  near(um.u, 0.8);
  const Opinion f = fuse({0.25, 0.25, 0.5, 0.5}, {0.6, 0.2, 0.2, 0.5}, 1.0);
  near(f.b, 0.583333);
  near(f.d, 0.25);
  near(f.u, 0.166667);
  const auto ab = quantify_uncertainty(std::vector<double>{0.24, 0.25, 0.24, 0.27});
  near(ab.dissonance, 0.02);
  const int examples_bad = bad;

  Rng rng(2718);
  int prop_bad = 0;
  for (int n = 0; n < 10000; ++n) {
    const Opinion x = draw_opinion(rng), y = draw_opinion(rng);
    const double c = rng.uniform();
    const Opinion m = maximize_uncertainty(x);
    const Projection p0 = projected(x), p1 = projected(m);
    const Opinion fu = fuse(x, y, c);
    Opinion same = y;
    same.a = x.a;
    if (!m.valid() || !discount(x, c).valid() || !fu.valid()) ++prop_bad;
    if (std::abs(p0.belief - p1.belief) > 1e-9) ++prop_bad;
    if (std::abs(fuse(x, same, c).a - x.a) > 1e-9) ++prop_bad;
  }
  const double secs = seconds_since(t0);
  return {examples_bad == 0 && prop_bad == 0 && secs < 5.0,
          fmt("%d worked-example mismatches, %d property failures in 10000 cases, %.2f s (< 5 s)",
              examples_bad, prop_bad, secs)};
}

// ------------------------------------------------------------ criterion 2

Verdict criterion_2() {
  const auto ab = quantify_uncertainty(std::vector<double>{0.24, 0.25, 0.24, 0.27});
  const double want[4] = {0, 0.01, 0, 0.03};
  bool ok = std::abs(ab.vacuity - 0.96) < 1e-12;
  for (int i = 0; i < 4; ++i) ok = ok && std::abs(ab.beliefs[i] - want[i]) < 1e-12;
  Rng rng(1);
  const DecisionStats stats{0, {0, 0, 0, 0}};
  const EEParams vd;
  const Decision d = decide(vd, ab, stats, rng);
  const std::size_t exploit = select_action(vd, ab, Decision::kExploit, stats, rng);
  ok = ok && d == Decision::kExplore && exploit == 3;
  return {ok, fmt("vacuity %.12g, beliefs (%.12g, %.12g, %.12g, %.12g), exploit index %zu, VD-EE %s",
                  ab.vacuity, ab.beliefs[0], ab.beliefs[1], ab.beliefs[2], ab.beliefs[3], exploit,
                  d == Decision::kExplore ? "EXPLORE" : "EXPLOIT")};
}

// ------------------------------------------------------------ criterion 3 and 11

struct ModelResult {
  double n_tp = 0.0;
  double seconds_per_round = 0.0;
  double total_seconds = 0.0;
};

ModelResult g_uom;
double g_c3_seconds = 0.0;

Verdict criterion_3() {
  const auto t0 = Clock::now();
  double n[3];
  const TrustModelKind kinds[3] = {TrustModelKind::kUom, TrustModelKind::kHom, TrustModelKind::kNom};
  for (int i = 0; i < 3; ++i) {
    ExperimentSpec s = desk_spec();
    s.game.trust.kind = kinds[i];
    const Report r = run_experiment(s, g_graph);
    n[i] = r.mean_n_tp;
    if (i == 0) g_uom = {r.mean_n_tp, r.mean_seconds_per_round, r.train_seconds + r.eval_seconds};
  }
  g_c3_seconds = seconds_since(t0);
  const bool ok = n[0] >= 10.0 * n[1] && n[0] >= 10.0 * n[2] && g_c3_seconds < 600.0;
  return {ok, fmt("mean n_TP UOM %.2f, HOM %.2f, NOM %.2f (ratios %.1fx, %.1fx; need >= 10x), %.1f s",
                  n[0], n[1], n[2], n[0] / n[1], n[0] / n[2], g_c3_seconds)};
}

Verdict criterion_11() {
  const bool ok = g_uom.seconds_per_round <= 1.0 && g_c3_seconds < 600.0;
  return {ok, fmt("%.5f s per round (<= 1 s), criterion-3 experiment %.1f s (< 600 s)",
                  g_uom.seconds_per_round, g_c3_seconds)};
}

// ------------------------------------------------------------ criterion 4

Verdict criterion_4() {
  std::ostringstream os;
  bool all = true;
  for (const char* h : {"AF", "BF", "SGF", "CF"}) {
    ExperimentSpec s = desk_spec();
    s.tp = h;
    s.fp = "AF";
    const Report r = run_experiment(s, g_graph);
    all = all && r.mean_tp_percent >= 80.0;
    os << h << ' ' << fmt("%.2f%%", r.mean_tp_percent) << "  ";
  }
  os << "(every TP heuristic needs >= 80%)";
  return {all, os.str()};
}

// ------------------------------------------------------------ criteria 5-7

std::vector<double> sweep(ExperimentSpec s, SweepAxis axis, const std::vector<double>& values) {
  switch (axis) {
    case SweepAxis::kPropagations: s.sweep.p_tp = values; break;
    case SweepAxis::kObservability: s.sweep.observability = values; break;
    default: s.sweep.base_rate = values; break;
  }
  const SweepReport rep = run_sweep(s, g_graph);
  std::vector<double> out;
  for (const Report& r : rep.reports) out.push_back(r.mean_tp_percent);
  return out;
}

Verdict criterion_5() {
  const auto v = sweep(dual_drl_spec(), SweepAxis::kPropagations, {1, 2, 3});
  const bool monotone = v[1] >= v[0] - 2.0 && v[2] >= v[1] - 2.0;
  const bool plateau = v[2] - v[1] < v[1] - v[0];
  return {monotone && plateau, fmt("%%TP at p_TP=1,2,3: %.2f, %.2f, %.2f (gains %.2f then %.2f)", v[0], v[1],
                                   v[2], v[1] - v[0], v[2] - v[1])};
}

Verdict criterion_6() {
  const auto v = sweep(dual_drl_spec(), SweepAxis::kObservability, {0.7, 0.8, 0.9, 1.0});
  return {v[3] - v[0] >= 5.0, fmt("%%TP at rho=0.7,0.8,0.9,1.0: %.2f, %.2f, %.2f, %.2f (1.0 minus 0.7 = %.2f; need >= 5)",
                                  v[0], v[1], v[2], v[3], v[3] - v[0])};
}

Verdict criterion_7() {
  const auto v = sweep(dual_drl_spec(), SweepAxis::kBaseRate, {0.3, 0.5, 0.8});
  const double range = *std::max_element(v.begin(), v.end()) - *std::min_element(v.begin(), v.end());
  return {range < 10.0,
          fmt("%%TP at a=0.3,0.5,0.8: %.2f, %.2f, %.2f (range %.2f; need < 10)", v[0], v[1], v[2], range)};
}

// ------------------------------------------------------------ criterion 8

Verdict criterion_8() {
  ExperimentSpec s = desk_spec();
  s.fp = "CF";
  const TrainedAgents a = prepare_agents(s, g_graph);
  const TrainedAgents b = prepare_agents(s, g_graph);
  bool same = a.curve.size() == b.curve.size();
  for (std::size_t i = 0; same && i < a.curve.size(); ++i) {
    same = a.curve[i].accumulated_reward == b.curve[i].accumulated_reward;
  }
  double first = 0.0, last = 0.0;
  const std::size_t n = a.curve.size();
  for (std::size_t i = 0; i < 20; ++i) {
    first += a.curve[i].accumulated_reward / 20.0;
    last += a.curve[n - 20 + i].accumulated_reward / 20.0;
  }
  const double gain = last / first - 1.0;
  return {gain >= 0.20 && same,
          fmt("first-20 mean %.2f, last-20 mean %.2f (gain %+.1f%%; need >= +20%%), curve %s", first, last,
              100.0 * gain, same ? "deterministic" : "NOT deterministic")};
}

// ------------------------------------------------------------ criterion 9

Verdict criterion_9() {
  double n[2], vac[2];
  const EEStrategy which[2] = {EEStrategy::kEr, EEStrategy::kVd};
  for (int i = 0; i < 2; ++i) {
    ExperimentSpec s = desk_spec();
    s.tp_agent.ee.strategy = which[i];
    const Report r = run_experiment(s, g_graph);
    n[i] = r.mean_n_tp;
    vac[i] = r.mean_vacuity;
  }
  const int better = n[1] > n[0] ? 1 : 0;
  const bool ok = n[0] != n[1] && vac[better] < vac[1 - better];
  return {ok, fmt("ER-EE n_TP %.2f vacuity %.4f; VD-EE n_TP %.2f vacuity %.4f", n[0], vac[0], n[1], vac[1])};
}

// ------------------------------------------------------------ criterion 10

double fd_relative_error(const PolicyParams& p, const PpoBatch& b, bool actor) {
  const LossGrad lg = ppo_loss(p, b, PpoParams{}, 0.01);
  const Eigen::VectorXd analytic = Mlp::flatten(actor ? lg.actor_grad : lg.critic_grad);
  const Eigen::VectorXd theta = actor ? p.actor.flat() : p.critic.flat();
  Eigen::VectorXd fd(theta.size());
  const double h = 1e-6;
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    PolicyParams q = p;
    Eigen::VectorXd t = theta;
    auto loss = [&](double delta) {
      t(i) = theta(i) + delta;
      (actor ? q.actor : q.critic).set_flat(t);
      const LossGrad l = ppo_loss(q, b, PpoParams{}, 0.01);
      return actor ? l.actor_loss : l.critic_loss;
    };
    fd(i) = (loss(h) - loss(-h)) / (2 * h);
  }
  return (analytic - fd).norm() / std::max(analytic.norm(), fd.norm());
}

Verdict criterion_10() {
  AgentConfig cfg;
  cfg.ppo.hidden = 8;
  const PolicyParams p = PolicyParams::init(cfg, 10);
  Rng rng(10);
  std::vector<Trajectory> batch;
  for (int k = 0; k < 4; ++k) {
    Trajectory tr;
    for (int t = 0; t < 5; ++t) {
      Step s;
      s.state = {rng.uniform(), rng.uniform()};
      const auto out = policy_forward(p, s.state);
      s.action = rng.below(4);
      s.log_prob = std::log(out.probs[s.action]) + 0.2 * (rng.uniform() - 0.5);
      s.reward = rng.normal();
      tr.push_back(s);
    }
    batch.push_back(tr);
  }
  const PpoBatch b = make_batch(batch, 0.95);
  const double ea = fd_relative_error(p, b, true), ec = fd_relative_error(p, b, false);

  std::size_t checked = 0, violations = 0;
  for (TrustModelKind k : {TrustModelKind::kUom, TrustModelKind::kHom, TrustModelKind::kNom}) {
    GameConfig game;  // full-length episode
    game.trust.kind = k;
    game.audit_opinions = true;
    HeuristicPolicy fp(Action{ActionKind::kSubGreedyFirst}), tp(Action{ActionKind::kCentralityFirst});
    const EpisodeResult r = run_episode(g_graph, game, fp, tp, 10);
    checked += r.opinions_checked;
    violations += r.additivity_violations;
  }
  const bool ok = ea <= 1e-4 && ec <= 1e-4 && violations == 0 && checked > 0;
  return {ok, fmt("actor rel. error %.2e, critic rel. error %.2e (<= 1e-4); %zu opinions audited, %zu "
                  "additivity violations",
                  ea, ec, checked, violations)};
}

std::set<int> parse_list(const std::string& s) {
  std::set<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.insert(std::stoi(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected;
  if (const char* env = std::getenv("UACIM_URV_EMAIL")) g_dataset = env;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--dataset" && i + 1 < argc) {
      g_dataset = argv[++i];
    } else if (arg == "--expect-fail" && i + 1 < argc) {
      expected = parse_list(argv[++i]);
    } else {
      std::cerr << "usage: uacim_acceptance [--dataset PATH] [--expect-fail N,N,...]\n";
      return 2;
    }
  }
  if (g_dataset.empty()) g_dataset = UACIM_DATA_DIR "/urv_email_standin.edges";
  try {
    g_graph = load_dataset(g_dataset);
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 3;
  }
  std::cout << "dataset " << g_dataset.string() << " (" << g_graph->num_nodes() << " nodes, "
            << g_graph->num_edges() << " edges)\n";

  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"SL algebra oracles and properties", criterion_1},
      {"worked exploration decision", criterion_2},
      {"opinion-model ordering", criterion_3},
      {"AF saturation", criterion_4},
      {"propagation-count monotonicity", criterion_5},
      {"observability monotonicity", criterion_6},
      {"prior-belief insensitivity", criterion_7},
      {"learning progress", criterion_8},
      {"uncertainty/performance coupling", criterion_9},
      {"gradient and numeric checks", criterion_10},
      {"performance envelope", criterion_11},
  };

  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    Verdict v;
    const auto t0 = Clock::now();
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    if (!v.pass) failed.insert(id);
    std::cout << "criterion " << (id < 10 ? " " : "") << id << "  " << (v.pass ? "PASS" : "FAIL") << "  "
              << criteria[i].first << ": " << v.detail << fmt("  [%.1f s]", seconds_since(t0))
              << (!v.pass && expected.count(id) ? "  (expected)" : "") << '\n'
              << std::flush;
  }
  std::cout << (criteria.size() - failed.size()) << " of " << criteria.size() << " criteria pass\n";

  int status = 0;
  for (int id : failed) {
    if (!expected.count(id)) {
      std::cout << "unexpected failure: criterion " << id << '\n';
      status = 1;
    }
  }
  for (int id : expected) {
    if (!failed.count(id)) {
      std::cout << "criterion " << id << " now passes; drop it from --expect-fail\n";
      status = 1;
    }
  }
  return status;
}
