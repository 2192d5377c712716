#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "uacim/game.hpp"
#include "uacim/errors.hpp"
#include "uacim/heuristics.hpp"

using namespace uacim;
using namespace uacim::testing;

namespace {

GameConfig nom_config() {
  GameConfig cfg;
  cfg.trust.kind = TrustModelKind::kNom;
  cfg.audit_opinions = true;
  return cfg;
}

// Records the influence counts it sees when asked to choose.
class Probe final : public SeedPolicy {
 public:
  explicit Probe(Action a) : inner_(a) {}
  std::string name() const override { return "probe"; }
  std::optional<SeedChoice> choose(const SelectionContext& ctx, Rng& rng) override {
    seen = influence_counts(ctx.users);
    return inner_.choose(ctx, rng);
  }
  InfluenceCounts seen;

 private:
  HeuristicPolicy inner_;
};

std::string slurp(const std::filesystem::path& p) {
  std::ostringstream s;
  s << std::ifstream(p).rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("game_engine") {

TEST_CASE("ungated cascade reaches every node of the component once per repetition") {
  // Two components: a 6-node path and a separate triangle.
  auto g = graph_of(9, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {6, 7}, {7, 8}, {6, 8}});
  const GameConfig cfg = nom_config();
  for (unsigned reps : {1u, 3u}) {
    GameState st = fixed_game(g, cfg);
    promote(st, 0, Party::kTrue, cfg);
    Rng rng(4);
    cascade(st, 0, reps, cfg, rng);
    CHECK(st.opinions_checked == 5 * reps);
    CHECK(st.additivity_violations == 0);
    for (NodeId v = 1; v <= 5; ++v) CHECK(st.users[v].opinion.b > 0.5);
    for (NodeId v = 6; v <= 8; ++v) CHECK(st.users[v].opinion == initial_opinion(UserRole::kLegitimate, 0.5));
  }
}

TEST_CASE("nobody reads when reading probability is zero") {
  auto g = random_graph(100, 300, 1);
  const GameConfig cfg = nom_config();
  GameState st = fixed_game(g, cfg, 0.0, 1.0);
  const auto before = st.users;
  promote(st, 0, Party::kTrue, cfg);
  Rng rng(1);
  cascade(st, 0, 2, cfg, rng);
  CHECK(st.opinions_checked == 0);
  for (NodeId v = 1; v < 100; ++v) CHECK(st.users[v].opinion == before[v].opinion);
}

TEST_CASE("single-edge cascade equals one received message") {
  auto g = graph_of(2, {{0, 1}});
  GameConfig cfg;  // UOM
  GameState st = fixed_game(g, cfg);
  promote(st, 0, Party::kTrue, cfg);
  UserState expected = st.users[1];
  receive_opinion(cfg.trust, expected, st.users[0].opinion);
  Rng rng(1);
  cascade(st, 0, 1, cfg, rng);
  CHECK(st.users[1].opinion == expected.opinion);
}

TEST_CASE("false party moves first in a round") {
  auto g = random_graph(200, 800, 2);
  GameConfig cfg;
  cfg.rounds = 1;
  HeuristicPolicy fp(Action{ActionKind::kCentralityFirst});
  Probe tp(Action{ActionKind::kCentralityFirst});
  Rng o(1), b(2), c(3), f(4), t(5);
  GameState st = new_game(g, cfg, o, b);
  const auto log = play_round(st, fp, tp, cfg, c, f, t);
  REQUIRE(log);
  CHECK(tp.seen.fp > 0);
  CHECK(tp.seen.tp == 0);
}

TEST_CASE("true-party propagation count repeats the cascade") {
  // FP plays an isolated node, so every audited read belongs to TP.
  auto g = graph_of(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  for (unsigned p : {1u, 2u}) {
    GameConfig cfg = nom_config();
    cfg.tp_propagations = p;
    GameState st = fixed_game(g, cfg);
    ScriptedPolicy fp({5}), tp({0});
    Rng c(1), f(2), t(3);
    REQUIRE(play_round(st, fp, tp, cfg, c, f, t));
    CHECK(st.opinions_checked == 4 * p);
  }
}

TEST_CASE("scripted episodes are reproducible byte for byte") {
  auto g = random_graph(300, 1200, 3);
  GameConfig cfg;
  cfg.rounds = 15;
  std::vector<NodeId> a, b;
  for (NodeId i = 0; i < 40; ++i) (i % 2 ? a : b).push_back(i * 7 % 300);
  const auto dir = std::filesystem::temp_directory_path();
  for (int k = 0; k < 2; ++k) {
    ScriptedPolicy fp(a), tp(b);
    const auto r = run_episode(g, cfg, fp, tp, 1234);
    write_rounds_csv(r, dir / ("uacim_scripted_" + std::to_string(k) + ".csv"));
  }
  CHECK(slurp(dir / "uacim_scripted_0.csv") == slurp(dir / "uacim_scripted_1.csv"));
}

TEST_CASE("instant rewards") {
  std::vector<UserState> users(3);
  for (auto& u : users) u.opinion = initial_opinion(UserRole::kLegitimate, 0.5);
  CHECK(instant_reward(users, Party::kTrue) == 0.0);
  CHECK(instant_reward(users, Party::kFalse) == 0.0);
  users[0].opinion = initial_opinion(UserRole::kTip, 0.5);
  CHECK(std::abs(instant_reward(users, Party::kTrue) - 0.9709) < 1e-4);
  users[0].opinion = {0.6, 0.1, 0.3, 0.5};
  users[1].opinion = {0.8, 0.1, 0.1, 0.5};
  CHECK(std::abs(instant_reward(users, Party::kTrue) - 1.4) < 1e-12);
}

TEST_CASE("accumulated reward weights later rounds more") {
  const std::vector<double> r{1, 2};
  CHECK(accumulated_reward(r, 0.5) == doctest::Approx(1.25));
  CHECK(accumulated_reward(r, 1.0) == doctest::Approx(3.0));
  CHECK(accumulated_reward(r, 0.0) == 0.0);
}

TEST_CASE("influence counts") {
  auto g = random_graph(50, 150, 4);
  GameConfig cfg;
  GameState st = fixed_game(g, cfg);
  for (NodeId i = 0; i < 3; ++i) {
    promote(st, i, Party::kTrue, cfg);
    promote(st, 10 + i, Party::kFalse, cfg);
  }
  const auto c = influence_counts(st.users);
  CHECK(c.tp == 3);
  CHECK(c.fp == 3);
  CHECK(c.neutral == 44);
  for (NodeId i = 0; i < 50; ++i) promote(st, i, Party::kTrue, cfg);
  CHECK(influence_counts(st.users).tp == 50);
}

TEST_CASE("episode invariants: seed immutability, conservation, seed counts") {
  auto g = random_graph(400, 1600, 5);
  for (TrustModelKind k : {TrustModelKind::kUom, TrustModelKind::kHom, TrustModelKind::kNom}) {
    GameConfig cfg;
    cfg.trust.kind = k;
    cfg.rounds = 25;
    cfg.audit_opinions = true;
    HeuristicPolicy fp(Action{ActionKind::kSubGreedyFirst}), tp(Action{ActionKind::kBlockingFirst});
    Rng o(1), b(2), c(3), f(4), t(5);
    GameState st = new_game(g, cfg, o, b);
    for (std::size_t r = 1; r <= cfg.rounds; ++r) {
      std::vector<std::pair<NodeId, Opinion>> seeds;
      for (NodeId s : st.tp_seeds) seeds.emplace_back(s, st.users[s].opinion);
      for (NodeId s : st.fp_seeds) seeds.emplace_back(s, st.users[s].opinion);
      REQUIRE(play_round(st, fp, tp, cfg, c, f, t));
      for (const auto& [s, op] : seeds) CHECK(st.users[s].opinion == op);
      CHECK(st.tp_seeds.size() == r);
      CHECK(st.fp_seeds.size() == r);
      for (const UserState& u : st.users) REQUIRE(u.opinion.valid());
    }
    CHECK(st.opinions_checked > 0);
    CHECK(st.additivity_violations == 0);
  }
}

TEST_CASE("true-party influence never shrinks without an opponent") {
  auto g = random_graph(300, 1200, 6);
  for (TrustModelKind k : {TrustModelKind::kUom, TrustModelKind::kNom}) {
    GameConfig cfg;
    cfg.trust.kind = k;
    GameState st = fixed_game(g, cfg);
    HeuristicPolicy tp(Action{ActionKind::kCentralityFirst});
    Rng rng(9), prng(1);
    std::size_t prev = 0;
    for (int r = 0; r < 20; ++r) {
      const auto choice = tp.choose(context_of(st, Party::kTrue), prng);
      REQUIRE(choice);
      promote(st, choice->node, Party::kTrue, cfg);
      cascade(st, choice->node, 1, cfg, rng);
      const std::size_t now = influence_counts(st.users).tp;
      CHECK(now >= prev);
      prev = now;
    }
  }
}

TEST_CASE("small networks run out of candidates and flag it") {
  auto g = path_graph(5);
  GameConfig cfg;
  cfg.rounds = 10;
  HeuristicPolicy fp(Action{ActionKind::kCentralityFirst}), tp(Action{ActionKind::kCentralityFirst});
  const auto r = run_episode(g, cfg, fp, tp, 1);
  CHECK(r.exhausted);
  CHECK(r.rounds.size() == 3);
  CHECK(r.tp_percent() >= 0.0);
  CHECK(r.tp_percent() <= 100.0);
}

TEST_CASE("round log rows") {
  auto g = random_graph(200, 800, 7);
  GameConfig cfg;
  cfg.rounds = 12;
  HeuristicPolicy fp(Action{ActionKind::kActiveFirst}), tp(Action{ActionKind::kCentralityFirst});
  const auto r = run_episode(g, cfg, fp, tp, 2);
  CHECK_FALSE(r.exhausted);
  REQUIRE(r.rounds.size() == 12);
  for (std::size_t i = 0; i < 12; ++i) {
    CHECK(r.rounds[i].t == i + 1);
    CHECK(r.rounds[i].n_tp + r.rounds[i].n_fp <= 200);
  }
  const auto path = std::filesystem::temp_directory_path() / "uacim_rows.csv";
  write_rounds_csv(r, path);
  std::ifstream in(path);
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 13);
}

TEST_CASE("configuration is validated") {
  GameConfig cfg;
  cfg.gamma = 1.5;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.observability = -0.1;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.tp_propagations = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
}

}  // TEST_SUITE
