#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ue/errors.h"
#include "ue/games/games.h"
#include "ue/harness/agents.h"
#include "ue/harness/cli.h"
#include "ue/harness/config.h"
#include "ue/harness/experiments.h"
#include "ue/harness/report.h"

namespace ue::harness {
namespace {

ExperimentConfig make_config(const std::string& command,
                             std::initializer_list<std::pair<std::string, std::string>> kv) {
  ExperimentConfig c(command);
  for (const auto& [k, v] : kv) c.set(k, v);
  return c;
}

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ue");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST(Config, TypedAccessorsNameTheField) {
  auto c = make_config("match", {{"games", "12"}, {"eta", "0.5"}, {"etas", "0.1, 1,10"}, {"seed", "9"}});
  EXPECT_EQ(c.get_long("games", 1, 1, 100), 12);
  EXPECT_EQ(c.get_double("eta", 0.0), 0.5);
  EXPECT_EQ(c.get_double("alpha", 0.25), 0.25);
  EXPECT_EQ(c.get_double_list("etas"), (std::vector<double>{0.1, 1, 10}));
  EXPECT_EQ(c.seed(), 9u);
  EXPECT_THROW(c.set("colour", "red"), InvalidArgument);
  c.set("games", "0");
  try {
    c.get_long("games", 1, 1, 100);
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_EQ(std::string(e.what()).rfind("games", 0), 0u) << e.what();
  }
  c.set("eta", "fast");
  EXPECT_THROW(c.get_double("eta", 0.0), InvalidArgument);
  EXPECT_THROW(ExperimentConfig("x").seed(), InvalidArgument);
  EXPECT_THROW(ExperimentConfig("x").require_string("game"), InvalidArgument);
}

TEST(Config, HashCoversResultsNotOutputPaths) {
  auto a = make_config("anneal", {{"game", "kuhn_poker"}, {"seed", "1"}});
  auto b = make_config("anneal", {{"seed", "1"}, {"game", "kuhn_poker"}, {"out", "/tmp/x.csv"}});
  EXPECT_EQ(a.hash(), b.hash());
  EXPECT_EQ(a.canonical(), b.canonical());
  auto c = make_config("anneal", {{"game", "kuhn_poker"}, {"seed", "2"}});
  EXPECT_NE(a.hash(), c.hash());
  EXPECT_NE(a.hash(), make_config("converge", {{"game", "kuhn_poker"}, {"seed", "1"}}).hash());
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cull);
  EXPECT_EQ(hex64(0xab), "00000000000000ab");
  EXPECT_EQ(metadata_line(a), "# config_hash=" + hex64(a.hash()) + " seed=1 version=0.1.0");
}

TEST(Config, FileMergeKeepsCommandLineValues) {
  auto c = make_config("match", {{"seed", "5"}});
  std::istringstream file("# comment\ngame = kuhn_poker\nseed=7\nagent-a=uniform  # trailing\n\n");
  merge_config_text(file, c, "test");
  EXPECT_EQ(c.require_string("game"), "kuhn_poker");
  EXPECT_EQ(c.require_string("agent_a"), "uniform");
  EXPECT_EQ(c.seed(), 5u);
  std::istringstream bad("nonsense\n");
  EXPECT_THROW(merge_config_text(bad, c, "test"), InvalidArgument);
  EXPECT_THROW(merge_config_file("/nonexistent.cfg", c), InvalidArgument);
}

TEST(Config, MakeGame) {
  EXPECT_EQ(make_game(make_config("x", {{"game", "abrupt_dark_hex"}, {"size", "2"}}))->description(),
            new_game("abrupt_dark_hex", {{"size", "2"}})->description());
  EXPECT_EQ(make_game(make_config("x", {{"game", "tiny_hanabi"}, {"params", "cards=1,actions=2,payoff=1;0;0;1"}}))
                ->max_actions(),
            2);
  EXPECT_THROW(make_game(make_config("x", {{"game", "go"}})), InvalidArgument);
  EXPECT_THROW(make_game(make_config("x", {{"game", "kuhn_poker"}, {"params", "novalue"}})), InvalidArgument);
}

TEST(Report, BootstrapOfConstantSampleIsDegenerate) {
  const std::vector<double> x(37, 0.3);
  RngStream rng(1);
  const auto ci = bootstrap_ci(x, kBootstrapResamples, 0.95, rng);
  EXPECT_EQ(ci.lower, 0.3);
  EXPECT_EQ(ci.upper, 0.3);
  EXPECT_EQ(sample_mean(x), 0.3);
  EXPECT_THROW(bootstrap_ci(std::vector<double>{}, 100, 0.95, rng), InvalidArgument);
}

TEST(Report, BootstrapCoversMean) {
  RngStream data(2);
  std::vector<double> x(500);
  for (double& v : x) v = data.uniform() < 0.5 ? 1.0 : -1.0;
  RngStream rng(3);
  const auto ci = bootstrap_ci(x, 2000, 0.95, rng);
  const double m = sample_mean(x);
  EXPECT_LE(ci.lower, m);
  EXPECT_GE(ci.upper, m);
  EXPECT_NEAR(ci.upper - ci.lower, 2 * 1.96 * std::sqrt(1.0 / 500), 0.03);
}

TEST(Match, SeatsAlternateExactly) {
  const auto report = play_match(make_config(
      "match", {{"game", "kuhn_poker"}, {"agent_a", "first"}, {"agent_b", "uniform"}, {"games", "40"}, {"seed", "3"}}));
  EXPECT_EQ(report.games, 40);
  EXPECT_EQ(report.seat_games[0], 20);
  EXPECT_EQ(report.seat_games[1], 20);
  EXPECT_EQ(report.returns.size(), 40u);
  EXPECT_LE(report.ci.lower, report.mean);
  EXPECT_GE(report.ci.upper, report.mean);
}

TEST(Match, UniformSelfPlayContainsZero) {
  const auto report = play_match(make_config(
      "match", {{"game", "kuhn_poker"}, {"agent_a", "uniform"}, {"agent_b", "uniform"}, {"games", "2000"}, {"seed", "4"}}));
  EXPECT_LE(report.ci.lower, 0.0);
  EXPECT_GE(report.ci.upper, 0.0);
}

TEST(Match, BestResponseBeatsItsTarget) {
  const auto report = play_match(make_config(
      "match", {{"game", "kuhn_poker"}, {"agent_a", "br:uniform"}, {"agent_b", "uniform"}, {"games", "4000"}, {"seed", "5"}}));
  EXPECT_GT(report.ci.lower, 0.2);
}

TEST(Match, WorkersDoNotChangeResults) {
  auto c = make_config("match", {{"game", "kuhn_poker"}, {"agent_a", "uniform+mmds"}, {"agent_b", "first"},
                                 {"games", "60"}, {"seed", "6"}, {"workers", "1"}});
  const auto one = play_match(c);
  c.set("workers", "2");
  const auto two = play_match(c);
  EXPECT_EQ(one.returns, two.returns);
}

TEST(Match, Errors) {
  EXPECT_THROW(play_match(make_config("match", {{"game", "kuhn_poker"}, {"agent_a", "uniform"}, {"agent_b", "uniform"},
                                                {"games", "0"}, {"seed", "1"}})),
               InvalidArgument);
  EXPECT_THROW(play_match(make_config("match", {{"game", "kuhn_poker"}, {"agent_a", "wizard"}, {"agent_b", "uniform"},
                                                {"games", "2"}, {"seed", "1"}})),
               InvalidArgument);
  EXPECT_THROW(play_match(make_config("match", {{"game", "kuhn_poker"}, {"agent_a", "first+mds"},
                                                {"agent_b", "uniform"}, {"games", "2"}, {"seed", "1"}})),
               InvalidArgument);
}

TEST(Agents, SearchConfigDefaults) {
  const auto c = search_config_from(SearchKind::kMmds, make_config("match", {}));
  EXPECT_EQ(c.update.eta, 50.0);
  EXPECT_EQ(c.update.alpha, 0.01);
  EXPECT_EQ(c.particles, 10);
  EXPECT_EQ(c.belief, BeliefSource::kParticles);
  const auto e = search_config_from(SearchKind::kMds, make_config("match", {{"belief", "exact"}, {"histories", "7"}}));
  EXPECT_EQ(e.belief, BeliefSource::kExact);
  EXPECT_EQ(e.num_histories, 7);
  EXPECT_THROW(search_config_from(SearchKind::kMds, make_config("match", {{"belief", "oracle"}})), InvalidArgument);
}

TEST(Experiments, AnnealSingleIteration) {
  std::ostringstream out;
  run_annealed(make_config("anneal", {{"game", "kuhn_poker"}, {"iters", "1"}, {"seed", "1"}}), out);
  const auto l = lines(out.str());
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[0], "t,eta,alpha,j0,j1,exploitability,gap,linf_change");
  EXPECT_EQ(l[1].rfind("1,1,1,", 0), 0u);
  EXPECT_EQ(l[2].rfind("# config_hash=", 0), 0u);
}

TEST(Experiments, ConvergeRejectsCommonPayoff) {
  std::ostringstream out;
  EXPECT_THROW(run_convergence(make_config("converge", {{"game", "tiny_hanabi"}, {"iters", "1"}, {"seed", "1"}}), out),
               InvalidArgument);
}

TEST(Experiments, SweepTinyStepMatchesBlueprint) {
  auto c = make_config("sweep", {{"game", "tiny_hanabi"}, {"etas", "1e-9,10"}, {"games", "400"}, {"seed", "2"}});
  std::ostringstream out;
  run_stepsize_sweep(c, out);
  const auto l = lines(out.str());
  ASSERT_EQ(l.size(), 4u);
  EXPECT_EQ(l[0], "eta,mean,ci_lower,ci_upper,games");
  // Blueprint self-play value of the uniform policy, exactly.
  auto game = new_game("tiny_hanabi");
  const auto tree = GameTree::build(game);
  const double blueprint = expected_return(tree, uniform_flat(tree))[0];
  std::istringstream row(l[1]);
  std::string eta, mean, lo, hi;
  std::getline(row, eta, ',');
  std::getline(row, mean, ',');
  std::getline(row, lo, ',');
  std::getline(row, hi, ',');
  EXPECT_EQ(eta, "1e-09");
  EXPECT_LE(std::stod(lo), blueprint);
  EXPECT_GE(std::stod(hi), blueprint);
}

TEST(Experiments, SweepErrors) {
  std::ostringstream out;
  EXPECT_THROW(run_stepsize_sweep(make_config("sweep", {{"game", "tiny_hanabi"}, {"etas", "1,1"}, {"seed", "1"}}), out),
               InvalidArgument);
  EXPECT_THROW(run_stepsize_sweep(make_config("sweep", {{"game", "tiny_hanabi"}, {"etas", ""}, {"seed", "1"}}), out),
               InvalidArgument);
  EXPECT_THROW(run_stepsize_sweep(make_config("sweep", {{"game", "kuhn_poker"}, {"etas", "1"}, {"seed", "1"}}), out),
               InvalidArgument);
}

TEST(Experiments, ExploitRowsAreNonnegative) {
  std::ostringstream out;
  run_exploitability_eval(make_config("exploit", {{"game", "kuhn_poker"}, {"seed", "1"}}), out);
  const auto l = lines(out.str());
  ASSERT_EQ(l.size(), 6u);
  EXPECT_EQ(l[0], "policy,exploitability,j0,j1");
  EXPECT_EQ(l[1].rfind("uniform,0.458333333333333", 0), 0u) << l[1];
  for (std::size_t i = 1; i + 1 < l.size(); ++i) {
    const auto first = l[i].find(',');
    EXPECT_GE(std::stod(l[i].substr(first + 1)), 0.0);
  }
}

TEST(Experiments, ExploitPolicyFile) {
  const auto path = (std::filesystem::temp_directory_path() / "ue_harness_policy.txt").string();
  std::ostringstream ignored;
  run_annealed(make_config("anneal", {{"game", "kuhn_poker"}, {"iters", "200"}, {"seed", "1"}, {"policy_out", path}}),
               ignored);
  std::ostringstream out;
  run_exploitability_eval(make_config("exploit", {{"game", "kuhn_poker"}, {"seed", "1"}, {"policy", path}}), out);
  const auto l = lines(out.str());
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[1].rfind("policy,", 0), 0u);
  EXPECT_LT(std::stod(l[1].substr(7)), 0.05);
  std::filesystem::remove(path);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli({"exploit", "--game", "kuhn_poker", "--seed", "1"}).code, kExitOk);
  EXPECT_EQ(cli({"exploit", "--game", "nope", "--seed", "1"}).code, kExitValidation);
  EXPECT_EQ(cli({"exploit", "--game", "kuhn_poker"}).code, kExitValidation);
  EXPECT_EQ(cli({"bogus"}).code, kExitValidation);
  EXPECT_EQ(cli({"match", "--game", "kuhn_poker", "--agent-a", "uniform", "--agent-b", "uniform", "--games", "0",
                 "--seed", "1"}).code,
            kExitValidation);
  const auto budget = cli({"exploit", "--game", "abrupt_dark_hex", "--size", "3", "--seed", "1"});
  EXPECT_EQ(budget.code, kExitBudget);
  EXPECT_NE(budget.err.find("abrupt_dark_hex"), std::string::npos);
}

TEST(Cli, OutputFileAndConfigFile) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto cfg = (dir / "ue_cli_test.cfg").string();
  const auto csv = (dir / "ue_cli_test.csv").string();
  {
    std::ofstream f(cfg);
    f << "game=kuhn_poker\nseed=3\niters=2\n";
  }
  const auto r = cli({"anneal", "--config", cfg, "--out", csv, "--iters", "3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(csv);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(lines(text.str()).size(), 5u);
  std::filesystem::remove(cfg);
  std::filesystem::remove(csv);
}

TEST(Cli, SelfcheckPasses) {
  const auto r = cli({"selfcheck", "--seed", "1"});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  EXPECT_EQ(r.out.find(",fail,"), std::string::npos) << r.out;
}

}  // namespace
}  // namespace ue::harness
