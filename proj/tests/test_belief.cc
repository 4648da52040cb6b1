#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "oracles.h"
#include "ue/belief.h"
#include "ue/errors.h"
#include "ue/games/games.h"

namespace ue {
namespace {

using games::kuhn::deal_action;
using games::kuhn::kBet;
using games::kuhn::kPass;

std::unique_ptr<HistoryState> play(const Game& game, std::initializer_list<Action> actions) {
  auto s = game.new_initial_state();
  for (Action a : actions) s->apply_action(a);
  return s;
}

std::vector<int> actions_of(const HistoryState& s) {
  std::vector<int> path;
  for (const auto& step : s.trajectory()) path.push_back(step.action);
  return path;
}

TEST(Belief, RecordFromState) {
  auto game = new_game("kuhn_poker");
  auto s = play(*game, {deal_action(0, 2), kPass, kBet});
  const auto r = record_from_state(*s, 0);
  EXPECT_EQ(r.player, 0);
  EXPECT_EQ(r.key, s->info_state_key(0));
  EXPECT_EQ(r.own_actions, (std::vector<Action>{kPass}));
  EXPECT_EQ(r.legal_actions, (std::vector<Action>{kPass, kBet}));
  EXPECT_TRUE(record_from_state(*s, 1).legal_actions.empty());
}

TEST(Belief, KuhnFacingBetMatchesPosterior) {
  auto game = new_game("kuhn_poker");
  const auto pi = uniform_joint_policy(*game);
  const auto record = record_from_state(*play(*game, {deal_action(0, 1), kBet}), 1);
  RngStream rng(1);
  const auto set = particle_sample(*game, pi, record, 10000, 0, rng);
  ASSERT_EQ(set.particles.size(), 10000u);
  int jack = 0;
  for (const auto& p : set.particles) {
    EXPECT_EQ(p->info_state_key(1), record.key);
    jack += actions_of(*p)[0] == deal_action(0, 1) ? 1 : 0;
  }
  // Player 1 holds Q; player 0 holds J or K with probability 1/2 each.
  const double sigma = std::sqrt(10000 * 0.25);
  EXPECT_NEAR(jack, 5000, 3 * sigma);
}

TEST(Belief, ParticleHistogramPassesChiSquare) {
  for (const char* name : {"kuhn_poker", "leduc_poker"}) {
    auto game = new_game(name);
    const auto tree = GameTree::build(game);
    RngStream pick(3);
    auto pi = uniform_joint_policy(*game);
    for (int p = 0; p < 2; ++p) {
      for (const auto& [key, d] : uniform_joint_policy(*game)[p].sorted_entries()) {
        pi[p].set_unchecked(key, testing::random_simplex(pick, d->size(), 0.1));
      }
    }
    const auto flat = to_flat(tree, pi);
    // Records: several on-policy decision states drawn by playing out pi.
    int tested = 0;
    for (int round = 0; round < 40 && tested < 4; ++round) {
      auto s = game->new_initial_state();
      const int depth = 1 + static_cast<int>(pick.uniform_int(6));
      int decisions = 0;
      while (!s->is_terminal()) {
        if (!s->is_chance_node() && ++decisions == depth) break;
        if (s->is_chance_node()) {
          const auto o = s->chance_outcomes();
          std::vector<double> w;
          for (const auto& c : o) w.push_back(c.probability);
          s->apply_action(o[pick.discrete(w)].action);
        } else {
          const auto d = pi.action_distribution(*s);
          s->apply_action(s->legal_actions()[pick.discrete(d)]);
        }
      }
      if (s->is_terminal()) continue;
      const int player = s->current_player();
      const auto post = posterior(tree, flat, s->info_state_key(player));
      if (post.entries.size() < 2) continue;
      ++tested;
      RngStream rng(100 + static_cast<std::uint64_t>(round));
      const auto set = particle_sample(*game, pi, record_from_state(*s, player), 10000, 0, rng);
      ASSERT_EQ(set.particles.size(), 10000u);
      std::map<std::vector<int>, double> counts;
      for (const auto& part : set.particles) {
        ASSERT_EQ(part->info_state_bytes(player), s->info_state_bytes(player));
        counts[actions_of(*part)] += 1;
      }
      std::vector<double> observed, expected;
      for (const auto& e : post.entries) {
        std::vector<int> path;
        for (const auto& step : tree.path(e.node)) path.push_back(step.action);
        observed.push_back(counts[path]);
        expected.push_back(e.probability);
        counts.erase(path);
      }
      EXPECT_TRUE(counts.empty()) << "particles outside the posterior support";
      EXPECT_GT(testing::chi_square_pvalue(observed, expected), 0.001) << name << " round " << round;
    }
    EXPECT_GE(tested, 2) << name;
  }
}

TEST(Belief, FirstDecisionWithoutPrivateDealAcceptsEveryPlayout) {
  auto game = new_game("abrupt_dark_hex", {{"size", "3"}});
  const auto pi = uniform_joint_policy(*game, Population::kLazy);
  RngStream rng(2);
  const auto root = record_from_state(*game->new_initial_state(), 0);
  const auto set0 = particle_sample(*game, pi, root, 10, 0, rng);
  EXPECT_EQ(set0.particles.size(), 10u);
  EXPECT_EQ(set0.attempts_used, 10);
  // Player 1's first decision: its key is still empty whatever player 0 played.
  const auto first1 = record_from_state(*play(*game, {4}), 1);
  const auto set1 = particle_sample(*game, pi, first1, 10, 0, rng);
  EXPECT_EQ(set1.particles.size(), 10u);
  EXPECT_EQ(set1.attempts_used, 10);
}

TEST(Belief, ImpossibleRecordGivesEmptySet) {
  auto game = new_game("kuhn_poker");
  const auto pi = uniform_joint_policy(*game);
  AgentRecord record = record_from_state(*play(*game, {deal_action(0, 1), kBet}), 1);
  // Player 0 "bet" with an action id that does not exist.
  record.key.bytes.back() = 7;
  RngStream rng(4);
  const auto set = particle_sample(*game, pi, record, 5, 200, rng);
  EXPECT_TRUE(set.particles.empty());
  EXPECT_EQ(set.attempts_used, 200);
  EXPECT_EQ(set.target_count, 5);
  const auto defaults = particle_sample(*game, pi, record, 2, 0, rng);
  EXPECT_EQ(defaults.attempts_used, 2 * kAttemptsPerParticle);
}

TEST(Belief, ZeroProbabilityOpponentActionIsImpossible) {
  auto game = new_game("kuhn_poker");
  auto pi = uniform_joint_policy(*game);
  for (int card : {1, 2}) {
    auto s = play(*game, {deal_action(card, 0)});
    pi[0].set_action_distribution(s->info_state_key(0), {1.0, 0.0});
  }
  const auto record = record_from_state(*play(*game, {deal_action(1, 0), kBet}), 1);
  RngStream rng(5);
  EXPECT_TRUE(particle_sample(*game, pi, record, 3, 300, rng).particles.empty());
}

TEST(Belief, OwnActionsAreForcedOffPolicy) {
  auto game = new_game("kuhn_poker");
  auto pi = uniform_joint_policy(*game);
  auto deal = play(*game, {deal_action(1, 0)});
  pi[0].set_action_distribution(deal->info_state_key(0), {0.0, 1.0});
  const auto record = record_from_state(*play(*game, {deal_action(1, 0), kPass, kBet}), 0);
  RngStream rng(6);
  const auto set = particle_sample(*game, pi, record, 20, 0, rng);
  EXPECT_EQ(set.particles.size(), 20u);
  for (const auto& p : set.particles) EXPECT_EQ(p->info_state_key(0), record.key);
}

TEST(Belief, FixedSeedIsDeterministic) {
  auto game = new_game("leduc_poker");
  const auto pi = uniform_joint_policy(*game);
  auto s = game->new_initial_state();
  s->apply_action(s->chance_outcomes()[4].action);
  s->apply_action(games::leduc::kCall);
  const auto record = record_from_state(*s, 1);
  RngStream a(77, 3), b(77, 3);
  const auto x = particle_sample(*game, pi, record, 50, 0, a);
  const auto y = particle_sample(*game, pi, record, 50, 0, b);
  ASSERT_EQ(x.particles.size(), y.particles.size());
  EXPECT_EQ(x.attempts_used, y.attempts_used);
  for (std::size_t i = 0; i < x.particles.size(); ++i) {
    EXPECT_EQ(x.particles[i]->trajectory(), y.particles[i]->trajectory());
  }
}

TEST(Belief, ParticleErrors) {
  auto game = new_game("kuhn_poker");
  const auto pi = uniform_joint_policy(*game);
  AgentRecord record;
  RngStream rng(1);
  EXPECT_THROW(particle_sample(*game, pi, record, -1, 0, rng), InvalidArgument);
  record.player = 3;
  EXPECT_THROW(particle_sample(*game, pi, record, 1, 0, rng), InvalidArgument);
}

TEST(Belief, ExactSampler) {
  auto game = new_game("kuhn_poker");
  const auto tree = GameTree::build(game);
  const auto flat = uniform_flat(tree);
  const auto key = play(*game, {deal_action(0, 1), kBet})->info_state_key(1);
  ExactSampler sampler(tree, flat);
  RngStream rng(8);
  int jack = 0;
  for (int i = 0; i < 10000; ++i) {
    auto s = sampler.sample(key, rng);
    EXPECT_EQ(s->info_state_key(1), key);
    jack += actions_of(*s)[0] == deal_action(0, 1) ? 1 : 0;
  }
  EXPECT_NEAR(jack, 5000, 3 * std::sqrt(2500.0));
  ExactSampler again(tree, flat);
  RngStream r1(9), r2(9);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(sampler.sample_node(key, r1), again.sample_node(key, r2));
  RngStream r3(9), r4(9);
  EXPECT_EQ(exact_sample(tree, flat, key, r3)->trajectory(), sampler.sample(key, r4)->trajectory());
}

TEST(Belief, ExactSamplerPointMassAndErrors) {
  auto game = new_game("abrupt_dark_hex", {{"size", "2"}});
  const auto tree = GameTree::build(game);
  ExactSampler sampler(tree, uniform_flat(tree));
  RngStream rng(10);
  const auto root = game->new_initial_state()->info_state_key(0);
  for (int i = 0; i < 10; ++i) EXPECT_TRUE(sampler.sample(root, rng)->trajectory().empty());
  EXPECT_THROW(sampler.sample(InfoStateKey{0, "zz"}, rng), UnknownInfoState);
}

}  // namespace
}  // namespace ue
