#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "oracles.h"
#include "ue/errors.h"
#include "ue/games/games.h"
#include "ue/tree.h"

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

// Kuhn payoff to player 0 from the betting rules alone.
double kuhn_oracle(int c0, int c1, const std::string& moves) {
  const double showdown = c0 > c1 ? 1.0 : -1.0;
  if (moves == "pp") return showdown;
  if (moves == "pbp") return -1.0;
  if (moves == "pbb" || moves == "bb") return 2.0 * showdown;
  if (moves == "bp") return 1.0;
  ADD_FAILURE() << "unexpected sequence " << moves;
  return 0.0;
}

TEST(GameKernel, RegistryNamesAndErrors) {
  const std::vector<std::string> expected = {"abrupt_dark_hex", "kuhn_poker",   "leduc_poker",
                                             "liars_dice_4",    "phantom_ttt",  "random_common_payoff",
                                             "tiny_hanabi"};
  EXPECT_EQ(registered_games(), expected);
  EXPECT_THROW(new_game("chess"), InvalidArgument);
  EXPECT_THROW(new_game("abrupt_dark_hex", {{"size", "0"}}), InvalidArgument);
  EXPECT_THROW(new_game("kuhn_poker", {{"cards", "4"}}), InvalidArgument);
  EXPECT_THROW(new_game("random_common_payoff", {{"seed", "x"}}), InvalidArgument);
}

TEST(GameKernel, KuhnRootIsSixEquallyLikelyDeals) {
  auto game = new_game("kuhn_poker");
  auto root = game->new_initial_state();
  ASSERT_TRUE(root->is_chance_node());
  const auto outcomes = root->chance_outcomes();
  ASSERT_EQ(outcomes.size(), 6u);
  std::set<std::pair<int, int>> deals;
  for (const auto& o : outcomes) {
    EXPECT_DOUBLE_EQ(o.probability, 1.0 / 6.0);
    for (int c0 = 0; c0 < 3; ++c0) {
      for (int c1 = 0; c1 < 3; ++c1) {
        if (c0 != c1 && deal_action(c0, c1) == o.action) deals.insert({c0, c1});
      }
    }
  }
  EXPECT_EQ(deals.size(), 6u);
}

TEST(GameKernel, KuhnLegalActionsAfterDeal) {
  auto game = new_game("kuhn_poker");
  auto s = play(*game, {deal_action(0, 1)});
  EXPECT_EQ(s->current_player(), 0);
  EXPECT_EQ(s->legal_actions(), (std::vector<Action>{kPass, kBet}));
}

TEST(GameKernel, KuhnUtilityExamples) {
  auto game = new_game("kuhn_poker");
  auto a = play(*game, {deal_action(0, 1), kBet, kPass});
  ASSERT_TRUE(a->is_terminal());
  EXPECT_EQ(a->utility(0), 1.0);
  EXPECT_EQ(a->utility(1), -1.0);
  auto b = play(*game, {deal_action(1, 0), kPass, kPass});
  ASSERT_TRUE(b->is_terminal());
  EXPECT_EQ(b->utility(0), 1.0);
  EXPECT_EQ(b->utility(1), -1.0);
}

TEST(GameKernel, KuhnUtilityTableMatchesBruteForce) {
  auto game = new_game("kuhn_poker");
  int terminals = 0;
  for (int c0 = 0; c0 < 3; ++c0) {
    for (int c1 = 0; c1 < 3; ++c1) {
      if (c0 == c1) continue;
      std::function<void(HistoryState&, std::string)> walk = [&](HistoryState& s, std::string moves) {
        if (s.is_terminal()) {
          ++terminals;
          EXPECT_EQ(s.utility(0), kuhn_oracle(c0, c1, moves)) << c0 << c1 << moves;
          EXPECT_EQ(s.utility(0) + s.utility(1), 0.0);
          return;
        }
        for (Action a : s.legal_actions()) walk(*s.child(a), moves + (a == kPass ? 'p' : 'b'));
      };
      walk(*play(*game, {deal_action(c0, c1)}), "");
    }
  }
  EXPECT_EQ(terminals, 30);
}

TEST(GameKernel, TerminalAndChanceMisuseThrows) {
  auto game = new_game("kuhn_poker");
  auto root = game->new_initial_state();
  EXPECT_THROW(root->utility(0), StateError);
  auto s = play(*game, {deal_action(2, 1), kPass, kPass});
  EXPECT_THROW(s->legal_actions(), StateError);
  EXPECT_THROW(s->chance_outcomes(), StateError);
  auto d = play(*game, {deal_action(2, 1)});
  EXPECT_THROW(d->chance_outcomes(), StateError);
  EXPECT_THROW(d->apply_action(7), InvalidArgument);
  EXPECT_THROW(root->apply_action(6), InvalidArgument);
}

TEST(GameKernel, InfoStateKeys) {
  auto game = new_game("kuhn_poker");
  auto jq = play(*game, {deal_action(0, 1)});
  auto jk = play(*game, {deal_action(0, 2)});
  EXPECT_EQ(jq->info_state_key(0), jk->info_state_key(0));
  EXPECT_NE(jq->info_state_key(1), jk->info_state_key(1));
  EXPECT_NE(jq->info_state_key(0), jq->info_state_key(1));
  auto after = jq->child(kPass);
  EXPECT_NE(after->info_state_key(0), jq->info_state_key(0));
  const auto key = jq->info_state_key(0);
  EXPECT_EQ(InfoStateKey::from_hex(0, key.hex()), key);
  EXPECT_THROW(InfoStateKey::from_hex(0, "abc"), InvalidArgument);
  EXPECT_THROW(InfoStateKey::from_hex(0, "zz"), InvalidArgument);
  EXPECT_THROW(jq->info_state_key(2), InvalidArgument);
}

TEST(GameKernel, PhantomTttCollisionsAndActions) {
  auto game = new_game("phantom_ttt");
  auto s = game->new_initial_state();
  EXPECT_EQ(s->legal_actions().size(), 9u);
  s->apply_action(4);
  EXPECT_EQ(s->current_player(), 1);
  EXPECT_EQ(s->legal_actions().size(), 9u);
  const auto before = s->info_state_key(1);
  s->apply_action(4);
  EXPECT_EQ(s->current_player(), 1);
  EXPECT_EQ(s->legal_actions().size(), 8u);
  EXPECT_NE(s->info_state_key(1), before);
  EXPECT_EQ(s->to_string(), ".../.x./...");
}

TEST(GameKernel, AbruptDarkHexCollisionEndsTurn) {
  auto game = new_game("abrupt_dark_hex", {{"size", "3"}});
  auto s = game->new_initial_state();
  EXPECT_EQ(s->legal_actions().size(), 9u);
  s->apply_action(4);
  ASSERT_EQ(s->current_player(), 1);
  const auto key0 = s->info_state_key(0);
  s->apply_action(4);
  EXPECT_EQ(s->current_player(), 0);
  EXPECT_EQ(s->to_string(), ".../.x./...");
  EXPECT_EQ(s->info_state_key(0), key0);
  s->apply_action(0);
  ASSERT_EQ(s->current_player(), 1);
  const auto legal = s->legal_actions();
  EXPECT_EQ(legal.size(), 8u);
  EXPECT_EQ(std::count(legal.begin(), legal.end(), 4), 0);
}

TEST(GameKernel, AbruptDarkHexWinnerTakesOne) {
  auto game = new_game("abrupt_dark_hex", {{"size", "2"}});
  // Player 0 connects top to bottom through column 0.
  auto s = play(*game, {0, 1, 2});
  ASSERT_TRUE(s->is_terminal());
  EXPECT_EQ(s->utility(0), 1.0);
  EXPECT_EQ(s->utility(1), -1.0);
}

TEST(GameKernel, TinyHanabiCommonPayoffAndMaximum) {
  auto game = new_game("tiny_hanabi");
  EXPECT_EQ(game->utility_kind(), UtilityKind::kCommonPayoff);
  for_each_history(*game, [](const HistoryState& s) {
    if (s.is_terminal()) {
      EXPECT_EQ(s.utility(0), s.utility(1));
    }
  });
  // Exhaustive search over pure joint policies: player 0 maps card to
  // action, player 1 maps (card, observed action) to action.
  double best = 0.0;
  const int c = 2, k = 3;
  for (int p0 = 0; p0 < k * k; ++p0) {
    const int a0[2] = {p0 % k, p0 / k};
    double total = 0.0;
    for (int c0 = 0; c0 < c; ++c0) {
      for (int c1 = 0; c1 < c; ++c1) {
        double m = -1e300;
        for (int a1 = 0; a1 < k; ++a1) {
          m = std::max(m, play(*game, {c0 * c + c1, a0[c0], a1})->utility(0));
        }
        total += m / 4.0;
      }
    }
    best = std::max(best, total);
  }
  EXPECT_DOUBLE_EQ(best, 10.0);
}

TEST(GameKernel, LiarsDiceShape) {
  auto game = new_game("liars_dice_4");
  auto root = game->new_initial_state();
  ASSERT_TRUE(root->is_chance_node());
  double total = 0.0;
  for (const auto& o : root->chance_outcomes()) total += o.probability;
  EXPECT_NEAR(total, 1.0, 1e-12);
}

// Node counts pinned from the enumerator.
TEST(GameKernel, PinnedTreeSizes) {
  const std::vector<std::tuple<std::string, GameParams, std::size_t>> cases = {
      {"kuhn_poker", {}, 55},
      {"leduc_poker", {}, 1936},
      {"liars_dice_4", {}, 8177},
      {"abrupt_dark_hex", {{"size", "2"}}, 471},
      {"tiny_hanabi", {}, 53},
      {"random_common_payoff", {}, 61},
  };
  for (const auto& [name, params, nodes] : cases) {
    auto game = new_game(name, params);
    EXPECT_EQ(for_each_history(*game, [](const HistoryState&) {}), nodes) << name;
    EXPECT_EQ(GameTree::build(game).num_nodes(), nodes) << name;
  }
  auto rcp = new_game("random_common_payoff", {{"seed", "1"}, {"size", "4"}});
  const auto n1 = for_each_history(*rcp, [](const HistoryState&) {});
  const auto n2 = for_each_history(*new_game("random_common_payoff", {{"seed", "1"}, {"size", "4"}}),
                                   [](const HistoryState&) {});
  EXPECT_EQ(n1, n2);
}

TEST(GameKernel, LargeBoardsExceedBudget) {
  auto hex = new_game("abrupt_dark_hex", {{"size", "3"}});
  EXPECT_THROW(for_each_history(*hex, [](const HistoryState&) {}), BudgetExceeded);
  EXPECT_THROW(GameTree::build(new_game("phantom_ttt"), 100000), BudgetExceeded);
}

class AllSmallGames : public ::testing::TestWithParam<std::pair<std::string, GameParams>> {};

TEST_P(AllSmallGames, Invariants) {
  auto game = new_game(GetParam().first, GetParam().second);
  // key -> (own key sequence, own actions) seen on the way to it
  std::map<InfoStateKey, std::vector<std::string>> recall;
  for_each_history(*game, [&](const HistoryState& s) {
    auto rebuilt = replay(*game, s.trajectory());
    for (int p = 0; p < game->num_players(); ++p) {
      EXPECT_EQ(rebuilt->info_state_bytes(p), s.info_state_bytes(p));
    }
    if (s.is_terminal()) {
      if (game->utility_kind() == UtilityKind::kZeroSum) {
        EXPECT_EQ(s.utility(0) + s.utility(1), 0.0);
      } else {
        EXPECT_EQ(s.utility(0), s.utility(1));
      }
      return;
    }
    if (s.is_chance_node()) {
      double total = 0.0;
      for (const auto& o : s.chance_outcomes()) total += o.probability;
      EXPECT_NEAR(total, 1.0, 1e-12);
      return;
    }
    EXPECT_FALSE(s.legal_actions().empty());
    const int p = s.current_player();
    // Own decision history: keys at own earlier decisions plus actions taken.
    std::vector<std::string> own;
    auto walk = game->new_initial_state();
    for (const auto& step : s.trajectory()) {
      if (step.player == p) {
        own.push_back(walk->info_state_bytes(p));
        own.push_back(std::to_string(step.action));
      }
      walk->apply_action(step.action);
    }
    auto [it, inserted] = recall.emplace(s.info_state_key(p), own);
    if (!inserted) {
      EXPECT_EQ(it->second, own) << "perfect recall violated";
    }
  });
}

INSTANTIATE_TEST_SUITE_P(
    Games, AllSmallGames,
    ::testing::Values(std::make_pair(std::string("kuhn_poker"), GameParams{}),
                      std::make_pair(std::string("leduc_poker"), GameParams{}),
                      std::make_pair(std::string("liars_dice_4"), GameParams{}),
                      std::make_pair(std::string("abrupt_dark_hex"), GameParams{{"size", "2"}}),
                      std::make_pair(std::string("tiny_hanabi"), GameParams{}),
                      std::make_pair(std::string("random_common_payoff"),
                                     GameParams{{"seed", "7"}, {"size", "3"}})),
    [](const auto& info) { return info.param.first; });

TEST(GameKernel, KeysArePrefixConsistent) {
  auto game = new_game("leduc_poker");
  for_each_history(*game, [&](const HistoryState& s) {
    if (s.trajectory().empty()) return;
    auto parent = replay(*game, std::span(s.trajectory()).first(s.trajectory().size() - 1));
    for (int p = 0; p < 2; ++p) {
      const auto& a = parent->info_state_bytes(p);
      const auto& b = s.info_state_bytes(p);
      EXPECT_EQ(b.compare(0, a.size(), a), 0);
      EXPECT_EQ(a.size() % 2, 0u);
    }
  });
}

TEST(GameKernel, MatrixFixtureBehaves) {
  auto game = testing::MatrixGame::make({{1, -1}, {-1, 1}});
  auto s = play(*game, {1, 0});
  ASSERT_TRUE(s->is_terminal());
  EXPECT_EQ(s->utility(0), -1.0);
  EXPECT_EQ(play(*game, {0})->info_state_key(1), play(*game, {1})->info_state_key(1));
}

}  // namespace
}  // namespace ue
