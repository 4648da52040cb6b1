// Tiny Hanabi: a two-step common-payoff card game. Chance privately deals a
// card to each player; player 0 acts seeing only its card; player 1 acts
// seeing its own card and player 0's action. Both receive
// payoff[card0][card1][action0][action1].

#include <charconv>
#include <sstream>
#include <string>
#include <vector>

#include "params.h"
#include "ue/games/games.h"

namespace ue::games {

// Bayesian-action-decoder example matrix: 2 cards, 3 actions.
const char* const kTinyHanabiDefaultPayoff =
    "10;0;0;4;8;4;10;0;0;"
    "0;0;10;4;8;4;0;0;10;"
    "0;0;10;4;8;4;0;0;0;"
    "10;0;0;4;8;4;10;0;0";

namespace {

enum Tag : std::uint8_t { kTagCard = 'c', kTagAction = 'a' };

class TinyHanabiGame;

struct TinyHanabiRules {
  int cards;
  int actions;
  std::vector<double> payoff;
  double at(int c0, int c1, int a0, int a1) const {
    return payoff[static_cast<std::size_t>(((c0 * cards + c1) * actions + a0) * actions + a1)];
  }
};

class TinyHanabiState final : public HistoryState {
 public:
  TinyHanabiState(std::shared_ptr<const Game> game, const TinyHanabiRules* rules)
      : HistoryState(std::move(game)), rules_(rules) {
    current_player_ = kChancePlayer;
  }

  std::unique_ptr<HistoryState> clone() const override {
    return std::make_unique<TinyHanabiState>(*this);
  }

  std::string to_string() const override {
    std::string out;
    for (const auto& step : trajectory()) {
      if (!out.empty()) out += ' ';
      out += std::to_string(step.action);
    }
    return out.empty() ? "deal" : out;
  }

 protected:
  void do_legal_actions(std::vector<Action>& out) const override {
    for (int a = 0; a < rules_->actions; ++a) out.push_back(a);
  }

  void do_chance_outcomes(std::vector<ChanceOutcome>& out) const override {
    const int n = rules_->cards * rules_->cards;
    for (int a = 0; a < n; ++a) out.push_back({a, 1.0 / n});
  }

  void do_apply(Action action) override {
    if (is_chance_node()) {
      cards_[0] = action / rules_->cards;
      cards_[1] = action % rules_->cards;
      observe(0, kTagCard, static_cast<std::uint8_t>(cards_[0]));
      observe(1, kTagCard, static_cast<std::uint8_t>(cards_[1]));
      current_player_ = 0;
      return;
    }
    observe_all(kTagAction, static_cast<std::uint8_t>(action));
    actions_[current_player_] = action;
    current_player_ = current_player_ == 0 ? 1 : kTerminalPlayer;
  }

  double do_utility(int) const override {
    return rules_->at(cards_[0], cards_[1], actions_[0], actions_[1]);
  }

 private:
  const TinyHanabiRules* rules_;
  int cards_[2] = {-1, -1};
  int actions_[2] = {-1, -1};
};

class TinyHanabiGame final : public Game {
 public:
  TinyHanabiGame(const GameParams& params, TinyHanabiRules rules)
      : Game("tiny_hanabi", params), rules_(std::move(rules)) {}
  int num_players() const override { return 2; }
  int max_actions() const override { return rules_.actions; }
  UtilityKind utility_kind() const override { return UtilityKind::kCommonPayoff; }
  std::unique_ptr<HistoryState> new_initial_state() const override {
    return std::make_unique<TinyHanabiState>(shared_from_this(), &rules_);
  }

 private:
  TinyHanabiRules rules_;
};

std::vector<double> parse_payoff(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ';')) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size()) {
      throw InvalidArgument("tiny_hanabi: bad payoff entry '" + item + "'");
    }
    values.push_back(v);
  }
  return values;
}

}  // namespace

std::shared_ptr<const Game> make_tiny_hanabi(const GameParams& params) {
  internal::check_known(params, "tiny_hanabi", {"cards", "actions", "payoff"});
  TinyHanabiRules rules;
  rules.cards = static_cast<int>(internal::get_int(params, "cards", 2, 1, 16));
  rules.actions = static_cast<int>(internal::get_int(params, "actions", 3, 1, 16));
  auto it = params.find("payoff");
  rules.payoff = parse_payoff(it == params.end() ? kTinyHanabiDefaultPayoff : it->second);
  const std::size_t expected =
      static_cast<std::size_t>(rules.cards * rules.cards * rules.actions * rules.actions);
  if (rules.payoff.size() != expected) {
    throw InvalidArgument("tiny_hanabi: payoff has " + std::to_string(rules.payoff.size()) +
                          " entries, expected " + std::to_string(expected));
  }
  return std::make_shared<TinyHanabiGame>(params, std::move(rules));
}

}  // namespace ue::games
