// Two-player Kuhn poker: three cards, ante 1, one bet of 1.
// The deal is a single chance node over the six ordered card pairs.

#include <array>
#include <string>

#include "params.h"
#include "ue/games/games.h"

namespace ue::games {

namespace {

enum Tag : std::uint8_t { kTagCard = 'c', kTagAction = 'a' };

class KuhnGame;

class KuhnState final : public HistoryState {
 public:
  explicit KuhnState(std::shared_ptr<const Game> game)
      : HistoryState(std::move(game)) {
    current_player_ = kChancePlayer;
  }

  std::unique_ptr<HistoryState> clone() const override {
    return std::make_unique<KuhnState>(*this);
  }

  std::string to_string() const override {
    static constexpr char kCards[] = "JQK";
    std::string out;
    if (cards_[0] < 0) return "deal";
    out += kCards[cards_[0]];
    out += kCards[cards_[1]];
    out += ' ';
    for (int i = 0; i < num_moves_; ++i) out += moves_[i] == kuhn::kPass ? 'p' : 'b';
    return out;
  }

 protected:
  void do_legal_actions(std::vector<Action>& out) const override {
    out.push_back(kuhn::kPass);
    out.push_back(kuhn::kBet);
  }

  void do_chance_outcomes(std::vector<ChanceOutcome>& out) const override {
    for (int a = 0; a < 6; ++a) out.push_back({a, 1.0 / 6.0});
  }

  void do_apply(Action action) override {
    if (is_chance_node()) {
      int c0 = action / 2;
      int rest = action % 2;
      int c1 = rest < c0 ? rest : rest + 1;
      cards_ = {c0, c1};
      observe(0, kTagCard, static_cast<std::uint8_t>(c0));
      observe(1, kTagCard, static_cast<std::uint8_t>(c1));
      current_player_ = 0;
      return;
    }
    observe_all(kTagAction, static_cast<std::uint8_t>(action));
    moves_[num_moves_++] = action;
    if (finished()) {
      current_player_ = kTerminalPlayer;
    } else {
      current_player_ = 1 - current_player_;
    }
  }

  double do_utility(int player) const override {
    // Pot contributions: ante 1 plus any bet/call.
    std::array<double, 2> put = {1.0, 1.0};
    int folder = -1;
    bool bet_seen = false;
    for (int i = 0; i < num_moves_; ++i) {
      int actor = i % 2;
      if (moves_[i] == kuhn::kBet) {
        put[actor] += 1.0;
        bet_seen = true;
      } else if (bet_seen) {
        folder = actor;
      }
    }
    int winner;
    if (folder >= 0) {
      winner = 1 - folder;
    } else {
      winner = cards_[0] > cards_[1] ? 0 : 1;
    }
    double pot_share = put[1 - winner];
    return player == winner ? pot_share : -pot_share;
  }

 private:
  bool finished() const {
    // pp, bp, bb, pbp, pbb
    if (num_moves_ == 2) {
      return !(moves_[0] == kuhn::kPass && moves_[1] == kuhn::kBet);
    }
    return num_moves_ == 3;
  }

  std::array<int, 2> cards_ = {-1, -1};
  std::array<Action, 3> moves_ = {0, 0, 0};
  int num_moves_ = 0;
};

class KuhnGame final : public Game {
 public:
  explicit KuhnGame(const GameParams& params) : Game("kuhn_poker", params) {}
  int num_players() const override { return 2; }
  int max_actions() const override { return 2; }
  UtilityKind utility_kind() const override { return UtilityKind::kZeroSum; }
  std::unique_ptr<HistoryState> new_initial_state() const override {
    return std::make_unique<KuhnState>(shared_from_this());
  }
};

}  // namespace

int kuhn::deal_action(int card0, int card1) {
  return card0 * 2 + (card1 < card0 ? card1 : card1 - 1);
}

std::shared_ptr<const Game> make_kuhn_poker(const GameParams& params) {
  internal::check_known(params, "kuhn_poker", {});
  return std::make_shared<KuhnGame>(params);
}

}  // namespace ue::games
