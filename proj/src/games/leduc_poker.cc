// Two-player Leduc hold'em: deck J J Q Q K K, ante 1, bets of 2 then 4,
// at most two raises per round. Chance deals ranks, so the deal node has
// nine outcomes (ordered rank pairs) weighted by card multiplicity.

#include <array>
#include <string>

#include "params.h"
#include "ue/games/games.h"

namespace ue::games {

namespace {

enum Tag : std::uint8_t { kTagCard = 'c', kTagAction = 'a', kTagPublic = 'p' };

constexpr std::array<int, 2> kBetSize = {2, 4};
constexpr int kMaxRaises = 2;

class LeducState final : public HistoryState {
 public:
  explicit LeducState(std::shared_ptr<const Game> game)
      : HistoryState(std::move(game)) {
    current_player_ = kChancePlayer;
  }

  std::unique_ptr<HistoryState> clone() const override {
    return std::make_unique<LeducState>(*this);
  }

  std::string to_string() const override {
    static constexpr char kRanks[] = "JQK";
    if (cards_[0] < 0) return "deal";
    std::string out;
    out += kRanks[cards_[0]];
    out += kRanks[cards_[1]];
    if (public_card_ >= 0) {
      out += '|';
      out += kRanks[public_card_];
    }
    out += ' ' + moves_;
    return out;
  }

 protected:
  void do_legal_actions(std::vector<Action>& out) const override {
    if (contrib_[current_player_] < contrib_[1 - current_player_]) {
      out.push_back(leduc::kFold);
    }
    out.push_back(leduc::kCall);
    if (raises_ < kMaxRaises) out.push_back(leduc::kRaise);
  }

  void do_chance_outcomes(std::vector<ChanceOutcome>& out) const override {
    if (cards_[0] < 0) {
      for (int r0 = 0; r0 < 3; ++r0) {
        for (int r1 = 0; r1 < 3; ++r1) {
          double p = (2.0 / 6.0) * ((r0 == r1 ? 1.0 : 2.0) / 5.0);
          out.push_back({leduc::deal_action(r0, r1), p});
        }
      }
      return;
    }
    for (int r = 0; r < 3; ++r) {
      int remaining = 2 - (cards_[0] == r) - (cards_[1] == r);
      if (remaining > 0) out.push_back({r, remaining / 4.0});
    }
  }

  void do_apply(Action action) override {
    if (is_chance_node()) {
      if (cards_[0] < 0) {
        cards_ = {action / 3, action % 3};
        observe(0, kTagCard, static_cast<std::uint8_t>(cards_[0]));
        observe(1, kTagCard, static_cast<std::uint8_t>(cards_[1]));
      } else {
        public_card_ = action;
        observe_all(kTagPublic, static_cast<std::uint8_t>(action));
        moves_ += '/';
      }
      current_player_ = 0;
      return;
    }

    const int me = current_player_;
    const int other = 1 - me;
    observe_all(kTagAction, static_cast<std::uint8_t>(action));
    if (action == leduc::kFold) {
      moves_ += 'f';
      folded_ = me;
      current_player_ = kTerminalPlayer;
      return;
    }
    if (action == leduc::kRaise) {
      moves_ += 'r';
      contrib_[me] = contrib_[other] + kBetSize[round_];
      ++raises_;
      ++actions_this_round_;
      current_player_ = other;
      return;
    }
    moves_ += 'c';
    const bool was_facing_bet = contrib_[me] < contrib_[other];
    contrib_[me] = contrib_[other];
    ++actions_this_round_;
    if (was_facing_bet || actions_this_round_ >= 2) {
      end_round();
    } else {
      current_player_ = other;
    }
  }

  double do_utility(int player) const override {
    int winner;
    if (folded_ >= 0) {
      winner = 1 - folded_;
    } else {
      auto strength = [&](int p) {
        return cards_[p] == public_card_ ? 10 + cards_[p] : cards_[p];
      };
      int s0 = strength(0), s1 = strength(1);
      if (s0 == s1) return 0.0;
      winner = s0 > s1 ? 0 : 1;
    }
    double won = contrib_[1 - winner];
    return player == winner ? won : -won;
  }

 private:
  void end_round() {
    if (round_ == 0) {
      round_ = 1;
      raises_ = 0;
      actions_this_round_ = 0;
      current_player_ = kChancePlayer;
    } else {
      current_player_ = kTerminalPlayer;
    }
  }

  std::array<int, 2> cards_ = {-1, -1};
  int public_card_ = -1;
  std::array<int, 2> contrib_ = {1, 1};
  int round_ = 0;
  int raises_ = 0;
  int actions_this_round_ = 0;
  int folded_ = -1;
  std::string moves_;
};

class LeducGame final : public Game {
 public:
  explicit LeducGame(const GameParams& params) : Game("leduc_poker", params) {}
  int num_players() const override { return 2; }
  int max_actions() const override { return 3; }
  UtilityKind utility_kind() const override { return UtilityKind::kZeroSum; }
  std::unique_ptr<HistoryState> new_initial_state() const override {
    return std::make_unique<LeducState>(shared_from_this());
  }
};

}  // namespace

std::shared_ptr<const Game> make_leduc_poker(const GameParams& params) {
  internal::check_known(params, "leduc_poker", {});
  return std::make_shared<LeducGame>(params);
}

}  // namespace ue::games
