// Two-player Liar's Dice with one die per player. Bids (quantity, face) are
// ranked (quantity - 1) * sides + (face - 1) and must strictly increase; the
// last action id is the challenge. No face is wild.

#include <string>
#include <vector>

#include "params.h"
#include "ue/games/games.h"

namespace ue::games {

namespace {

enum Tag : std::uint8_t { kTagDie = 'd', kTagAction = 'a' };

class LiarsDiceState final : public HistoryState {
 public:
  LiarsDiceState(std::shared_ptr<const Game> game, int sides)
      : HistoryState(std::move(game)), sides_(sides) {
    current_player_ = kChancePlayer;
  }

  std::unique_ptr<HistoryState> clone() const override {
    return std::make_unique<LiarsDiceState>(*this);
  }

  std::string to_string() const override {
    if (dice_[0] < 0) return "roll";
    std::string out = std::to_string(dice_[0] + 1) + std::to_string(dice_[1] + 1);
    for (Action a : bids_) {
      out += ' ';
      if (a == liar_action()) {
        out += "liar";
      } else {
        out += std::to_string(a / sides_ + 1) + "x" + std::to_string(a % sides_ + 1);
      }
    }
    return out;
  }

 protected:
  void do_legal_actions(std::vector<Action>& out) const override {
    int first = bids_.empty() ? 0 : bids_.back() + 1;
    for (int a = first; a < liar_action(); ++a) out.push_back(a);
    if (!bids_.empty()) out.push_back(liar_action());
  }

  void do_chance_outcomes(std::vector<ChanceOutcome>& out) const override {
    const int n = sides_ * sides_;
    for (int a = 0; a < n; ++a) out.push_back({a, 1.0 / n});
  }

  void do_apply(Action action) override {
    if (is_chance_node()) {
      dice_[0] = action / sides_;
      dice_[1] = action % sides_;
      observe(0, kTagDie, static_cast<std::uint8_t>(dice_[0]));
      observe(1, kTagDie, static_cast<std::uint8_t>(dice_[1]));
      current_player_ = 0;
      return;
    }
    observe_all(kTagAction, static_cast<std::uint8_t>(action));
    if (action == liar_action()) {
      const Action bid = bids_.back();
      const int quantity = bid / sides_ + 1;
      const int face = bid % sides_;
      const int matches = (dice_[0] == face) + (dice_[1] == face);
      const int bidder = 1 - current_player_;
      loser_ = matches >= quantity ? current_player_ : bidder;
      bids_.push_back(action);
      current_player_ = kTerminalPlayer;
      return;
    }
    bids_.push_back(action);
    current_player_ = 1 - current_player_;
  }

  double do_utility(int player) const override {
    return player == loser_ ? -1.0 : 1.0;
  }

 private:
  int liar_action() const { return 2 * sides_; }

  int sides_;
  int dice_[2] = {-1, -1};
  std::vector<Action> bids_;
  int loser_ = -1;
};

class LiarsDiceGame final : public Game {
 public:
  explicit LiarsDiceGame(const GameParams& params)
      : Game("liars_dice_4", params) {}
  int num_players() const override { return 2; }
  int max_actions() const override { return 2 * kSides + 1; }
  UtilityKind utility_kind() const override { return UtilityKind::kZeroSum; }
  std::unique_ptr<HistoryState> new_initial_state() const override {
    return std::make_unique<LiarsDiceState>(shared_from_this(), kSides);
  }

 private:
  static constexpr int kSides = 4;
};

}  // namespace

std::shared_ptr<const Game> make_liars_dice(const GameParams& params) {
  internal::check_known(params, "liars_dice_4", {});
  return std::make_shared<LiarsDiceGame>(params);
}

}  // namespace ue::games
