// Phantom tic-tac-toe, classical variant. Marks are hidden from the
// opponent; choosing a cell that holds an opponent mark reveals it and the
// mover chooses again. Three in a row wins (+1/-1); a full board is a draw.

#include <array>
#include <cstdint>
#include <string>

#include "params.h"
#include "ue/games/games.h"

namespace ue::games {

namespace {

enum Tag : std::uint8_t { kTagPlaced = 'P', kTagCollision = 'X' };

constexpr int kCells = 9;
constexpr int kLines[8][3] = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6},
                              {1, 4, 7}, {2, 5, 8}, {0, 4, 8}, {2, 4, 6}};

class PhantomTttState final : public HistoryState {
 public:
  explicit PhantomTttState(std::shared_ptr<const Game> game)
      : HistoryState(std::move(game)) {
    board_.fill(-1);
    current_player_ = 0;
  }

  std::unique_ptr<HistoryState> clone() const override {
    return std::make_unique<PhantomTttState>(*this);
  }

  std::string to_string() const override {
    std::string out;
    for (int cell = 0; cell < kCells; ++cell) {
      if (cell > 0 && cell % 3 == 0) out += '/';
      out += board_[cell] < 0 ? '.' : (board_[cell] == 0 ? 'x' : 'o');
    }
    return out;
  }

 protected:
  void do_legal_actions(std::vector<Action>& out) const override {
    const std::uint32_t view = view_[current_player_];
    for (int cell = 0; cell < kCells; ++cell) {
      if (!(view >> cell & 1u)) out.push_back(cell);
    }
  }

  void do_apply(Action cell) override {
    const int me = current_player_;
    view_[me] |= 1u << cell;
    if (board_[cell] >= 0) {
      observe(me, kTagCollision, static_cast<std::uint8_t>(cell));
      return;  // same player moves again
    }
    board_[cell] = static_cast<std::int8_t>(me);
    ++marks_;
    observe(me, kTagPlaced, static_cast<std::uint8_t>(cell));
    if (has_line(me)) {
      winner_ = me;
      current_player_ = kTerminalPlayer;
    } else if (marks_ == kCells) {
      current_player_ = kTerminalPlayer;
    } else {
      current_player_ = 1 - me;
    }
  }

  double do_utility(int player) const override {
    if (winner_ < 0) return 0.0;
    return player == winner_ ? 1.0 : -1.0;
  }

 private:
  bool has_line(int p) const {
    for (const auto& line : kLines) {
      if (board_[line[0]] == p && board_[line[1]] == p && board_[line[2]] == p) {
        return true;
      }
    }
    return false;
  }

  std::array<std::int8_t, kCells> board_{};
  std::array<std::uint32_t, 2> view_ = {0, 0};
  int marks_ = 0;
  int winner_ = -1;
};

class PhantomTttGame final : public Game {
 public:
  explicit PhantomTttGame(const GameParams& params) : Game("phantom_ttt", params) {}
  int num_players() const override { return 2; }
  int max_actions() const override { return kCells; }
  UtilityKind utility_kind() const override { return UtilityKind::kZeroSum; }
  std::unique_ptr<HistoryState> new_initial_state() const override {
    return std::make_unique<PhantomTttState>(shared_from_this());
  }
};

}  // namespace

std::shared_ptr<const Game> make_phantom_ttt(const GameParams& params) {
  internal::check_known(params, "phantom_ttt", {});
  return std::make_shared<PhantomTttGame>(params);
}

}  // namespace ue::games
