// Dark Hex, abrupt variant. Player 0 connects the top and bottom rows, player
// 1 the left and right columns. Stones are hidden from the opponent. A move
// onto a cell already holding an opponent stone reveals that stone to the
// mover and ends the mover's turn without a placement. A player may pick any
// cell it does not know to be occupied.

#include <array>
#include <cstdint>
#include <string>

#include "params.h"
#include "ue/games/games.h"

namespace ue::games {

namespace {

enum Tag : std::uint8_t { kTagPlaced = 'P', kTagCollision = 'X' };

constexpr int kMaxSide = 5;
constexpr int kMaxCells = kMaxSide * kMaxSide;

class DarkHexState final : public HistoryState {
 public:
  DarkHexState(std::shared_ptr<const Game> game, int rows, int cols)
      : HistoryState(std::move(game)), rows_(rows), cols_(cols) {
    board_.fill(-1);
    current_player_ = 0;
  }

  std::unique_ptr<HistoryState> clone() const override {
    return std::make_unique<DarkHexState>(*this);
  }

  std::string to_string() const override {
    std::string out;
    for (int r = 0; r < rows_; ++r) {
      if (r > 0) out += '/';
      for (int c = 0; c < cols_; ++c) {
        int v = board_[r * cols_ + c];
        out += v < 0 ? '.' : (v == 0 ? 'x' : 'o');
      }
    }
    return out;
  }

 protected:
  void do_legal_actions(std::vector<Action>& out) const override {
    const std::uint32_t view = view_[current_player_];
    for (int cell = 0; cell < rows_ * cols_; ++cell) {
      if (!(view >> cell & 1u)) out.push_back(cell);
    }
  }

  void do_apply(Action cell) override {
    const int me = current_player_;
    view_[me] |= 1u << cell;
    if (board_[cell] >= 0) {
      observe(me, kTagCollision, static_cast<std::uint8_t>(cell));
      current_player_ = 1 - me;
      return;
    }
    board_[cell] = static_cast<std::int8_t>(me);
    ++stones_;
    observe(me, kTagPlaced, static_cast<std::uint8_t>(cell));
    if (connects(me)) {
      winner_ = me;
      current_player_ = kTerminalPlayer;
    } else if (stones_ == rows_ * cols_) {
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
  bool on_start_edge(int p, int r, int c) const { return p == 0 ? r == 0 : c == 0; }
  bool on_end_edge(int p, int r, int c) const {
    return p == 0 ? r == rows_ - 1 : c == cols_ - 1;
  }

  bool connects(int p) const {
    std::array<int, kMaxCells> stack{};
    std::uint32_t seen = 0;
    int top = 0;
    for (int cell = 0; cell < rows_ * cols_; ++cell) {
      if (board_[cell] == p && on_start_edge(p, cell / cols_, cell % cols_)) {
        stack[top++] = cell;
        seen |= 1u << cell;
      }
    }
    static constexpr int kDr[6] = {-1, -1, 0, 0, 1, 1};
    static constexpr int kDc[6] = {0, 1, -1, 1, -1, 0};
    while (top > 0) {
      const int cell = stack[--top];
      const int r = cell / cols_, c = cell % cols_;
      if (on_end_edge(p, r, c)) return true;
      for (int k = 0; k < 6; ++k) {
        const int nr = r + kDr[k], nc = c + kDc[k];
        if (nr < 0 || nr >= rows_ || nc < 0 || nc >= cols_) continue;
        const int next = nr * cols_ + nc;
        if (board_[next] != p || (seen >> next & 1u)) continue;
        seen |= 1u << next;
        stack[top++] = next;
      }
    }
    return false;
  }

  int rows_;
  int cols_;
  std::array<std::int8_t, kMaxCells> board_{};
  std::array<std::uint32_t, 2> view_ = {0, 0};
  int stones_ = 0;
  int winner_ = -1;
};

class DarkHexGame final : public Game {
 public:
  DarkHexGame(const GameParams& params, int rows, int cols)
      : Game("abrupt_dark_hex", params), rows_(rows), cols_(cols) {}
  int num_players() const override { return 2; }
  int max_actions() const override { return rows_ * cols_; }
  UtilityKind utility_kind() const override { return UtilityKind::kZeroSum; }
  std::unique_ptr<HistoryState> new_initial_state() const override {
    return std::make_unique<DarkHexState>(shared_from_this(), rows_, cols_);
  }

 private:
  int rows_;
  int cols_;
};

}  // namespace

std::shared_ptr<const Game> make_abrupt_dark_hex(const GameParams& params) {
  internal::check_known(params, "abrupt_dark_hex", {"size", "rows", "cols"});
  const auto size = internal::get_int(params, "size", 3, 1, kMaxSide);
  const auto rows = internal::get_int(params, "rows", size, 1, kMaxSide);
  const auto cols = internal::get_int(params, "cols", size, 1, kMaxSide);
  GameParams canonical = {{"rows", std::to_string(rows)},
                          {"cols", std::to_string(cols)}};
  return std::make_shared<DarkHexGame>(canonical, static_cast<int>(rows),
                                       static_cast<int>(cols));
}

}  // namespace ue::games
