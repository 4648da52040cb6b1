#ifndef UE_GAME_H_
#define UE_GAME_H_

// Turn-based, perfect-recall, finite-horizon games with explicit chance nodes.
//
// A HistoryState is one node of play: the full ground-truth history. Each
// player additionally owns an InfoStateKey, the canonical byte string of the
// observations and own actions that player has seen so far. Keys are built
// from fixed-width two-byte tokens (tag, value), so the key of an earlier
// decision point is always a token-aligned prefix of a later one.

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ue {

using Action = int;
using GameParams = std::map<std::string, std::string>;

inline constexpr int kChancePlayer = -1;
inline constexpr int kTerminalPlayer = -2;
inline constexpr int kMaxPlayers = 2;

enum class UtilityKind { kZeroSum, kCommonPayoff };

struct ChanceOutcome {
  Action action;
  double probability;
};

struct InfoStateKey {
  int player = 0;
  std::string bytes;

  std::string hex() const;
  static InfoStateKey from_hex(int player, std::string_view hex);
  friend auto operator<=>(const InfoStateKey&, const InfoStateKey&) = default;
};

struct InfoStateKeyHash {
  std::size_t operator()(const InfoStateKey& key) const noexcept;
};

// (acting player or kChancePlayer, action)
struct Step {
  int player;
  Action action;
  friend bool operator==(const Step&, const Step&) = default;
};

class Game;

class HistoryState {
 public:
  virtual ~HistoryState() = default;

  virtual std::unique_ptr<HistoryState> clone() const = 0;

  const Game& game() const { return *game_; }
  int current_player() const { return current_player_; }
  bool is_terminal() const { return current_player_ == kTerminalPlayer; }
  bool is_chance_node() const { return current_player_ == kChancePlayer; }

  // Canonical order, ascending action id. At chance nodes these are the
  // chance outcome ids. Throws StateError at terminals.
  std::vector<Action> legal_actions() const;
  void legal_actions(std::vector<Action>& out) const;

  // Throws StateError unless this is a chance node.
  std::vector<ChanceOutcome> chance_outcomes() const;
  void chance_outcomes(std::vector<ChanceOutcome>& out) const;

  // Validates `action` against legal_actions(); throws InvalidArgument.
  void apply_action(Action action);
  // Caller guarantees `action` is legal (rollout and enumeration paths).
  void apply_unchecked(Action action);
  std::unique_ptr<HistoryState> child(Action action) const;

  // Throws StateError on non-terminal states.
  double utility(int player) const;

  InfoStateKey info_state_key(int player) const;
  const std::string& info_state_bytes(int player) const;

  const std::vector<Step>& trajectory() const { return trajectory_; }
  virtual std::string to_string() const = 0;

 protected:
  explicit HistoryState(std::shared_ptr<const Game> game);
  HistoryState(const HistoryState&) = default;
  HistoryState& operator=(const HistoryState&) = default;

  virtual void do_legal_actions(std::vector<Action>& out) const = 0;
  virtual void do_chance_outcomes(std::vector<ChanceOutcome>& out) const;
  virtual void do_apply(Action action) = 0;
  virtual double do_utility(int player) const = 0;

  void observe(int player, std::uint8_t tag, std::uint8_t value);
  void observe_all(std::uint8_t tag, std::uint8_t value);

  int current_player_ = kTerminalPlayer;

 private:
  std::shared_ptr<const Game> game_;
  std::vector<Step> trajectory_;
  std::array<std::string, kMaxPlayers> keys_;
};

class Game : public std::enable_shared_from_this<Game> {
 public:
  virtual ~Game() = default;

  const std::string& name() const { return name_; }
  const GameParams& params() const { return params_; }
  // name plus parameters, e.g. "abrupt_dark_hex(cols=3,rows=3)".
  std::string description() const;

  virtual int num_players() const = 0;
  virtual int max_actions() const = 0;
  virtual UtilityKind utility_kind() const = 0;
  virtual std::unique_ptr<HistoryState> new_initial_state() const = 0;

 protected:
  Game(std::string name, GameParams params)
      : name_(std::move(name)), params_(std::move(params)) {}

 private:
  std::string name_;
  GameParams params_;
};

// Registry. Throws InvalidArgument for unknown names or bad parameters.
std::shared_ptr<const Game> new_game(std::string_view name,
                                     const GameParams& params = {});
std::vector<std::string> registered_games();

// Rebuilds a state by replaying `trajectory` from the root.
std::unique_ptr<HistoryState> replay(const Game& game,
                                     std::span<const Step> trajectory);

}  // namespace ue

#endif  // UE_GAME_H_
