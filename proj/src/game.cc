#include "ue/game.h"

#include <algorithm>
#include <functional>
#include <utility>

#include "ue/errors.h"
#include "ue/games/games.h"

namespace ue {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

using Factory = std::shared_ptr<const Game> (*)(const GameParams&);

const std::vector<std::pair<std::string, Factory>>& registry() {
  static const std::vector<std::pair<std::string, Factory>> kRegistry = {
      {"abrupt_dark_hex", &games::make_abrupt_dark_hex},
      {"kuhn_poker", &games::make_kuhn_poker},
      {"leduc_poker", &games::make_leduc_poker},
      {"liars_dice_4", &games::make_liars_dice},
      {"phantom_ttt", &games::make_phantom_ttt},
      {"random_common_payoff", &games::make_random_common_payoff},
      {"tiny_hanabi", &games::make_tiny_hanabi},
  };
  return kRegistry;
}

}  // namespace

std::string InfoStateKey::hex() const {
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(kHexDigits[c >> 4]);
    out.push_back(kHexDigits[c & 0xf]);
  }
  return out;
}

InfoStateKey InfoStateKey::from_hex(int player, std::string_view hex) {
  if (hex.size() % 2 != 0) {
    throw InvalidArgument("odd-length key hex: '" + std::string(hex) + "'");
  }
  InfoStateKey key{player, {}};
  key.bytes.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = hex_value(hex[i]);
    int lo = hex_value(hex[i + 1]);
    if (hi < 0 || lo < 0) {
      throw InvalidArgument("bad key hex: '" + std::string(hex) + "'");
    }
    key.bytes.push_back(static_cast<char>(hi * 16 + lo));
  }
  return key;
}

std::size_t InfoStateKeyHash::operator()(const InfoStateKey& key) const noexcept {
  return std::hash<std::string>{}(key.bytes) * 31u +
         static_cast<std::size_t>(key.player);
}

HistoryState::HistoryState(std::shared_ptr<const Game> game)
    : game_(std::move(game)) {}

std::vector<Action> HistoryState::legal_actions() const {
  std::vector<Action> out;
  legal_actions(out);
  return out;
}

void HistoryState::legal_actions(std::vector<Action>& out) const {
  if (is_terminal()) throw StateError("legal_actions called on a terminal state");
  out.clear();
  if (is_chance_node()) {
    std::vector<ChanceOutcome> outcomes;
    do_chance_outcomes(outcomes);
    for (const auto& o : outcomes) out.push_back(o.action);
    return;
  }
  do_legal_actions(out);
}

std::vector<ChanceOutcome> HistoryState::chance_outcomes() const {
  std::vector<ChanceOutcome> out;
  chance_outcomes(out);
  return out;
}

void HistoryState::chance_outcomes(std::vector<ChanceOutcome>& out) const {
  if (!is_chance_node()) throw StateError("chance_outcomes on a non-chance state");
  out.clear();
  do_chance_outcomes(out);
}

void HistoryState::do_chance_outcomes(std::vector<ChanceOutcome>&) const {}

void HistoryState::apply_action(Action action) {
  const auto legal = legal_actions();
  if (std::find(legal.begin(), legal.end(), action) == legal.end()) {
    throw InvalidArgument("illegal action " + std::to_string(action) + " in " +
                          game_->name() + " state " + to_string());
  }
  apply_unchecked(action);
}

void HistoryState::apply_unchecked(Action action) {
  trajectory_.push_back({current_player_, action});
  do_apply(action);
}

std::unique_ptr<HistoryState> HistoryState::child(Action action) const {
  auto next = clone();
  next->apply_action(action);
  return next;
}

double HistoryState::utility(int player) const {
  if (!is_terminal()) throw StateError("utility called on a non-terminal state");
  if (player < 0 || player >= game_->num_players()) {
    throw InvalidArgument("utility: bad player " + std::to_string(player));
  }
  return do_utility(player);
}

InfoStateKey HistoryState::info_state_key(int player) const {
  return InfoStateKey{player, info_state_bytes(player)};
}

const std::string& HistoryState::info_state_bytes(int player) const {
  if (player < 0 || player >= game_->num_players()) {
    throw InvalidArgument("info_state_key: bad player " + std::to_string(player));
  }
  return keys_[static_cast<std::size_t>(player)];
}

void HistoryState::observe(int player, std::uint8_t tag, std::uint8_t value) {
  auto& key = keys_[static_cast<std::size_t>(player)];
  key.push_back(static_cast<char>(tag));
  key.push_back(static_cast<char>(value));
}

void HistoryState::observe_all(std::uint8_t tag, std::uint8_t value) {
  for (int p = 0; p < game_->num_players(); ++p) observe(p, tag, value);
}

std::string Game::description() const {
  std::string out = name_;
  if (params_.empty()) return out;
  out += '(';
  bool first = true;
  for (const auto& [k, v] : params_) {
    if (!first) out += ',';
    first = false;
    out += k + "=" + v;
  }
  out += ')';
  return out;
}

std::shared_ptr<const Game> new_game(std::string_view name,
                                     const GameParams& params) {
  for (const auto& [registered, factory] : registry()) {
    if (registered == name) return factory(params);
  }
  throw InvalidArgument("unknown game '" + std::string(name) + "'");
}

std::vector<std::string> registered_games() {
  std::vector<std::string> names;
  for (const auto& entry : registry()) names.push_back(entry.first);
  return names;
}

std::unique_ptr<HistoryState> replay(const Game& game,
                                     std::span<const Step> trajectory) {
  auto state = game.new_initial_state();
  for (const auto& step : trajectory) {
    if (step.player != state->current_player()) {
      throw InvalidArgument("replay: trajectory player mismatch");
    }
    state->apply_action(step.action);
  }
  return state;
}

}  // namespace ue
