#ifndef UE_GAMES_GAMES_H_
#define UE_GAMES_GAMES_H_

// Factories for the benchmark games. Rules for each game are documented in
// docs/rules.md; the constants here fix the canonical action ids.

#include <memory>

#include "ue/game.h"

namespace ue::games {

namespace kuhn {
inline constexpr Action kPass = 0;  // check or fold
inline constexpr Action kBet = 1;   // bet or call
inline constexpr int kJack = 0, kQueen = 1, kKing = 2;
// Chance outcome id for the ordered deal (card0, card1).
int deal_action(int card0, int card1);
}  // namespace kuhn

namespace leduc {
inline constexpr Action kFold = 0;
inline constexpr Action kCall = 1;
inline constexpr Action kRaise = 2;
// Chance outcome id for the ordered private rank deal.
inline constexpr int deal_action(int rank0, int rank1) { return rank0 * 3 + rank1; }
}  // namespace leduc

namespace liars_dice {
// Bid ids are (quantity - 1) * sides + (face - 1); the challenge ("liar")
// action is num_players * sides.
inline constexpr int bid_action(int quantity, int face, int sides) {
  return (quantity - 1) * sides + (face - 1);
}
}  // namespace liars_dice

std::shared_ptr<const Game> make_kuhn_poker(const GameParams& params);
std::shared_ptr<const Game> make_leduc_poker(const GameParams& params);
std::shared_ptr<const Game> make_liars_dice(const GameParams& params);
std::shared_ptr<const Game> make_abrupt_dark_hex(const GameParams& params);
std::shared_ptr<const Game> make_phantom_ttt(const GameParams& params);
std::shared_ptr<const Game> make_tiny_hanabi(const GameParams& params);
std::shared_ptr<const Game> make_random_common_payoff(const GameParams& params);

// Default Tiny Hanabi payoff table, indexed [card0][card1][action0][action1].
extern const char* const kTinyHanabiDefaultPayoff;

}  // namespace ue::games

#endif  // UE_GAMES_GAMES_H_
