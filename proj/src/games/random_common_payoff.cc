// Seeded random common-payoff game. Chance privately deals each player one
// of `types` types; then `depth` public decisions alternate between the
// players (player 0 first), each with `branching` actions. Every terminal
// pays both players the same value drawn uniformly from [0, 1).
// `size` is an alias for `depth`.

#include <string>
#include <vector>

#include "params.h"
#include "ue/games/games.h"
#include "ue/rng.h"

namespace ue::games {

namespace {

enum Tag : std::uint8_t { kTagType = 't', kTagAction = 'a' };

struct RandomRules {
  int types;
  int depth;
  int branching;
  std::vector<double> payoff;  // [(type0 * types + type1) * branching^depth + sequence]
};

class RandomCommonPayoffState final : public HistoryState {
 public:
  RandomCommonPayoffState(std::shared_ptr<const Game> game, const RandomRules* rules)
      : HistoryState(std::move(game)), rules_(rules) {
    current_player_ = kChancePlayer;
  }

  std::unique_ptr<HistoryState> clone() const override {
    return std::make_unique<RandomCommonPayoffState>(*this);
  }

  std::string to_string() const override {
    std::string out = "t" + std::to_string(types_[0]) + std::to_string(types_[1]) + ":";
    out += std::to_string(sequence_) + "@" + std::to_string(moves_);
    return out;
  }

 protected:
  void do_legal_actions(std::vector<Action>& out) const override {
    for (int a = 0; a < rules_->branching; ++a) out.push_back(a);
  }

  void do_chance_outcomes(std::vector<ChanceOutcome>& out) const override {
    const int n = rules_->types * rules_->types;
    for (int a = 0; a < n; ++a) out.push_back({a, 1.0 / n});
  }

  void do_apply(Action action) override {
    if (is_chance_node()) {
      types_[0] = action / rules_->types;
      types_[1] = action % rules_->types;
      observe(0, kTagType, static_cast<std::uint8_t>(types_[0]));
      observe(1, kTagType, static_cast<std::uint8_t>(types_[1]));
      current_player_ = rules_->depth > 0 ? 0 : kTerminalPlayer;
      return;
    }
    observe_all(kTagAction, static_cast<std::uint8_t>(action));
    sequence_ = sequence_ * rules_->branching + action;
    ++moves_;
    current_player_ = moves_ == rules_->depth ? kTerminalPlayer : 1 - current_player_;
  }

  double do_utility(int) const override {
    std::size_t leaves = 1;
    for (int d = 0; d < rules_->depth; ++d) leaves *= static_cast<std::size_t>(rules_->branching);
    const std::size_t deal = static_cast<std::size_t>(types_[0] * rules_->types + types_[1]);
    return rules_->payoff[deal * leaves + static_cast<std::size_t>(sequence_)];
  }

 private:
  const RandomRules* rules_;
  int types_[2] = {-1, -1};
  long long sequence_ = 0;
  int moves_ = 0;
};

class RandomCommonPayoffGame final : public Game {
 public:
  RandomCommonPayoffGame(const GameParams& params, RandomRules rules)
      : Game("random_common_payoff", params), rules_(std::move(rules)) {}
  int num_players() const override { return 2; }
  int max_actions() const override { return rules_.branching; }
  UtilityKind utility_kind() const override { return UtilityKind::kCommonPayoff; }
  std::unique_ptr<HistoryState> new_initial_state() const override {
    return std::make_unique<RandomCommonPayoffState>(shared_from_this(), &rules_);
  }

 private:
  RandomRules rules_;
};

}  // namespace

std::shared_ptr<const Game> make_random_common_payoff(const GameParams& params) {
  internal::check_known(params, "random_common_payoff",
                        {"seed", "size", "depth", "branching", "types"});
  const auto seed = internal::get_int(params, "seed", 1, 0, INT64_MAX);
  RandomRules rules;
  rules.types = static_cast<int>(internal::get_int(params, "types", 2, 1, 8));
  const auto size = internal::get_int(params, "size", 3, 0, 12);
  rules.depth = static_cast<int>(internal::get_int(params, "depth", size, 0, 12));
  rules.branching = static_cast<int>(internal::get_int(params, "branching", 2, 1, 8));
  std::size_t leaves = 1;
  for (int d = 0; d < rules.depth; ++d) leaves *= static_cast<std::size_t>(rules.branching);
  const std::size_t count = leaves * static_cast<std::size_t>(rules.types * rules.types);
  if (count > (1u << 22)) {
    throw InvalidArgument("random_common_payoff: too many terminals (" +
                          std::to_string(count) + ")");
  }
  RngStream rng(static_cast<std::uint64_t>(seed), /*stream=*/0x72637000);
  rules.payoff.resize(count);
  for (auto& v : rules.payoff) v = rng.uniform();
  GameParams canonical = {{"seed", std::to_string(seed)},
                          {"depth", std::to_string(rules.depth)},
                          {"branching", std::to_string(rules.branching)},
                          {"types", std::to_string(rules.types)}};
  return std::make_shared<RandomCommonPayoffGame>(canonical, std::move(rules));
}

}  // namespace ue::games
