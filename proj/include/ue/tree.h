#ifndef UE_TREE_H_
#define UE_TREE_H_

// Full-tree enumeration and the flattened tree used by the exact solvers.
//
// GameTree stores nodes in structure-of-arrays form. The children of a node
// occupy a contiguous index block allocated after the node itself, so every
// child index is larger than its parent's: a reverse index sweep visits
// children before parents, a forward sweep parents before children.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ue/game.h"

namespace ue {

inline constexpr std::size_t kDefaultNodeBudget = 10'000'000;

// Visits every HistoryState once in depth-first preorder (children in
// canonical action order). Throws BudgetExceeded if more than `node_budget`
// states would be visited. Returns the number of states visited.
std::size_t for_each_history(const Game& game,
                             const std::function<void(const HistoryState&)>& visit,
                             std::size_t node_budget = kDefaultNodeBudget);

enum class NodeKind : std::uint8_t { kTerminal, kChance, kDecision };

struct Infoset {
  InfoStateKey key;
  std::vector<Action> actions;  // canonical legal actions
  std::size_t offset = 0;       // first slot in a FlatPolicy
  std::vector<int> nodes;       // tree nodes in this infoset, ascending
  int player() const { return key.player; }
  int num_actions() const { return static_cast<int>(actions.size()); }
};

class GameTree {
 public:
  static GameTree build(std::shared_ptr<const Game> game,
                        std::size_t node_budget = kDefaultNodeBudget);

  const Game& game() const { return *game_; }
  std::shared_ptr<const Game> game_ptr() const { return game_; }
  int num_players() const { return num_players_; }
  std::size_t num_nodes() const { return kind_.size(); }

  NodeKind kind(int n) const { return kind_[static_cast<std::size_t>(n)]; }
  int player(int n) const { return player_[static_cast<std::size_t>(n)]; }
  int infoset(int n) const { return infoset_[static_cast<std::size_t>(n)]; }
  int first_child(int n) const { return first_child_[static_cast<std::size_t>(n)]; }
  int num_children(int n) const { return num_children_[static_cast<std::size_t>(n)]; }
  int parent(int n) const { return parent_[static_cast<std::size_t>(n)]; }
  // Chance probability of n given its parent (1 when the parent is not chance).
  double chance_prob(int n) const { return chance_prob_[static_cast<std::size_t>(n)]; }
  // Index of n among its parent's children.
  int child_index(int n) const { return child_index_[static_cast<std::size_t>(n)]; }
  double utility(int n, int p) const {
    return utility_[static_cast<std::size_t>(n) * kMaxPlayers + static_cast<std::size_t>(p)];
  }
  // Action taken at parent(n) to reach n.
  Action action(int n) const { return action_[static_cast<std::size_t>(n)]; }
  // Action ids of the children of n, in child order.
  std::span<const Action> child_actions(int n) const {
    return {action_.data() + first_child(n), static_cast<std::size_t>(num_children(n))};
  }

  const std::vector<Infoset>& infosets() const { return infosets_; }
  const Infoset& infoset_at(int id) const { return infosets_[static_cast<std::size_t>(id)]; }
  std::optional<int> find_infoset(const InfoStateKey& key) const;
  // Infoset ids of `player`, deepest-first by key length. Perfect recall makes
  // every descendant infoset's key strictly longer, so this order is
  // children-before-parents over the player's own infosets.
  const std::vector<int>& infosets_deepest_first(int player) const {
    return deepest_first_[static_cast<std::size_t>(player)];
  }
  std::size_t policy_size() const { return policy_size_; }

  std::vector<Step> path(int n) const;
  std::unique_ptr<HistoryState> materialize(int n) const;

 private:
  GameTree() = default;

  std::shared_ptr<const Game> game_;
  int num_players_ = 0;
  std::vector<NodeKind> kind_;
  std::vector<std::int8_t> player_;
  std::vector<int> infoset_;
  std::vector<int> first_child_;
  std::vector<int> num_children_;
  std::vector<int> parent_;
  std::vector<int> child_index_;
  std::vector<double> chance_prob_;
  std::vector<double> utility_;
  std::vector<Action> action_;  // action leading from the parent
  std::vector<Infoset> infosets_;
  std::unordered_map<InfoStateKey, int, InfoStateKeyHash> infoset_index_;
  std::vector<std::vector<int>> deepest_first_;
  std::size_t policy_size_ = 0;
};

}  // namespace ue

#endif  // UE_TREE_H_
