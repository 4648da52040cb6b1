#include "ue/tree.h"

#include <algorithm>
#include <utility>

#include "ue/errors.h"

namespace ue {

namespace {

std::string budget_message(const Game& game, std::size_t budget) {
  return "game tree of " + game.description() + " exceeds the node budget of " +
         std::to_string(budget) + " nodes";
}

}  // namespace

std::size_t for_each_history(const Game& game,
                             const std::function<void(const HistoryState&)>& visit,
                             std::size_t node_budget) {
  std::size_t visited = 0;
  std::vector<std::unique_ptr<HistoryState>> stack;
  stack.push_back(game.new_initial_state());
  std::vector<Action> actions;
  while (!stack.empty()) {
    auto state = std::move(stack.back());
    stack.pop_back();
    if (++visited > node_budget) throw BudgetExceeded(budget_message(game, node_budget));
    visit(*state);
    if (state->is_terminal()) continue;
    state->legal_actions(actions);
    for (auto it = actions.rbegin(); it != actions.rend(); ++it) {
      auto next = state->clone();
      next->apply_unchecked(*it);
      stack.push_back(std::move(next));
    }
  }
  return visited;
}

GameTree GameTree::build(std::shared_ptr<const Game> game, std::size_t node_budget) {
  GameTree tree;
  tree.game_ = game;
  tree.num_players_ = game->num_players();
  tree.deepest_first_.resize(static_cast<std::size_t>(tree.num_players_));

  auto add_node = [&](int parent, int child_index, Action action, double prob) {
    if (tree.kind_.size() >= node_budget) {
      throw BudgetExceeded(budget_message(*game, node_budget));
    }
    tree.kind_.push_back(NodeKind::kTerminal);
    tree.player_.push_back(static_cast<std::int8_t>(kTerminalPlayer));
    tree.infoset_.push_back(-1);
    tree.first_child_.push_back(-1);
    tree.num_children_.push_back(0);
    tree.parent_.push_back(parent);
    tree.child_index_.push_back(child_index);
    tree.action_.push_back(action);
    tree.chance_prob_.push_back(prob);
    for (int p = 0; p < kMaxPlayers; ++p) tree.utility_.push_back(0.0);
    return static_cast<int>(tree.kind_.size() - 1);
  };

  struct Pending {
    std::unique_ptr<HistoryState> state;
    int node;
  };
  std::vector<Pending> stack;
  stack.push_back({game->new_initial_state(), add_node(-1, 0, -1, 1.0)});
  std::vector<Action> actions;
  std::vector<ChanceOutcome> outcomes;

  while (!stack.empty()) {
    Pending item = std::move(stack.back());
    stack.pop_back();
    const HistoryState& state = *item.state;
    const auto n = static_cast<std::size_t>(item.node);

    if (state.is_terminal()) {
      tree.kind_[n] = NodeKind::kTerminal;
      for (int p = 0; p < tree.num_players_; ++p) {
        tree.utility_[n * kMaxPlayers + static_cast<std::size_t>(p)] = state.utility(p);
      }
      continue;
    }

    std::vector<double> probs;
    if (state.is_chance_node()) {
      tree.kind_[n] = NodeKind::kChance;
      tree.player_[n] = static_cast<std::int8_t>(kChancePlayer);
      state.chance_outcomes(outcomes);
      actions.clear();
      for (const auto& o : outcomes) {
        actions.push_back(o.action);
        probs.push_back(o.probability);
      }
    } else {
      const int player = state.current_player();
      tree.kind_[n] = NodeKind::kDecision;
      tree.player_[n] = static_cast<std::int8_t>(player);
      state.legal_actions(actions);
      InfoStateKey key = state.info_state_key(player);
      auto [it, inserted] =
          tree.infoset_index_.emplace(key, static_cast<int>(tree.infosets_.size()));
      if (inserted) {
        Infoset info;
        info.key = std::move(key);
        info.actions = actions;
        info.offset = tree.policy_size_;
        tree.policy_size_ += actions.size();
        tree.infosets_.push_back(std::move(info));
      } else if (tree.infosets_[static_cast<std::size_t>(it->second)].actions != actions) {
        throw StateError("legal actions differ within information state in " +
                         game->description() + " at " + state.to_string());
      }
      tree.infoset_[n] = it->second;
      tree.infosets_[static_cast<std::size_t>(it->second)].nodes.push_back(item.node);
    }

    const int k = static_cast<int>(actions.size());
    const int first = static_cast<int>(tree.kind_.size());
    for (int i = 0; i < k; ++i) {
      add_node(item.node, i, actions[static_cast<std::size_t>(i)],
               probs.empty() ? 1.0 : probs[static_cast<std::size_t>(i)]);
    }
    tree.first_child_[n] = first;
    tree.num_children_[n] = k;
    for (int i = k - 1; i >= 0; --i) {
      auto next = state.clone();
      next->apply_unchecked(actions[static_cast<std::size_t>(i)]);
      stack.push_back({std::move(next), first + i});
    }
  }

  for (auto& info : tree.infosets_) std::sort(info.nodes.begin(), info.nodes.end());
  for (int id = 0; id < static_cast<int>(tree.infosets_.size()); ++id) {
    tree.deepest_first_[static_cast<std::size_t>(tree.infosets_[static_cast<std::size_t>(id)].player())]
        .push_back(id);
  }
  for (auto& order : tree.deepest_first_) {
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return tree.infosets_[static_cast<std::size_t>(a)].key.bytes.size() >
             tree.infosets_[static_cast<std::size_t>(b)].key.bytes.size();
    });
  }
  return tree;
}

std::optional<int> GameTree::find_infoset(const InfoStateKey& key) const {
  auto it = infoset_index_.find(key);
  if (it == infoset_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Step> GameTree::path(int n) const {
  std::vector<Step> steps;
  for (int node = n; parent(node) >= 0; node = parent(node)) {
    const int up = parent(node);
    steps.push_back({player(up), action(node)});
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

std::unique_ptr<HistoryState> GameTree::materialize(int n) const {
  const auto steps = path(n);
  return replay(*game_, steps);
}

}  // namespace ue
