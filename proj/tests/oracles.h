#ifndef UE_TESTS_ORACLES_H_
#define UE_TESTS_ORACLES_H_

// Reference computations for the tests. They work directly on HistoryState
// recursion or brute-force search and share no code with the solvers beyond
// the game interface.

#include <cmath>
#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "ue/game.h"
#include "ue/policy.h"
#include "ue/rng.h"

namespace ue::testing {

// Simultaneous one-shot matrix game as a two-step extensive game: player 1
// does not observe player 0's action.
class MatrixGame : public Game {
 public:
  MatrixGame(std::vector<std::vector<double>> payoff0, UtilityKind kind)
      : Game("matrix", {}), payoff_(std::move(payoff0)), kind_(kind) {}
  static std::shared_ptr<const Game> make(std::vector<std::vector<double>> payoff0,
                                          UtilityKind kind = UtilityKind::kZeroSum) {
    return std::make_shared<MatrixGame>(std::move(payoff0), kind);
  }
  int num_players() const override { return 2; }
  int max_actions() const override {
    return static_cast<int>(std::max(payoff_.size(), payoff_.front().size()));
  }
  UtilityKind utility_kind() const override { return kind_; }
  std::unique_ptr<HistoryState> new_initial_state() const override;
  const std::vector<std::vector<double>>& payoff() const { return payoff_; }

 private:
  std::vector<std::vector<double>> payoff_;
  UtilityKind kind_;
};

class MatrixState final : public HistoryState {
 public:
  MatrixState(std::shared_ptr<const Game> game, const MatrixGame* rules)
      : HistoryState(std::move(game)), rules_(rules) {
    current_player_ = 0;
  }
  std::unique_ptr<HistoryState> clone() const override { return std::make_unique<MatrixState>(*this); }
  std::string to_string() const override { return std::to_string(row_) + "," + std::to_string(col_); }

 protected:
  void do_legal_actions(std::vector<Action>& out) const override {
    const auto n = current_player_ == 0 ? rules_->payoff().size() : rules_->payoff().front().size();
    for (std::size_t a = 0; a < n; ++a) out.push_back(static_cast<Action>(a));
  }
  void do_apply(Action action) override {
    if (current_player_ == 0) {
      row_ = action;
      observe(0, 'a', static_cast<std::uint8_t>(action));
      current_player_ = 1;
    } else {
      col_ = action;
      observe(1, 'a', static_cast<std::uint8_t>(action));
      current_player_ = kTerminalPlayer;
    }
  }
  double do_utility(int player) const override {
    const double u = rules_->payoff()[static_cast<std::size_t>(row_)][static_cast<std::size_t>(col_)];
    if (rules_->utility_kind() == UtilityKind::kCommonPayoff) return u;
    return player == 0 ? u : -u;
  }

 private:
  const MatrixGame* rules_;
  int row_ = -1;
  int col_ = -1;
};

inline std::unique_ptr<HistoryState> MatrixGame::new_initial_state() const {
  return std::make_unique<MatrixState>(shared_from_this(), this);
}

// Distribution at a decision state, from a JointPolicy (uniform fallback).
inline std::vector<double> policy_at(const JointPolicy& pi, const HistoryState& s) {
  return pi.action_distribution(s);
}

// Expected utility of `player` below `state` by plain recursion.
inline double oracle_value(const HistoryState& state, const JointPolicy& pi, int player) {
  if (state.is_terminal()) return state.utility(player);
  double total = 0.0;
  if (state.is_chance_node()) {
    for (const auto& o : state.chance_outcomes()) {
      total += o.probability * oracle_value(*state.child(o.action), pi, player);
    }
    return total;
  }
  const auto actions = state.legal_actions();
  const auto dist = policy_at(pi, state);
  for (std::size_t a = 0; a < actions.size(); ++a) {
    if (dist[a] == 0.0) continue;
    total += dist[a] * oracle_value(*state.child(actions[a]), pi, player);
  }
  return total;
}

// Visits every history with its chance probability and per-player reach.
struct PathInfo {
  const HistoryState* state;
  double chance;
  double reach[2];
};
inline void oracle_paths(const HistoryState& state, const JointPolicy& pi, double chance,
                         double r0, double r1, const std::function<void(const PathInfo&)>& visit) {
  visit(PathInfo{&state, chance, {r0, r1}});
  if (state.is_terminal()) return;
  if (state.is_chance_node()) {
    for (const auto& o : state.chance_outcomes()) {
      oracle_paths(*state.child(o.action), pi, chance * o.probability, r0, r1, visit);
    }
    return;
  }
  const auto actions = state.legal_actions();
  const auto dist = policy_at(pi, state);
  const int p = state.current_player();
  for (std::size_t a = 0; a < actions.size(); ++a) {
    oracle_paths(*state.child(actions[a]), pi, chance, p == 0 ? r0 * dist[a] : r0,
                 p == 1 ? r1 * dist[a] : r1, visit);
  }
}

// Sum over terminal paths of probability times utility.
inline double oracle_expected_return(const Game& game, const JointPolicy& pi, int player) {
  double total = 0.0;
  auto root = game.new_initial_state();
  oracle_paths(*root, pi, 1.0, 1.0, 1.0, [&](const PathInfo& p) {
    if (p.state->is_terminal()) total += p.chance * p.reach[0] * p.reach[1] * p.state->utility(player);
  });
  return total;
}

// q(key, a) with counterfactual Bayes weights (chance times opponent reach).
inline std::vector<double> oracle_infoset_q(const Game& game, const JointPolicy& pi,
                                            const InfoStateKey& key) {
  std::vector<double> q;
  double weight = 0.0;
  auto root = game.new_initial_state();
  oracle_paths(*root, pi, 1.0, 1.0, 1.0, [&](const PathInfo& p) {
    const auto& s = *p.state;
    if (s.current_player() != key.player || s.info_state_bytes(key.player) != key.bytes) return;
    const double w = p.chance * p.reach[1 - key.player];
    const auto actions = s.legal_actions();
    q.resize(actions.size(), 0.0);
    for (std::size_t a = 0; a < actions.size(); ++a) {
      q[a] += w * oracle_value(*s.child(actions[a]), pi, key.player);
    }
    weight += w;
  });
  for (double& v : q) v /= weight;
  return q;
}

// Posterior over histories (keyed by to_string of the trajectory) at `key`.
inline std::map<std::vector<int>, double> oracle_posterior(const Game& game, const JointPolicy& pi,
                                                           const InfoStateKey& key) {
  std::map<std::vector<int>, double> post;
  double total = 0.0;
  auto root = game.new_initial_state();
  oracle_paths(*root, pi, 1.0, 1.0, 1.0, [&](const PathInfo& p) {
    const auto& s = *p.state;
    if (s.current_player() != key.player || s.info_state_bytes(key.player) != key.bytes) return;
    const double w = p.chance * p.reach[0] * p.reach[1];
    std::vector<int> path;
    for (const auto& step : s.trajectory()) path.push_back(step.action);
    post[path] += w;
    total += w;
  });
  for (auto& [k, v] : post) v /= total;
  return post;
}

// All decision keys of `player` with their action counts.
inline std::map<InfoStateKey, int> oracle_keys(const Game& game, int player) {
  std::map<InfoStateKey, int> keys;
  std::function<void(const HistoryState&)> walk = [&](const HistoryState& s) {
    if (s.is_terminal()) return;
    if (s.current_player() == player) {
      keys[s.info_state_key(player)] = static_cast<int>(s.legal_actions().size());
    }
    for (Action a : s.legal_actions()) walk(*s.child(a));
  };
  walk(*game.new_initial_state());
  return keys;
}

// Best-response value by trying every pure policy of `player`.
inline double oracle_pure_br(const Game& game, const JointPolicy& pi, int player) {
  const auto keys = oracle_keys(game, player);
  std::vector<std::pair<InfoStateKey, int>> list(keys.begin(), keys.end());
  std::vector<int> choice(list.size(), 0);
  double best = -1e300;
  for (;;) {
    JointPolicy trial = pi;
    for (std::size_t i = 0; i < list.size(); ++i) {
      std::vector<double> d(static_cast<std::size_t>(list[i].second), 0.0);
      d[static_cast<std::size_t>(choice[i])] = 1.0;
      trial[player].set_action_distribution(list[i].first, d);
    }
    best = std::max(best, oracle_expected_return(game, trial, player));
    std::size_t i = 0;
    for (; i < list.size(); ++i) {
      if (++choice[i] < list[i].second) break;
      choice[i] = 0;
    }
    if (i == list.size()) return best;
  }
}

// Maximizes f over the simplex of dimension k: coarse grid, then coordinate
// refinement along pairwise mass transfers with shrinking steps.
inline std::vector<double> grid_maximize(int k, const std::function<double(const std::vector<double>&)>& f,
                                         int resolution = 40) {
  std::vector<double> best(static_cast<std::size_t>(k), 1.0 / k);
  double best_value = f(best);
  std::vector<int> counts(static_cast<std::size_t>(k), 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == k - 1) {
      counts[static_cast<std::size_t>(i)] = left;
      std::vector<double> p(static_cast<std::size_t>(k));
      for (int j = 0; j < k; ++j) p[static_cast<std::size_t>(j)] = static_cast<double>(counts[static_cast<std::size_t>(j)]) / resolution;
      const double v = f(p);
      if (v > best_value) {
        best_value = v;
        best = p;
      }
      return;
    }
    for (int c = 0; c <= left; ++c) {
      counts[static_cast<std::size_t>(i)] = c;
      rec(i + 1, left - c);
    }
  };
  rec(0, resolution);
  for (double step = 1.0 / resolution; step > 1e-9; step *= 0.5) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
          if (a == b) continue;
          const double move = std::min(step, best[static_cast<std::size_t>(b)]);
          if (move <= 0.0) continue;
          auto p = best;
          p[static_cast<std::size_t>(a)] += move;
          p[static_cast<std::size_t>(b)] -= move;
          const double v = f(p);
          if (v > best_value) {
            best_value = v;
            best = p;
            improved = true;
          }
        }
      }
    }
  }
  return best;
}

inline double kl(const std::vector<double>& p, const std::vector<double>& q) {
  double total = 0.0;
  for (std::size_t a = 0; a < p.size(); ++a) {
    if (p[a] > 0.0) total += p[a] * std::log(p[a] / q[a]);
  }
  return total;
}

inline double shannon(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log(x);
  }
  return h;
}

inline std::vector<double> random_simplex(RngStream& rng, std::size_t k, double floor = 0.0) {
  std::vector<double> p(k);
  double total = 0.0;
  for (double& x : p) total += (x = floor + rng.uniform());
  for (double& x : p) x /= total;
  return p;
}

// Pearson chi-square p-value of `counts` against probabilities `expected`.
// Bins with expected count below 5 are pooled into one.
inline double chi_square_pvalue(const std::vector<double>& counts, const std::vector<double>& expected) {
  double n = 0.0;
  for (double c : counts) n += c;
  double stat = 0.0;
  int bins = 0;
  double pooled_count = 0.0, pooled_expected = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double e = expected[i] * n;
    if (e < 5.0) {
      pooled_count += counts[i];
      pooled_expected += e;
      continue;
    }
    stat += (counts[i] - e) * (counts[i] - e) / e;
    ++bins;
  }
  if (pooled_expected > 0.0) {
    stat += (pooled_count - pooled_expected) * (pooled_count - pooled_expected) / pooled_expected;
    ++bins;
  }
  if (bins < 2) return 1.0;
  boost::math::chi_squared dist(bins - 1);
  return boost::math::cdf(boost::math::complement(dist, stat));
}

}  // namespace ue::testing

#endif  // UE_TESTS_ORACLES_H_
