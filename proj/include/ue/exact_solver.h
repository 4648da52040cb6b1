#ifndef UE_EXACT_SOLVER_H_
#define UE_EXACT_SOLVER_H_

// Exact evaluation over a full GameTree: expected returns, history and
// information-state values, posteriors, best responses, exploitability and
// the regularized equilibrium gaps.
//
// Policies are handled in flat form: one slot per (infoset, action) laid out
// at Infoset::offset. Conversion to and from JointPolicy is lossless for the
// keys the tree contains.
//
// Counterfactual weights. For player i at history h the weight w_i(h) is the
// product of chance probabilities and the other players' action
// probabilities along the path to h. The posterior at an infoset and the
// infoset q-values use these weights; the player's own reach cancels under
// perfect recall. Infosets whose total weight is zero are unreachable by
// chance and opponents and are skipped by every update.

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ue/policy.h"
#include "ue/tree.h"

namespace ue {

using FlatPolicy = std::vector<double>;

FlatPolicy to_flat(const GameTree& tree, const JointPolicy& policy);
JointPolicy from_flat(const GameTree& tree, std::span<const double> flat);
FlatPolicy uniform_flat(const GameTree& tree);
std::span<const double> slice(const GameTree& tree, std::span<const double> flat, int infoset);
std::span<double> slice(const GameTree& tree, std::span<double> flat, int infoset);
// Smallest action probability anywhere in the policy.
double min_probability(std::span<const double> flat);

// Entropy shaping of returns: at every decision node of player j, player p
// receives entropy[p][j] * H(pi(I)) in addition to the game's utility.
// The MiniMaxEnt objective with temperature alpha is entropy[p][p] = alpha,
// entropy[p][q] = -alpha for q != p; plain returns are all zeros.
using EntropyShaping = std::array<std::array<double, kMaxPlayers>, kMaxPlayers>;
inline constexpr EntropyShaping kNoShaping{};
EntropyShaping minimaxent_shaping(double alpha);

double entropy(std::span<const double> dist);

// Per-node reach decomposed by contributor.
struct Reach {
  std::vector<double> chance;                           // product of chance probabilities
  std::array<std::vector<double>, kMaxPlayers> player;  // product of that player's probabilities
  // w_i(n): chance times the other players' reach.
  double counterfactual(int i, int n) const;
  double total(int n) const;
};
Reach compute_reach(const GameTree& tree, std::span<const double> pi);

// v_p(n) for every node and player, one backward pass.
struct NodeValues {
  std::array<std::vector<double>, kMaxPlayers> v;
  double at(int n, int p) const { return v[static_cast<std::size_t>(p)][static_cast<std::size_t>(n)]; }
};
NodeValues compute_values(const GameTree& tree, std::span<const double> pi,
                          const EntropyShaping& shaping = kNoShaping);

// Infoset action values for `player`, in flat layout (slots of other players'
// infosets are left at zero). weight[I] is the total counterfactual weight of
// the infoset; q at zero-weight infosets is zero.
struct InfosetQ {
  FlatPolicy q;
  std::vector<double> weight;  // indexed by infoset id
};
// Fills q and weight for every infoset of `player` using node values `values`
// for the continuation and reach `reach` for the weights.
void infoset_q_into(const GameTree& tree, const Reach& reach, const NodeValues& values,
                    int player, InfosetQ& out);
InfosetQ infoset_q(const GameTree& tree, std::span<const double> pi, int player,
                   const EntropyShaping& shaping = kNoShaping);

std::array<double, kMaxPlayers> expected_return(const GameTree& tree, std::span<const double> pi,
                                                const EntropyShaping& shaping = kNoShaping);

// Keyed views for API users that work with TabularPolicy.
struct ValueTable {
  // Values per tree node index, per player; materialize nodes via GameTree.
  std::array<std::vector<double>, kMaxPlayers> history_value;
  // q per infoset key of every player, aligned with legal actions.
  std::unordered_map<InfoStateKey, std::vector<double>, InfoStateKeyHash> q;
};
std::array<double, kMaxPlayers> expected_return(const GameTree& tree, const JointPolicy& policy);
ValueTable history_values(const GameTree& tree, const JointPolicy& policy);
std::unordered_map<InfoStateKey, std::vector<double>, InfoStateKeyHash> infostate_q(
    const GameTree& tree, const JointPolicy& policy, int player);

struct PosteriorEntry {
  int node;  // tree node index; GameTree::materialize gives the HistoryState
  double probability;
};
struct Posterior {
  InfoStateKey key;
  std::vector<PosteriorEntry> entries;  // ascending node index
};
// Throws UnknownInfoState if the key is not in the tree, UnreachableInfoState
// if chance and the other players reach it with probability zero.
Posterior posterior(const GameTree& tree, std::span<const double> pi, const InfoStateKey& key);
Posterior posterior(const GameTree& tree, const JointPolicy& policy, const InfoStateKey& key);

// Local response operator used by the backward induction over one player's
// infosets, deepest infoset first. Receives the infoset id, the current
// policy at it, the normalized continuation q and the infoset's counterfactual
// weight (always positive); writes the response distribution to `out`
// (already sized to the action count).
using LocalResponse = std::function<void(int infoset, std::span<const double> pi,
                                         std::span<const double> q, std::span<double> out)>;

struct ResponseResult {
  FlatPolicy policy;  // pi with `player`'s infosets replaced by the response
  double value = 0.0; // player's (shaped) return under the response
};
// Backward induction for `player` against the fixed policies of the others.
// Own entropy shaping entropy[player][player] applies to the response's own
// distributions; shaping at other players' nodes uses their fixed policies.
// Zero-weight infosets keep pi.
ResponseResult respond(const GameTree& tree, std::span<const double> pi, int player,
                       const LocalResponse& response, const EntropyShaping& shaping = kNoShaping);

// Argmax response, lowest index on ties.
ResponseResult best_response(const GameTree& tree, std::span<const double> pi, int player);
// Entropy-regularized (logit) response with the given shaping; own temperature
// is shaping[player][player], which must be positive.
ResponseResult soft_best_response(const GameTree& tree, std::span<const double> pi, int player,
                                  const EntropyShaping& shaping);

struct BestResponse {
  TabularPolicy policy;
  double value;
};
BestResponse best_response(const GameTree& tree, const JointPolicy& policy, int player);

// (BR_0 + BR_1) / 2 for two-player zero-sum games; throws InvalidArgument otherwise.
double exploitability(const GameTree& tree, std::span<const double> pi);
double exploitability(const GameTree& tree, const JointPolicy& policy);
// (1/N) sum_i (BR_i - J_i); equals exploitability in two-player zero-sum games.
double nash_conv_mean(const GameTree& tree, std::span<const double> pi);

// Distance to the agent quantal response equilibrium at temperature alpha:
//   (1/N) sum_i sum_{I of i} P(I) * alpha * KL(pi(I) || softmax(q(I) / alpha))
// where P(I) is the reach probability of infoset I under pi and q the plain
// continuation values. Equivalently, the reach-weighted sum of local soft
// regrets max_s [<s,q> + alpha H(s)] - [<pi,q> + alpha H(pi)]. Zero exactly
// when every reachable infoset is the logit response to its continuation.
// Throws for alpha <= 0 or a policy with a zero entry.
double aqre_gap(const GameTree& tree, std::span<const double> pi, double alpha);
// Same quantity summed over players instead of averaged.
double aqre_gap_sum(const GameTree& tree, std::span<const double> pi, double alpha);

// MiniMaxEnt gap: (1/N) sum_i [softBR_i - J_i], both under minimaxent_shaping(alpha).
// Throws for alpha <= 0 or a policy with a zero entry.
double minimaxent_gap(const GameTree& tree, std::span<const double> pi, double alpha);
double minimaxent_gap_sum(const GameTree& tree, std::span<const double> pi, double alpha);

// Throws InvalidArgument unless the game is two-player zero-sum.
void require_two_player_zero_sum(const Game& game, std::string_view what);

}  // namespace ue

#endif  // UE_EXACT_SOLVER_H_
