#ifndef UE_BELIEF_H_
#define UE_BELIEF_H_

// Sampling histories consistent with a player's decision point.

#include <cstdint>
#include <memory>
#include <vector>

#include "ue/exact_solver.h"
#include "ue/policy.h"
#include "ue/rng.h"

namespace ue {

// What an online agent knows about the game so far.
struct AgentRecord {
  int player = 0;
  InfoStateKey key;                 // current information state
  std::vector<Action> own_actions;  // actions the agent has taken, in order
  std::vector<Action> legal_actions;  // legal actions at `key` (empty between turns)
};

// Record of `player` at `state`, with own actions read off the trajectory.
AgentRecord record_from_state(const HistoryState& state, int player);

struct ParticleSet {
  std::vector<std::unique_ptr<HistoryState>> particles;
  long attempts_used = 0;
  int target_count = 0;
};

inline constexpr long kAttemptsPerParticle = 1000;

// Rejection sampling from the root: chance outcomes are drawn from their
// distribution, the recorded player's actions are forced from the record and
// other players act according to `policy`. A playout is accepted once the
// recorded player is to move with exactly the record's information state,
// and rejected as soon as its observations diverge from the record. Stops
// after `n` acceptances or `max_attempts` playouts (0 means
// kAttemptsPerParticle * n). The set may be empty.
ParticleSet particle_sample(const Game& game, const JointPolicy& policy, const AgentRecord& record,
                            int n, long max_attempts, RngStream& rng);

// Draws from the exact posterior of an infoset under a fixed flat policy.
// Posteriors are computed once per key and cached.
class ExactSampler {
 public:
  ExactSampler(const GameTree& tree, FlatPolicy policy);

  const GameTree& tree() const { return *tree_; }
  const FlatPolicy& policy() const { return policy_; }
  // Throws UnknownInfoState or UnreachableInfoState.
  const Posterior& posterior(const InfoStateKey& key);
  int sample_node(const InfoStateKey& key, RngStream& rng);
  std::unique_ptr<HistoryState> sample(const InfoStateKey& key, RngStream& rng);

 private:
  const GameTree* tree_;
  FlatPolicy policy_;
  std::unordered_map<InfoStateKey, Posterior, InfoStateKeyHash> cache_;
};

// One draw from posterior(tree, policy, key).
std::unique_ptr<HistoryState> exact_sample(const GameTree& tree, std::span<const double> policy,
                                           const InfoStateKey& key, RngStream& rng);

}  // namespace ue

#endif  // UE_BELIEF_H_
