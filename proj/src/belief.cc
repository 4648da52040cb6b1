#include "ue/belief.h"

#include <algorithm>
#include <string_view>

#include "ue/errors.h"

namespace ue {

AgentRecord record_from_state(const HistoryState& state, int player) {
  AgentRecord record;
  record.player = player;
  record.key = state.info_state_key(player);
  for (const auto& step : state.trajectory()) {
    if (step.player == player) record.own_actions.push_back(step.action);
  }
  if (state.current_player() == player) record.legal_actions = state.legal_actions();
  return record;
}

namespace {

enum class Playout { kAccepted, kRejected };

Playout play_one(const Game& game, const JointPolicy& policy, const AgentRecord& record,
                 RngStream& rng, std::unique_ptr<HistoryState>& out) {
  const std::string_view target = record.key.bytes;
  const int me = record.player;
  auto state = game.new_initial_state();
  std::size_t forced = 0;
  std::size_t checked = 0;
  std::vector<Action> actions;
  std::vector<ChanceOutcome> outcomes;
  std::vector<double> weights;
  for (;;) {
    const std::string& key = state->info_state_bytes(me);
    if (key.size() > target.size()) return Playout::kRejected;
    if (key.size() > checked) {
      if (std::string_view(key).substr(checked) != target.substr(checked, key.size() - checked)) {
        return Playout::kRejected;
      }
      checked = key.size();
    }
    if (state->is_terminal()) return Playout::kRejected;
    const int mover = state->current_player();
    if (mover == me && key.size() == target.size() && forced == record.own_actions.size()) {
      out = std::move(state);
      return Playout::kAccepted;
    }
    if (state->is_chance_node()) {
      state->chance_outcomes(outcomes);
      weights.resize(outcomes.size());
      for (std::size_t i = 0; i < outcomes.size(); ++i) weights[i] = outcomes[i].probability;
      state->apply_unchecked(outcomes[rng.discrete(weights)].action);
      continue;
    }
    state->legal_actions(actions);
    if (mover == me) {
      if (forced == record.own_actions.size()) return Playout::kRejected;
      const Action a = record.own_actions[forced++];
      if (std::find(actions.begin(), actions.end(), a) == actions.end()) return Playout::kRejected;
      state->apply_unchecked(a);
      continue;
    }
    const auto& table = policy[mover];
    const std::vector<double>* stored = table.empty() ? nullptr : table.find(state->info_state_bytes(mover));
    std::size_t choice;
    if (stored == nullptr) {
      choice = rng.uniform_int(actions.size());
    } else {
      if (stored->size() != actions.size()) {
        throw InvalidArgument("blueprint distribution length differs from legal action count");
      }
      choice = rng.discrete(*stored);
    }
    state->apply_unchecked(actions[choice]);
  }
}

}  // namespace

ParticleSet particle_sample(const Game& game, const JointPolicy& policy, const AgentRecord& record,
                            int n, long max_attempts, RngStream& rng) {
  if (n < 0) throw InvalidArgument("particle count must be nonnegative");
  if (record.player < 0 || record.player >= game.num_players()) {
    throw InvalidArgument("record player out of range");
  }
  ParticleSet set;
  set.target_count = n;
  const long budget = max_attempts > 0 ? max_attempts : kAttemptsPerParticle * n;
  while (static_cast<int>(set.particles.size()) < n && set.attempts_used < budget) {
    ++set.attempts_used;
    std::unique_ptr<HistoryState> particle;
    if (play_one(game, policy, record, rng, particle) == Playout::kAccepted) {
      if (particle->info_state_bytes(record.player) != record.key.bytes) {
        throw StateError("accepted particle does not match the record");
      }
      set.particles.push_back(std::move(particle));
    }
  }
  return set;
}

ExactSampler::ExactSampler(const GameTree& tree, FlatPolicy policy)
    : tree_(&tree), policy_(std::move(policy)) {}

const Posterior& ExactSampler::posterior(const InfoStateKey& key) {
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  return cache_.emplace(key, ue::posterior(*tree_, policy_, key)).first->second;
}

int ExactSampler::sample_node(const InfoStateKey& key, RngStream& rng) {
  const auto& post = posterior(key);
  double u = rng.uniform();
  for (const auto& e : post.entries) {
    if (u < e.probability) return e.node;
    u -= e.probability;
  }
  return post.entries.back().node;
}

std::unique_ptr<HistoryState> ExactSampler::sample(const InfoStateKey& key, RngStream& rng) {
  return tree_->materialize(sample_node(key, rng));
}

std::unique_ptr<HistoryState> exact_sample(const GameTree& tree, std::span<const double> policy,
                                           const InfoStateKey& key, RngStream& rng) {
  ExactSampler sampler(tree, FlatPolicy(policy.begin(), policy.end()));
  return sampler.sample(key, rng);
}

}  // namespace ue
