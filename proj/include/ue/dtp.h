#ifndef UE_DTP_H_
#define UE_DTP_H_

// Decision-time planning: estimate action values at the agent's decision
// point by rolling out the blueprint from sampled histories, then apply a
// local update to the blueprint's distribution there.
//
//   MCS  = policy-iteration update (argmax of q)
//   MDS  = hedge update, plays the argmax of the updated distribution by default
//   MMDS = MMD update, samples from the updated distribution by default

#include <chrono>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "ue/belief.h"
#include "ue/updates.h"

namespace ue {

// Running mean with compensated summation.
class RunningMean {
 public:
  void add(double x);
  double mean() const { return count_ == 0 ? 0.0 : (sum_ + compensation_) / static_cast<double>(count_); }
  long count() const { return count_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
  long count_ = 0;
};

struct QEstimate {
  std::vector<Action> actions;
  std::vector<RunningMean> stats;  // aligned with actions

  std::vector<double> means() const;
  long histories() const { return stats.empty() ? 0 : stats.front().count(); }
};

enum class SearchKind { kMcs, kMds, kMmds };
enum class BeliefSource { kExact, kParticles };
enum class ActionSelection { kSample, kArgmax };

std::string_view search_kind_name(SearchKind kind);
SearchKind parse_search_kind(std::string_view name);
// MDS plays the argmax; MCS and MMDS sample (MCS's update is already a point mass).
ActionSelection default_selection(SearchKind kind);

struct SearchConfig {
  UpdateParams update;  // kind must match the search kind (set by make_search_config)
  BeliefSource belief = BeliefSource::kParticles;
  int particles = 10;
  long max_attempts = 0;     // 0 means kAttemptsPerParticle * particles
  long num_histories = 1;    // exact belief source: histories drawn per decision
  std::optional<std::chrono::duration<double>> time_limit;  // optional cap, exact source only
  std::optional<ActionSelection> selection;  // default per kind
};

SearchConfig make_search_config(SearchKind kind, double eta, double alpha);

// Where sampled histories come from. The exact source needs the full tree.
struct SearchContext {
  std::shared_ptr<const Game> game;
  const JointPolicy* blueprint = nullptr;
  ExactSampler* exact = nullptr;  // required for BeliefSource::kExact
};

// Histories for one decision: exact posterior draws or a particle set. Empty
// means the belief source found nothing consistent.
std::vector<std::unique_ptr<HistoryState>> sample_histories(const SearchContext& ctx,
                                                            const AgentRecord& record,
                                                            const SearchConfig& config,
                                                            RngStream& rng);

// For each history and each legal action: force the action, then let every
// player follow the blueprint to a terminal; record the agent's return.
QEstimate estimate_q(const SearchContext& ctx, const AgentRecord& record,
                     std::span<const std::unique_ptr<HistoryState>> histories, RngStream& rng);
QEstimate estimate_q(const SearchContext& ctx, const AgentRecord& record,
                     const SearchConfig& config, RngStream& rng);

struct SearchOutcome {
  std::vector<double> prior;    // blueprint at the key (uniform fallback)
  std::vector<double> updated;  // search policy; equals prior on fallback
  QEstimate q;
  bool fallback = false;        // no consistent history was found
};

// Blueprint distribution at the record's key, aligned with record.legal_actions.
std::vector<double> blueprint_at(const JointPolicy& blueprint, const AgentRecord& record);

SearchOutcome search_policy(const SearchContext& ctx, const AgentRecord& record,
                            const SearchConfig& config, RngStream& rng);

// Chooses from the search policy; on fallback samples from the blueprint.
Action select_action(const SearchOutcome& outcome, const AgentRecord& record,
                     ActionSelection selection, RngStream& rng);

Action search_act(SearchKind kind, const SearchContext& ctx, const AgentRecord& record,
                  const SearchConfig& config, RngStream& rng);
Action mcs_act(const SearchContext& ctx, const AgentRecord& record, const SearchConfig& config,
               RngStream& rng);
Action mds_act(const SearchContext& ctx, const AgentRecord& record, const SearchConfig& config,
               RngStream& rng);
Action mmds_act(const SearchContext& ctx, const AgentRecord& record, const SearchConfig& config,
                RngStream& rng);

// Online agent for one seat. observe() is fed the true state after every
// transition; the agent reads only its own information state from it.
class SearchAgent {
 public:
  SearchAgent(SearchKind kind, SearchContext ctx, SearchConfig config);

  void start(int player);
  void observe(const HistoryState& state);
  // Throws StateError before start() or when it is not the agent's turn.
  Action act(RngStream& rng);
  const AgentRecord& record() const { return record_; }
  SearchKind kind() const { return kind_; }

 private:
  SearchKind kind_;
  SearchContext ctx_;
  SearchConfig config_;
  AgentRecord record_;
  bool started_ = false;
  bool to_move_ = false;
};

}  // namespace ue

#endif  // UE_DTP_H_
