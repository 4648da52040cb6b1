#include "ue/dtp.h"

#include <algorithm>

#include "ue/errors.h"

namespace ue {

void RunningMean::add(double x) {
  const double y = x - compensation_;
  const double t = sum_ + y;
  compensation_ = (t - sum_) - y;
  sum_ = t;
  ++count_;
}

std::vector<double> QEstimate::means() const {
  std::vector<double> out;
  out.reserve(stats.size());
  for (const auto& s : stats) out.push_back(s.mean());
  return out;
}

std::string_view search_kind_name(SearchKind kind) {
  switch (kind) {
    case SearchKind::kMcs:
      return "mcs";
    case SearchKind::kMds:
      return "mds";
    case SearchKind::kMmds:
      return "mmds";
  }
  return "?";
}

SearchKind parse_search_kind(std::string_view name) {
  if (name == "mcs") return SearchKind::kMcs;
  if (name == "mds") return SearchKind::kMds;
  if (name == "mmds") return SearchKind::kMmds;
  throw InvalidArgument("unknown search kind '" + std::string(name) + "'");
}

ActionSelection default_selection(SearchKind kind) {
  return kind == SearchKind::kMds ? ActionSelection::kArgmax : ActionSelection::kSample;
}

SearchConfig make_search_config(SearchKind kind, double eta, double alpha) {
  SearchConfig config;
  switch (kind) {
    case SearchKind::kMcs:
      config.update.kind = UpdateKind::kPolicyIteration;
      break;
    case SearchKind::kMds:
      config.update.kind = UpdateKind::kHedge;
      break;
    case SearchKind::kMmds:
      config.update.kind = UpdateKind::kMmd;
      break;
  }
  config.update.eta = eta;
  config.update.alpha = kind == SearchKind::kMmds ? alpha : 0.0;
  return config;
}

namespace {

std::size_t choose(const JointPolicy& blueprint, const HistoryState& state, std::size_t num_actions,
                   RngStream& rng) {
  const auto& table = blueprint[state.current_player()];
  const std::vector<double>* stored =
      table.empty() ? nullptr : table.find(state.info_state_bytes(state.current_player()));
  if (stored == nullptr) return rng.uniform_int(num_actions);
  if (stored->size() != num_actions) {
    throw InvalidArgument("blueprint distribution length differs from legal action count");
  }
  return rng.discrete(*stored);
}

double rollout(const JointPolicy& blueprint, HistoryState& state, int player, RngStream& rng) {
  std::vector<Action> actions;
  std::vector<ChanceOutcome> outcomes;
  std::vector<double> weights;
  while (!state.is_terminal()) {
    if (state.is_chance_node()) {
      state.chance_outcomes(outcomes);
      weights.resize(outcomes.size());
      for (std::size_t i = 0; i < outcomes.size(); ++i) weights[i] = outcomes[i].probability;
      state.apply_unchecked(outcomes[rng.discrete(weights)].action);
      continue;
    }
    state.legal_actions(actions);
    state.apply_unchecked(actions[choose(blueprint, state, actions.size(), rng)]);
  }
  return state.utility(player);
}

void require_context(const SearchContext& ctx) {
  if (!ctx.game || ctx.blueprint == nullptr) {
    throw InvalidArgument("search context needs a game and a blueprint");
  }
}

}  // namespace

std::vector<std::unique_ptr<HistoryState>> sample_histories(const SearchContext& ctx,
                                                            const AgentRecord& record,
                                                            const SearchConfig& config,
                                                            RngStream& rng) {
  require_context(ctx);
  std::vector<std::unique_ptr<HistoryState>> out;
  if (config.belief == BeliefSource::kParticles) {
    auto set = particle_sample(*ctx.game, *ctx.blueprint, record, config.particles,
                               config.max_attempts, rng);
    return std::move(set.particles);
  }
  if (ctx.exact == nullptr) throw InvalidArgument("exact belief source needs the game tree");
  if (config.num_histories < 1) throw InvalidArgument("history budget must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  try {
    for (long i = 0; i < config.num_histories; ++i) {
      out.push_back(ctx.exact->sample(record.key, rng));
      if (config.time_limit && std::chrono::steady_clock::now() - start > *config.time_limit) break;
    }
  } catch (const UnreachableInfoState&) {
    out.clear();
  }
  return out;
}

QEstimate estimate_q(const SearchContext& ctx, const AgentRecord& record,
                     std::span<const std::unique_ptr<HistoryState>> histories, RngStream& rng) {
  require_context(ctx);
  QEstimate est;
  est.actions = record.legal_actions;
  est.stats.assign(est.actions.size(), RunningMean{});
  for (const auto& h : histories) {
    for (std::size_t a = 0; a < est.actions.size(); ++a) {
      auto state = h->child(est.actions[a]);
      est.stats[a].add(rollout(*ctx.blueprint, *state, record.player, rng));
    }
  }
  return est;
}

QEstimate estimate_q(const SearchContext& ctx, const AgentRecord& record,
                     const SearchConfig& config, RngStream& rng) {
  const auto histories = sample_histories(ctx, record, config, rng);
  return estimate_q(ctx, record, histories, rng);
}

std::vector<double> blueprint_at(const JointPolicy& blueprint, const AgentRecord& record) {
  if (record.legal_actions.empty()) throw StateError("record has no legal actions");
  return blueprint[record.player].action_distribution(record.key,
                                                      static_cast<int>(record.legal_actions.size()));
}

SearchOutcome search_policy(const SearchContext& ctx, const AgentRecord& record,
                            const SearchConfig& config, RngStream& rng) {
  require_context(ctx);
  SearchOutcome out;
  out.prior = blueprint_at(*ctx.blueprint, record);
  const auto histories = sample_histories(ctx, record, config, rng);
  if (histories.empty()) {
    out.fallback = true;
    out.updated = out.prior;
    return out;
  }
  out.q = estimate_q(ctx, record, histories, rng);
  out.updated = apply_update(config.update, out.prior, out.q.means());
  return out;
}

Action select_action(const SearchOutcome& outcome, const AgentRecord& record,
                     ActionSelection selection, RngStream& rng) {
  const auto& dist = outcome.updated;
  if (outcome.fallback || selection == ActionSelection::kSample) {
    return record.legal_actions[rng.discrete(dist)];
  }
  std::size_t best = 0;
  for (std::size_t a = 1; a < dist.size(); ++a) {
    if (dist[a] > dist[best]) best = a;
  }
  return record.legal_actions[best];
}

Action search_act(SearchKind kind, const SearchContext& ctx, const AgentRecord& record,
                  const SearchConfig& config, RngStream& rng) {
  const auto expected = make_search_config(kind, config.update.eta, config.update.alpha).update.kind;
  if (config.update.kind != expected) {
    throw InvalidArgument(std::string(search_kind_name(kind)) + " requires the " +
                          std::string(update_kind_name(expected)) + " update");
  }
  const auto outcome = search_policy(ctx, record, config, rng);
  return select_action(outcome, record, config.selection.value_or(default_selection(kind)), rng);
}

Action mcs_act(const SearchContext& ctx, const AgentRecord& record, const SearchConfig& config,
               RngStream& rng) {
  return search_act(SearchKind::kMcs, ctx, record, config, rng);
}

Action mds_act(const SearchContext& ctx, const AgentRecord& record, const SearchConfig& config,
               RngStream& rng) {
  return search_act(SearchKind::kMds, ctx, record, config, rng);
}

Action mmds_act(const SearchContext& ctx, const AgentRecord& record, const SearchConfig& config,
                RngStream& rng) {
  return search_act(SearchKind::kMmds, ctx, record, config, rng);
}

SearchAgent::SearchAgent(SearchKind kind, SearchContext ctx, SearchConfig config)
    : kind_(kind), ctx_(std::move(ctx)), config_(std::move(config)) {
  require_context(ctx_);
}

void SearchAgent::start(int player) {
  if (player < 0 || player >= ctx_.game->num_players()) {
    throw InvalidArgument("seat " + std::to_string(player) + " out of range");
  }
  record_ = AgentRecord{};
  record_.player = player;
  started_ = true;
  to_move_ = false;
}

void SearchAgent::observe(const HistoryState& state) {
  if (!started_) throw StateError("observe before start");
  const std::string& key = state.info_state_bytes(record_.player);
  if (key.compare(0, record_.key.bytes.size(), record_.key.bytes) != 0) {
    throw StateError("observation is inconsistent with the agent's record");
  }
  record_.key.player = record_.player;
  record_.key.bytes = key;
  to_move_ = state.current_player() == record_.player;
  if (to_move_) {
    state.legal_actions(record_.legal_actions);
  } else {
    record_.legal_actions.clear();
  }
}

Action SearchAgent::act(RngStream& rng) {
  if (!started_) throw StateError("act before the game started");
  if (!to_move_) throw StateError("act called when the agent is not to move");
  const Action a = search_act(kind_, ctx_, record_, config_, rng);
  record_.own_actions.push_back(a);
  to_move_ = false;
  return a;
}

}  // namespace ue
