#include "ue/harness/agents.h"

#include "ue/errors.h"
#include "ue/exact_solver.h"
#include "ue/tree.h"

namespace ue::harness {

SearchConfig search_config_from(SearchKind kind, const ExperimentConfig& config) {
  const double eta = config.get_double("eta", 50.0);
  const double alpha = config.get_double("alpha", 0.01);
  if (!(eta > 0.0)) throw InvalidArgument("eta: must be positive");
  if (!(alpha >= 0.0)) throw InvalidArgument("alpha: must be nonnegative");
  SearchConfig sc = make_search_config(kind, eta, alpha);
  const std::string belief = config.get_string("belief", "particles");
  if (belief == "particles") {
    sc.belief = BeliefSource::kParticles;
  } else if (belief == "exact") {
    sc.belief = BeliefSource::kExact;
  } else {
    throw InvalidArgument("belief: expected 'particles' or 'exact', got '" + belief + "'");
  }
  sc.particles = static_cast<int>(config.get_long("particles", 10, 1, 1'000'000));
  sc.max_attempts = config.get_long("max_attempts", 0, 0, 1'000'000'000'000L);
  sc.num_histories = config.get_long("histories", 1000, 1, 1'000'000'000L);
  if (config.has("selection")) {
    const std::string s = config.get_string("selection", "");
    if (s == "sample") {
      sc.selection = ActionSelection::kSample;
    } else if (s == "argmax") {
      sc.selection = ActionSelection::kArgmax;
    } else {
      throw InvalidArgument("selection: expected 'sample' or 'argmax', got '" + s + "'");
    }
  }
  return sc;
}

namespace {

std::size_t sample_index(const std::vector<double>& dist, RngStream& rng) {
  return rng.discrete(dist);
}

class BlueprintAgent : public MatchAgent {
 public:
  explicit BlueprintAgent(std::shared_ptr<const JointPolicy> policy) : policy_(std::move(policy)) {}
  void start(int) override {}
  Action act(const HistoryState& state, RngStream& rng) override {
    const auto actions = state.legal_actions();
    const auto dist = (*policy_)[state.current_player()].action_distribution(
        state.info_state_key(state.current_player()), static_cast<int>(actions.size()));
    return actions[sample_index(dist, rng)];
  }

 private:
  std::shared_ptr<const JointPolicy> policy_;
};

class FirstActionAgent : public MatchAgent {
 public:
  void start(int) override {}
  Action act(const HistoryState& state, RngStream&) override { return state.legal_actions().front(); }
};

class SearchMatchAgent : public MatchAgent {
 public:
  SearchMatchAgent(SearchKind kind, std::shared_ptr<const Game> game,
                   std::shared_ptr<const JointPolicy> blueprint,
                   std::shared_ptr<const GameTree> tree, SearchConfig config)
      : blueprint_(std::move(blueprint)), tree_(std::move(tree)) {
    if (tree_) sampler_ = std::make_unique<ExactSampler>(*tree_, to_flat(*tree_, *blueprint_));
    agent_ = std::make_unique<SearchAgent>(kind, SearchContext{game, blueprint_.get(), sampler_.get()},
                                           std::move(config));
  }
  void start(int seat) override { agent_->start(seat); }
  void observe(const HistoryState& state) override { agent_->observe(state); }
  Action act(const HistoryState&, RngStream& rng) override { return agent_->act(rng); }

 private:
  std::shared_ptr<const JointPolicy> blueprint_;
  std::shared_ptr<const GameTree> tree_;
  std::unique_ptr<ExactSampler> sampler_;
  std::unique_ptr<SearchAgent> agent_;
};

}  // namespace

struct AgentFactory::Impl {
  enum class Kind { kBlueprint, kFirst, kSearch, kBestResponse };
  std::string spec;
  Kind kind = Kind::kBlueprint;
  std::shared_ptr<const Game> game;
  std::shared_ptr<const JointPolicy> blueprint;
  std::shared_ptr<const GameTree> tree;
  SearchKind search = SearchKind::kMmds;
  SearchConfig search_config;
};

namespace {

std::shared_ptr<const JointPolicy> load_blueprint(const std::string& text, const Game& game) {
  if (text == "uniform") {
    return std::make_shared<JointPolicy>(uniform_joint_policy(game, Population::kLazy));
  }
  if (text.rfind("file:", 0) == 0) {
    return std::make_shared<JointPolicy>(load_policy(text.substr(5), game.num_players()));
  }
  throw InvalidArgument("unknown blueprint '" + text + "' (expected uniform or file:<path>)");
}

}  // namespace

AgentFactory::AgentFactory(const std::string& spec, std::shared_ptr<const Game> game,
                           const ExperimentConfig& config)
    : impl_(std::make_unique<Impl>()) {
  impl_->spec = spec;
  impl_->game = game;
  if (spec == "first") {
    impl_->kind = Impl::Kind::kFirst;
    return;
  }
  if (spec.rfind("br:", 0) == 0) {
    impl_->kind = Impl::Kind::kBestResponse;
    const auto target = load_blueprint(spec.substr(3), *game);
    const auto tree = GameTree::build(game);
    auto flat = to_flat(tree, *target);
    FlatPolicy br(flat);
    for (int p = 0; p < tree.num_players(); ++p) {
      const auto r = best_response(tree, flat, p);
      for (int id : tree.infosets_deepest_first(p)) {
        const auto s = slice(tree, std::span<const double>(r.policy), id);
        std::copy(s.begin(), s.end(), slice(tree, std::span<double>(br), id).begin());
      }
    }
    impl_->blueprint = std::make_shared<JointPolicy>(from_flat(tree, br));
    return;
  }
  const auto plus = spec.find('+');
  impl_->blueprint = load_blueprint(spec.substr(0, plus), *game);
  if (plus == std::string::npos) return;
  impl_->kind = Impl::Kind::kSearch;
  impl_->search = parse_search_kind(spec.substr(plus + 1));
  impl_->search_config = search_config_from(impl_->search, config);
  if (impl_->search_config.belief == BeliefSource::kExact) {
    impl_->tree = std::make_shared<const GameTree>(GameTree::build(game));
  }
}

AgentFactory::~AgentFactory() = default;
AgentFactory::AgentFactory(AgentFactory&&) noexcept = default;

const std::string& AgentFactory::spec() const { return impl_->spec; }

std::unique_ptr<MatchAgent> AgentFactory::make() const {
  switch (impl_->kind) {
    case Impl::Kind::kFirst:
      return std::make_unique<FirstActionAgent>();
    case Impl::Kind::kBlueprint:
    case Impl::Kind::kBestResponse:
      return std::make_unique<BlueprintAgent>(impl_->blueprint);
    case Impl::Kind::kSearch:
      return std::make_unique<SearchMatchAgent>(impl_->search, impl_->game, impl_->blueprint,
                                                impl_->tree, impl_->search_config);
  }
  throw StateError("unknown agent kind");
}

}  // namespace ue::harness
