#ifndef UE_HARNESS_AGENTS_H_
#define UE_HARNESS_AGENTS_H_

// Agents for head-to-head matches, built from spec strings:
//   uniform | file:<policy file>       blueprint play
//   <blueprint>+mcs | +mds | +mmds     search on top of the blueprint
//   first                              always the first legal action
//   br:<blueprint>                     exact best response to the blueprint

#include <memory>
#include <string>

#include "ue/dtp.h"
#include "ue/harness/config.h"

namespace ue::harness {

class MatchAgent {
 public:
  virtual ~MatchAgent() = default;
  virtual void start(int seat) = 0;
  // Called with the true state before every decision of any player and at the end.
  virtual void observe(const HistoryState& state) { (void)state; }
  // Only invoked when the agent's seat is to move; may read only that seat's
  // information state and legal actions.
  virtual Action act(const HistoryState& state, RngStream& rng) = 0;
};

// Parsed spec with resources shared across games (read-only once built).
class AgentFactory {
 public:
  // Search settings (eta, alpha, particles, belief, histories, selection,
  // max_attempts) come from `config`. Throws InvalidArgument on bad specs.
  AgentFactory(const std::string& spec, std::shared_ptr<const Game> game,
               const ExperimentConfig& config);
  ~AgentFactory();
  AgentFactory(AgentFactory&&) noexcept;

  std::unique_ptr<MatchAgent> make() const;
  const std::string& spec() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Search configuration shared by match and sweep agents.
SearchConfig search_config_from(SearchKind kind, const ExperimentConfig& config);

}  // namespace ue::harness

#endif  // UE_HARNESS_AGENTS_H_
