#ifndef UE_HARNESS_EXPERIMENTS_H_
#define UE_HARNESS_EXPERIMENTS_H_

// Experiment runners behind the CLI subcommands. Each writes one CSV (header,
// rows, trailing metadata line) to `out`.

#include <iosfwd>
#include <vector>

#include "ue/harness/config.h"
#include "ue/harness/report.h"

namespace ue::harness {

// converge: MMD with a constant (eta, alpha), AQRE gap per iteration.
void run_convergence(const ExperimentConfig& config, std::ostream& out);
// anneal: MMD with a decaying schedule, plain or MiniMaxEnt objective.
void run_annealed(const ExperimentConfig& config, std::ostream& out);
// sweep: self-play return of search agents per stepsize on a common-payoff game.
void run_stepsize_sweep(const ExperimentConfig& config, std::ostream& out);
// match: two agent specs, seats alternating, bootstrap CI of agent A's return.
void run_match(const ExperimentConfig& config, std::ostream& out);
// exploit: exact exploitability of a policy file, or of uniform and its
// one-step update iterates.
void run_exploitability_eval(const ExperimentConfig& config, std::ostream& out);
// selfcheck: oracle-equivalence checks; returns false if any check fails.
bool run_selfcheck(const ExperimentConfig& config, std::ostream& out);

struct MatchReport {
  double mean = 0.0;  // agent A's mean return
  Interval ci{0.0, 0.0};
  std::array<double, 2> seat_mean{};  // A's mean return in seat 0 and seat 1
  std::array<Interval, 2> seat_ci{};
  long games = 0;
  std::array<long, 2> seat_games{};
  std::uint64_t seed = 0;
  std::vector<double> returns;  // A's return per game, in game order
};

// Game g seats agent A in seat g % 2 and uses RNG stream g, so results do not
// depend on the number of workers.
MatchReport play_match(const ExperimentConfig& config);

}  // namespace ue::harness

#endif  // UE_HARNESS_EXPERIMENTS_H_
