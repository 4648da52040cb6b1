#ifndef UE_LAST_ITERATE_H_
#define UE_LAST_ITERATE_H_

// Exact full-game last-iterate loops: every iteration computes feedback for
// all infosets from the current joint policy (or the variant's modified
// joint policy), then overwrites all infosets at once.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ue/exact_solver.h"
#include "ue/updates.h"

namespace ue {

enum class Variant { kStandard, kSubgame, kBft, kOpponent };
enum class Objective { kPlain, kMiniMaxEnt };

std::string_view variant_name(Variant variant);
Variant parse_variant(std::string_view name);
std::string_view objective_name(Objective objective);
Objective parse_objective(std::string_view name);
inline constexpr Variant kAllVariants[] = {Variant::kStandard, Variant::kSubgame, Variant::kBft,
                                           Variant::kOpponent};

// Row t describes the iterate pi^t produced by the t-th update (t >= 1).
// exploitability is the mean best-response gain (1/N) sum_i (BR_i - J_i).
// gap is the AQRE gap at alpha_t for the plain objective and the MiniMaxEnt
// gap for the MiniMaxEnt objective; it is 0 for unregularized (alpha = 0) runs.
struct IterateRecord {
  long t = 0;
  double eta = 0.0;
  double alpha = 0.0;
  double j0 = 0.0;
  double j1 = 0.0;
  double exploitability = 0.0;
  double gap = 0.0;
  double linf_change = 0.0;
};

struct IterateLog {
  std::vector<IterateRecord> rows;

  static constexpr std::string_view kCsvHeader =
      "t,eta,alpha,j0,j1,exploitability,gap,linf_change";
  // Header plus one row per record, shortest round-trip decimals.
  void write_csv(std::ostream& out) const;
};

struct RunResult {
  FlatPolicy policy;
  IterateLog log;
};

// Magnet given as a flat policy; empty means uniform.
std::vector<double> magnet_logs(const GameTree& tree, std::span<const double> magnet);

// Batched MMD update of every infoset with positive weight; other infosets
// keep pi. q and logrho are flat; `out` may not alias `pi`.
void mmd_update_flat(const GameTree& tree, std::span<const double> pi, std::span<const double> q,
                     std::span<const double> weight, std::span<const double> logrho, double eta,
                     double alpha, std::span<double> out);

// Standard feedback: q^pi for every player merged into one flat vector, and
// each infoset's counterfactual weight.
InfosetQ standard_feedback(const GameTree& tree, std::span<const double> pi,
                           const EntropyShaping& shaping = kNoShaping);

// One simultaneous hedge step at every infoset with positive weight. Works on
// any game.
FlatPolicy md_step(const GameTree& tree, std::span<const double> pi, double eta);

struct MonotoneStep {
  FlatPolicy policy;
  double eta = 0.0;     // stepsize finally used
  int halvings = 0;
  double j_before = 0.0;
  double j_after = 0.0;
};
// Common-payoff games: md_step, halving eta (at most max_halvings times)
// while the common return decreases by more than tol. Throws StateError if
// no stepsize succeeds.
MonotoneStep md_step_monotone(const GameTree& tree, std::span<const double> pi, double eta,
                              double tol = 1e-12, int max_halvings = 20);

// Mirror descent with exact q. Common-payoff games only; pi0 must be fully
// supported.
RunResult run_md(const GameTree& tree, std::span<const double> pi0, double eta, long iterations);

struct MmdConfig {
  Variant variant = Variant::kStandard;
  Objective objective = Objective::kPlain;
  Schedule schedule = Schedule::constant(0.01, 0.1);
  FlatPolicy magnet;   // empty means uniform
  int bft_passes = 1;  // re-weighting passes of the belief fine-tuning variant
  bool log_metrics = true;  // exploitability and gap per row (j0, j1 always)
};

// One iteration of the configured variant at (eta, alpha).
FlatPolicy mmd_iteration(const GameTree& tree, std::span<const double> pi, const MmdConfig& config,
                         std::span<const double> logrho, double eta, double alpha);

// Magnetic mirror descent. Two-player zero-sum games only. Throws StateError
// if an iterate loses full support.
RunResult run_mmd(const GameTree& tree, std::span<const double> pi0, const MmdConfig& config,
                  long iterations);

// run_mmd with a decaying schedule.
RunResult run_annealed_nash(const GameTree& tree, std::span<const double> pi0,
                            const Schedule& schedule, long iterations, Variant variant,
                            Objective objective);

// Schedules of the annealed runs, by game name, variant and objective.
// Known games: kuhn_poker, abrupt_dark_hex (2x2), liars_dice_4, leduc_poker.
Schedule annealing_schedule(std::string_view game, Variant variant, Objective objective);
// Constant (eta, alpha) for convergence to the AQRE at alpha = 0.1.
Schedule aqre_schedule(std::string_view game, Variant variant);

}  // namespace ue

#endif  // UE_LAST_ITERATE_H_
