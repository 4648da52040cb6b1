#ifndef UE_UPDATES_H_
#define UE_UPDATES_H_

// Local policy updates U(pi, q) -> pi' applied at a single decision point,
// and the time-indexed stepsize / temperature schedules.

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ue {

enum class UpdateKind { kPolicyIteration, kHedge, kMmd };

std::string_view update_kind_name(UpdateKind kind);
UpdateKind parse_update_kind(std::string_view name);

struct UpdateParams {
  UpdateKind kind = UpdateKind::kMmd;
  double eta = 1.0;
  double alpha = 0.0;
  std::vector<double> magnet;  // empty means uniform
};

// Point mass on the argmax of q, lowest index on ties.
std::vector<double> pi_update(std::span<const double> pi, std::span<const double> q);

// pi' proportional to pi * exp(eta * q). Zero entries of pi stay zero.
std::vector<double> hedge_update(std::span<const double> pi, std::span<const double> q,
                                 double eta);

// pi' proportional to [pi * exp(eta * q) * rho^(eta * alpha)]^(1 / (1 + alpha * eta)).
// hedge_update is this with alpha = 0 (and gives identical bits).
std::vector<double> mmd_update(std::span<const double> pi, std::span<const double> q,
                               std::span<const double> rho, double eta, double alpha);

// Dispatches on params.kind.
std::vector<double> apply_update(const UpdateParams& params, std::span<const double> pi,
                                 std::span<const double> q);

// Unvalidated building blocks shared with the batched updates. `logits` holds
// unnormalized log-probabilities on entry and the normalized distribution on
// exit (max-subtracted before exponentiation).
void normalize_logits(std::span<double> logits);
void log_into(std::span<const double> p, std::span<double> out);

// One scalar term of a schedule: value(t) = c for constant terms, otherwise
// c / (k * sqrt(t)).
struct ScheduleTerm {
  double c = 1.0;
  double k = 1.0;
  bool decays = false;

  double at(long t) const;
  std::string to_string() const;
  friend bool operator==(const ScheduleTerm&, const ScheduleTerm&) = default;
};

struct Schedule {
  ScheduleTerm eta;
  ScheduleTerm alpha;

  static Schedule constant(double eta, double alpha);
  std::string to_string() const;
  friend bool operator==(const Schedule&, const Schedule&) = default;
};

struct ScheduleValue {
  double eta;
  double alpha;
};

// Throws InvalidArgument for t < 1.
ScheduleValue schedule_eval(const Schedule& schedule, long t);

// Accepts "0.01", "1/sqrt(t)", "5/sqrt(t)", "1/(2sqrt(t))", "1/(2*sqrt(t))".
ScheduleTerm parse_schedule_term(std::string_view text);
// "eta=<term>,alpha=<term>" in either order.
Schedule parse_schedule(std::string_view text);

}  // namespace ue

#endif  // UE_UPDATES_H_
