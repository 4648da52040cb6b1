#ifndef UE_POLICY_H_
#define UE_POLICY_H_

// Tabular behavioral policies keyed by information state.
//
// A TabularPolicy belongs to one player. Keys that were never stored resolve
// to the uniform distribution over the caller-supplied number of legal
// actions, so search code can consult a policy at keys it meets lazily.

#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ue/game.h"

namespace ue {

inline constexpr double kSimplexTolerance = 1e-12;

// max(|sum - 1|, largest negative entry magnitude); infinity for non-finite
// entries or an empty vector.
double simplex_violation(std::span<const double> dist);

class TabularPolicy {
 public:
  explicit TabularPolicy(int player = 0) : player_(player) {}

  int player() const { return player_; }
  std::size_t size() const { return table_.size(); }
  bool empty() const { return table_.empty(); }

  // Stored vector, or the uniform fallback over `num_actions` actions.
  // Throws InvalidArgument for num_actions <= 0 (terminal keys have no
  // distribution).
  std::vector<double> action_distribution(const InfoStateKey& key, int num_actions) const;

  // Null when the key is not stored.
  const std::vector<double>* find(const std::string& key_bytes) const;

  // Validates `dist` (nonnegative, sums to 1 within kSimplexTolerance) and
  // the key's player; throws InvalidArgument naming the key otherwise.
  void set_action_distribution(const InfoStateKey& key, std::vector<double> dist);
  // No validation; used by loaders that validate the whole table afterwards.
  void set_unchecked(std::string key_bytes, std::vector<double> dist);

  // Entries sorted by key bytes.
  std::vector<std::pair<std::string, const std::vector<double>*>> sorted_entries() const;

  friend bool operator==(const TabularPolicy&, const TabularPolicy&) = default;

 private:
  int player_;
  std::unordered_map<std::string, std::vector<double>> table_;
};

// One TabularPolicy per player.
class JointPolicy {
 public:
  JointPolicy() = default;
  explicit JointPolicy(int num_players);
  explicit JointPolicy(std::vector<TabularPolicy> policies);

  int num_players() const { return static_cast<int>(policies_.size()); }
  TabularPolicy& operator[](int player) { return policies_.at(static_cast<std::size_t>(player)); }
  const TabularPolicy& operator[](int player) const {
    return policies_.at(static_cast<std::size_t>(player));
  }

  // Distribution for the player to move at a decision node of `state`,
  // aligned with state.legal_actions().
  std::vector<double> action_distribution(const HistoryState& state) const;
  void action_distribution(const HistoryState& state, std::size_t num_actions,
                           std::vector<double>& out) const;

  friend bool operator==(const JointPolicy&, const JointPolicy&) = default;

 private:
  std::vector<TabularPolicy> policies_;
};

enum class Population { kEnumerate, kLazy };

// Uniform policy. kEnumerate stores every reachable key (throws
// BudgetExceeded for trees over the budget); kLazy stores nothing and relies
// on the uniform fallback.
TabularPolicy uniform_policy(const Game& game, int player,
                             Population population = Population::kEnumerate);
JointPolicy uniform_joint_policy(const Game& game,
                                 Population population = Population::kEnumerate);

struct PolicyDiagnostics {
  bool ok = true;
  double max_violation = 0.0;  // worst |sum - 1| or negative mass
  std::string worst_key_hex;
  std::vector<std::string> errors;
};

PolicyDiagnostics validate(const TabularPolicy& policy);
PolicyDiagnostics validate(const JointPolicy& policy);

// (1 - eps) * pi + eps * uniform at every stored key; eps in [0, 1].
TabularPolicy interior_mix(const TabularPolicy& policy, double eps);
JointPolicy interior_mix(const JointPolicy& policy, double eps);

// Text format, one record per key, sorted by (player, key hex):
//   player<TAB>key_hex<TAB>p1,p2,...,pk
// with shortest round-trip decimals.
void write_policy(std::ostream& out, const JointPolicy& policy);
// Throws InvalidArgument on malformed lines or non-simplex records.
JointPolicy read_policy(std::istream& in, int num_players);
void save_policy(const std::string& path, const JointPolicy& policy);
JointPolicy load_policy(const std::string& path, int num_players);

}  // namespace ue

#endif  // UE_POLICY_H_
