#include "ue/policy.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "ue/errors.h"
#include "ue/format.h"
#include "ue/tree.h"

namespace ue {

double simplex_violation(std::span<const double> dist) {
  if (dist.empty()) return std::numeric_limits<double>::infinity();
  double sum = 0.0;
  double worst = 0.0;
  for (double p : dist) {
    if (!std::isfinite(p)) return std::numeric_limits<double>::infinity();
    if (p < 0.0) worst = std::max(worst, -p);
    sum += p;
  }
  return std::max(worst, std::abs(sum - 1.0));
}

std::vector<double> TabularPolicy::action_distribution(const InfoStateKey& key,
                                                       int num_actions) const {
  if (num_actions <= 0) {
    throw InvalidArgument("no action distribution for a key with no legal actions");
  }
  if (const auto* stored = find(key.bytes)) return *stored;
  return std::vector<double>(static_cast<std::size_t>(num_actions), 1.0 / num_actions);
}

const std::vector<double>* TabularPolicy::find(const std::string& key_bytes) const {
  auto it = table_.find(key_bytes);
  return it == table_.end() ? nullptr : &it->second;
}

void TabularPolicy::set_action_distribution(const InfoStateKey& key, std::vector<double> dist) {
  if (key.player != player_) {
    throw InvalidArgument("key for player " + std::to_string(key.player) +
                          " stored in policy of player " + std::to_string(player_));
  }
  const double violation = simplex_violation(dist);
  if (!(violation <= kSimplexTolerance)) {
    throw InvalidArgument("distribution at key " + key.hex() + " is not on the simplex (violation " +
                          format_double(violation) + ")");
  }
  table_[key.bytes] = std::move(dist);
}

void TabularPolicy::set_unchecked(std::string key_bytes, std::vector<double> dist) {
  table_[std::move(key_bytes)] = std::move(dist);
}

std::vector<std::pair<std::string, const std::vector<double>*>> TabularPolicy::sorted_entries()
    const {
  std::vector<std::pair<std::string, const std::vector<double>*>> out;
  out.reserve(table_.size());
  for (const auto& [key, dist] : table_) out.emplace_back(key, &dist);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

JointPolicy::JointPolicy(int num_players) {
  for (int p = 0; p < num_players; ++p) policies_.emplace_back(p);
}

JointPolicy::JointPolicy(std::vector<TabularPolicy> policies) : policies_(std::move(policies)) {
  for (int p = 0; p < num_players(); ++p) {
    if (policies_[static_cast<std::size_t>(p)].player() != p) {
      throw InvalidArgument("joint policy entry " + std::to_string(p) + " belongs to player " +
                            std::to_string(policies_[static_cast<std::size_t>(p)].player()));
    }
  }
}

std::vector<double> JointPolicy::action_distribution(const HistoryState& state) const {
  std::vector<double> out;
  action_distribution(state, state.legal_actions().size(), out);
  return out;
}

void JointPolicy::action_distribution(const HistoryState& state, std::size_t num_actions,
                                      std::vector<double>& out) const {
  const int player = state.current_player();
  if (player < 0) throw StateError("action_distribution at a non-decision state");
  if (num_actions == 0) throw InvalidArgument("no legal actions");
  const auto* stored = (*this)[player].find(state.info_state_bytes(player));
  if (stored != nullptr) {
    if (stored->size() != num_actions) {
      throw InvalidArgument("stored distribution has " + std::to_string(stored->size()) +
                            " entries but the state has " + std::to_string(num_actions) +
                            " legal actions");
    }
    out.assign(stored->begin(), stored->end());
  } else {
    out.assign(num_actions, 1.0 / static_cast<double>(num_actions));
  }
}

TabularPolicy uniform_policy(const Game& game, int player, Population population) {
  TabularPolicy policy(player);
  if (population == Population::kLazy) return policy;
  std::vector<Action> actions;
  for_each_history(game, [&](const HistoryState& state) {
    if (state.current_player() != player) return;
    const auto& bytes = state.info_state_bytes(player);
    if (policy.find(bytes) != nullptr) return;
    state.legal_actions(actions);
    policy.set_unchecked(bytes, std::vector<double>(actions.size(), 1.0 / actions.size()));
  });
  return policy;
}

JointPolicy uniform_joint_policy(const Game& game, Population population) {
  std::vector<TabularPolicy> policies;
  for (int p = 0; p < game.num_players(); ++p) {
    policies.push_back(uniform_policy(game, p, population));
  }
  return JointPolicy(std::move(policies));
}

PolicyDiagnostics validate(const TabularPolicy& policy) {
  PolicyDiagnostics diag;
  for (const auto& [key, dist] : policy.sorted_entries()) {
    const double violation = simplex_violation(*dist);
    InfoStateKey k{policy.player(), key};
    if (violation > diag.max_violation || (!std::isfinite(violation) && diag.ok)) {
      diag.max_violation = violation;
      diag.worst_key_hex = k.hex();
    }
    if (!(violation <= kSimplexTolerance)) {
      diag.ok = false;
      diag.errors.push_back("player " + std::to_string(policy.player()) + " key " + k.hex() +
                            ": simplex violation " + format_double(violation));
    }
  }
  return diag;
}

PolicyDiagnostics validate(const JointPolicy& policy) {
  PolicyDiagnostics total;
  for (int p = 0; p < policy.num_players(); ++p) {
    auto diag = validate(policy[p]);
    if (diag.max_violation > total.max_violation) {
      total.max_violation = diag.max_violation;
      total.worst_key_hex = diag.worst_key_hex;
    }
    total.ok = total.ok && diag.ok;
    total.errors.insert(total.errors.end(), diag.errors.begin(), diag.errors.end());
  }
  return total;
}

TabularPolicy interior_mix(const TabularPolicy& policy, double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) {
    throw InvalidArgument("interior_mix: eps must be in [0, 1], got " + format_double(eps));
  }
  TabularPolicy mixed(policy.player());
  for (const auto& [key, dist] : policy.sorted_entries()) {
    std::vector<double> out(*dist);
    if (eps > 0.0) {
      const double share = eps / static_cast<double>(out.size());
      for (double& p : out) p = (1.0 - eps) * p + share;
    }
    mixed.set_unchecked(key, std::move(out));
  }
  return mixed;
}

JointPolicy interior_mix(const JointPolicy& policy, double eps) {
  std::vector<TabularPolicy> out;
  for (int p = 0; p < policy.num_players(); ++p) out.push_back(interior_mix(policy[p], eps));
  return JointPolicy(std::move(out));
}

void write_policy(std::ostream& out, const JointPolicy& policy) {
  for (int p = 0; p < policy.num_players(); ++p) {
    for (const auto& [key, dist] : policy[p].sorted_entries()) {
      out << p << '\t' << InfoStateKey{p, key}.hex() << '\t';
      for (std::size_t a = 0; a < dist->size(); ++a) {
        if (a > 0) out << ',';
        out << format_double((*dist)[a]);
      }
      out << '\n';
    }
  }
}

JointPolicy read_policy(std::istream& in, int num_players) {
  JointPolicy policy(num_players);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto tab1 = line.find('\t');
    const auto tab2 = tab1 == std::string::npos ? tab1 : line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos) {
      throw InvalidArgument("policy line " + std::to_string(line_no) + ": expected 3 fields");
    }
    int player = -1;
    try {
      player = std::stoi(line.substr(0, tab1));
    } catch (const std::exception&) {
      throw InvalidArgument("policy line " + std::to_string(line_no) + ": bad player");
    }
    if (player < 0 || player >= num_players) {
      throw InvalidArgument("policy line " + std::to_string(line_no) + ": player " +
                            std::to_string(player) + " out of range");
    }
    auto key = InfoStateKey::from_hex(player, line.substr(tab1 + 1, tab2 - tab1 - 1));
    std::vector<double> dist;
    std::stringstream probs(line.substr(tab2 + 1));
    std::string item;
    while (std::getline(probs, item, ',')) dist.push_back(parse_double(item));
    policy[player].set_unchecked(std::move(key.bytes), std::move(dist));
  }
  auto diag = validate(policy);
  if (!diag.ok) throw InvalidArgument("policy file rejected: " + diag.errors.front());
  return policy;
}

void save_policy(const std::string& path, const JointPolicy& policy) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write policy file '" + path + "'");
  write_policy(out, policy);
}

JointPolicy load_policy(const std::string& path, int num_players) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read policy file '" + path + "'");
  return read_policy(in, num_players);
}

}  // namespace ue
