#include "ue/exact_solver.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ue/errors.h"
#include "ue/format.h"

namespace ue {

namespace {

std::size_t idx(int n) { return static_cast<std::size_t>(n); }

bool has_shaping(const EntropyShaping& shaping) {
  for (const auto& row : shaping) {
    for (double c : row) {
      if (c != 0.0) return true;
    }
  }
  return false;
}

std::vector<double> infoset_entropies(const GameTree& tree, std::span<const double> pi) {
  std::vector<double> h(tree.infosets().size());
  for (std::size_t id = 0; id < h.size(); ++id) h[id] = entropy(slice(tree, pi, static_cast<int>(id)));
  return h;
}

void require_interior(std::span<const double> pi, std::string_view what) {
  if (!(min_probability(pi) > 0.0)) {
    throw InvalidArgument(std::string(what) + " requires a fully supported policy");
  }
}

void require_temperature(double alpha, std::string_view what) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InvalidArgument(std::string(what) + " requires alpha > 0, got " + format_double(alpha));
  }
}

void check_flat(const GameTree& tree, std::span<const double> pi) {
  if (pi.size() != tree.policy_size()) {
    throw InvalidArgument("flat policy has " + std::to_string(pi.size()) + " slots, tree needs " +
                          std::to_string(tree.policy_size()));
  }
}

}  // namespace

FlatPolicy to_flat(const GameTree& tree, const JointPolicy& policy) {
  if (policy.num_players() != tree.num_players()) {
    throw InvalidArgument("joint policy has " + std::to_string(policy.num_players()) +
                          " players, game has " + std::to_string(tree.num_players()));
  }
  FlatPolicy flat(tree.policy_size());
  for (const auto& info : tree.infosets()) {
    const auto dist = policy[info.player()].action_distribution(info.key, info.num_actions());
    if (static_cast<int>(dist.size()) != info.num_actions()) {
      throw InvalidArgument("policy at key " + info.key.hex() + " has " +
                            std::to_string(dist.size()) + " entries, expected " +
                            std::to_string(info.num_actions()));
    }
    std::copy(dist.begin(), dist.end(), flat.begin() + static_cast<std::ptrdiff_t>(info.offset));
  }
  return flat;
}

JointPolicy from_flat(const GameTree& tree, std::span<const double> flat) {
  check_flat(tree, flat);
  JointPolicy policy(tree.num_players());
  for (int id = 0; id < static_cast<int>(tree.infosets().size()); ++id) {
    const auto& info = tree.infoset_at(id);
    const auto s = slice(tree, flat, id);
    policy[info.player()].set_unchecked(info.key.bytes, std::vector<double>(s.begin(), s.end()));
  }
  return policy;
}

FlatPolicy uniform_flat(const GameTree& tree) {
  FlatPolicy flat(tree.policy_size());
  for (const auto& info : tree.infosets()) {
    const double p = 1.0 / info.num_actions();
    std::fill_n(flat.begin() + static_cast<std::ptrdiff_t>(info.offset), info.num_actions(), p);
  }
  return flat;
}

std::span<const double> slice(const GameTree& tree, std::span<const double> flat, int infoset) {
  const auto& info = tree.infoset_at(infoset);
  return flat.subspan(info.offset, static_cast<std::size_t>(info.num_actions()));
}

std::span<double> slice(const GameTree& tree, std::span<double> flat, int infoset) {
  const auto& info = tree.infoset_at(infoset);
  return flat.subspan(info.offset, static_cast<std::size_t>(info.num_actions()));
}

double min_probability(std::span<const double> flat) {
  double m = std::numeric_limits<double>::infinity();
  for (double p : flat) m = std::min(m, p);
  return m;
}

EntropyShaping minimaxent_shaping(double alpha) {
  EntropyShaping s{};
  for (int p = 0; p < kMaxPlayers; ++p) {
    for (int q = 0; q < kMaxPlayers; ++q) s[idx(p)][idx(q)] = p == q ? alpha : -alpha;
  }
  return s;
}

double entropy(std::span<const double> dist) {
  double h = 0.0;
  for (double p : dist) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

double Reach::counterfactual(int i, int n) const {
  double w = chance[idx(n)];
  for (int p = 0; p < kMaxPlayers; ++p) {
    if (p != i) w *= player[idx(p)][idx(n)];
  }
  return w;
}

double Reach::total(int n) const {
  double w = chance[idx(n)];
  for (int p = 0; p < kMaxPlayers; ++p) w *= player[idx(p)][idx(n)];
  return w;
}

Reach compute_reach(const GameTree& tree, std::span<const double> pi) {
  check_flat(tree, pi);
  const int num_nodes = static_cast<int>(tree.num_nodes());
  Reach r;
  r.chance.assign(idx(num_nodes), 1.0);
  for (auto& v : r.player) v.assign(idx(num_nodes), 1.0);
  for (int n = 1; n < num_nodes; ++n) {
    const int up = tree.parent(n);
    r.chance[idx(n)] = r.chance[idx(up)];
    for (int p = 0; p < kMaxPlayers; ++p) r.player[idx(p)][idx(n)] = r.player[idx(p)][idx(up)];
    if (tree.kind(up) == NodeKind::kChance) {
      r.chance[idx(n)] *= tree.chance_prob(n);
    } else {
      const auto& info = tree.infoset_at(tree.infoset(up));
      r.player[idx(tree.player(up))][idx(n)] *= pi[info.offset + idx(tree.child_index(n))];
    }
  }
  return r;
}

NodeValues compute_values(const GameTree& tree, std::span<const double> pi,
                          const EntropyShaping& shaping) {
  check_flat(tree, pi);
  const int num_nodes = static_cast<int>(tree.num_nodes());
  const int np = tree.num_players();
  const bool shaped = has_shaping(shaping);
  const auto h = shaped ? infoset_entropies(tree, pi) : std::vector<double>{};
  NodeValues out;
  for (auto& v : out.v) v.assign(idx(num_nodes), 0.0);
  for (int n = num_nodes - 1; n >= 0; --n) {
    switch (tree.kind(n)) {
      case NodeKind::kTerminal:
        for (int p = 0; p < np; ++p) out.v[idx(p)][idx(n)] = tree.utility(n, p);
        break;
      case NodeKind::kChance: {
        const int first = tree.first_child(n);
        const int k = tree.num_children(n);
        for (int p = 0; p < np; ++p) {
          double acc = 0.0;
          for (int c = first; c < first + k; ++c) acc += tree.chance_prob(c) * out.v[idx(p)][idx(c)];
          out.v[idx(p)][idx(n)] = acc;
        }
        break;
      }
      case NodeKind::kDecision: {
        const int id = tree.infoset(n);
        const auto dist = slice(tree, pi, id);
        const int first = tree.first_child(n);
        const int mover = tree.player(n);
        for (int p = 0; p < np; ++p) {
          double acc = 0.0;
          for (std::size_t a = 0; a < dist.size(); ++a) {
            acc += dist[a] * out.v[idx(p)][idx(first) + a];
          }
          if (shaped) acc += shaping[idx(p)][idx(mover)] * h[idx(id)];
          out.v[idx(p)][idx(n)] = acc;
        }
        break;
      }
    }
  }
  return out;
}

void infoset_q_into(const GameTree& tree, const Reach& reach, const NodeValues& values,
                    int player, InfosetQ& out) {
  out.q.assign(tree.policy_size(), 0.0);
  out.weight.assign(tree.infosets().size(), 0.0);
  const auto& v = values.v[idx(player)];
  for (int id : tree.infosets_deepest_first(player)) {
    const auto& info = tree.infoset_at(id);
    double total = 0.0;
    double* q = out.q.data() + info.offset;
    for (int n : info.nodes) {
      const double w = reach.counterfactual(player, n);
      if (w == 0.0) continue;
      total += w;
      const int first = tree.first_child(n);
      for (int a = 0; a < info.num_actions(); ++a) q[a] += w * v[idx(first + a)];
    }
    out.weight[idx(id)] = total;
    if (total > 0.0) {
      for (int a = 0; a < info.num_actions(); ++a) q[a] /= total;
    }
  }
}

InfosetQ infoset_q(const GameTree& tree, std::span<const double> pi, int player,
                   const EntropyShaping& shaping) {
  InfosetQ out;
  infoset_q_into(tree, compute_reach(tree, pi), compute_values(tree, pi, shaping), player, out);
  return out;
}

std::array<double, kMaxPlayers> expected_return(const GameTree& tree, std::span<const double> pi,
                                                const EntropyShaping& shaping) {
  const auto values = compute_values(tree, pi, shaping);
  std::array<double, kMaxPlayers> out{};
  for (int p = 0; p < tree.num_players(); ++p) out[idx(p)] = values.at(0, p);
  return out;
}

std::array<double, kMaxPlayers> expected_return(const GameTree& tree, const JointPolicy& policy) {
  return expected_return(tree, to_flat(tree, policy));
}

ValueTable history_values(const GameTree& tree, const JointPolicy& policy) {
  const auto flat = to_flat(tree, policy);
  const auto reach = compute_reach(tree, flat);
  auto values = compute_values(tree, flat);
  ValueTable table;
  for (int p = 0; p < tree.num_players(); ++p) {
    InfosetQ q;
    infoset_q_into(tree, reach, values, p, q);
    for (int id : tree.infosets_deepest_first(p)) {
      const auto s = slice(tree, std::span<const double>(q.q), id);
      table.q.emplace(tree.infoset_at(id).key, std::vector<double>(s.begin(), s.end()));
    }
  }
  table.history_value = std::move(values.v);
  return table;
}

std::unordered_map<InfoStateKey, std::vector<double>, InfoStateKeyHash> infostate_q(
    const GameTree& tree, const JointPolicy& policy, int player) {
  const auto q = infoset_q(tree, to_flat(tree, policy), player);
  std::unordered_map<InfoStateKey, std::vector<double>, InfoStateKeyHash> out;
  for (int id : tree.infosets_deepest_first(player)) {
    const auto s = slice(tree, std::span<const double>(q.q), id);
    out.emplace(tree.infoset_at(id).key, std::vector<double>(s.begin(), s.end()));
  }
  return out;
}

Posterior posterior(const GameTree& tree, std::span<const double> pi, const InfoStateKey& key) {
  const auto id = tree.find_infoset(key);
  if (!id) throw UnknownInfoState("information state " + key.hex() + " does not occur in " +
                                  tree.game().description());
  const auto reach = compute_reach(tree, pi);
  Posterior post;
  post.key = key;
  double total = 0.0;
  for (int n : tree.infoset_at(*id).nodes) {
    const double w = reach.counterfactual(key.player, n);
    if (w <= 0.0) continue;
    post.entries.push_back({n, w});
    total += w;
  }
  if (!(total > 0.0)) {
    throw UnreachableInfoState("information state " + key.hex() +
                               " has zero probability under chance and the other players");
  }
  for (auto& e : post.entries) e.probability /= total;
  return post;
}

Posterior posterior(const GameTree& tree, const JointPolicy& policy, const InfoStateKey& key) {
  return posterior(tree, to_flat(tree, policy), key);
}

namespace {

class Responder {
 public:
  Responder(const GameTree& tree, std::span<const double> pi, int player,
            const EntropyShaping& shaping)
      : tree_(tree),
        player_(player),
        shaping_(shaping),
        shaped_(has_shaping(shaping)),
        sigma_(pi.begin(), pi.end()),
        entropy_(shaped_ ? infoset_entropies(tree, pi) : std::vector<double>{}),
        value_(tree.num_nodes(), 0.0),
        done_(tree.num_nodes(), 0) {}

  FlatPolicy& sigma() { return sigma_; }

  void resolved(int id) {
    if (shaped_) entropy_[idx(id)] = entropy(slice(tree_, std::span<const double>(sigma_), id));
  }

  double eval(int n) {
    if (done_[idx(n)]) return value_[idx(n)];
    double acc = 0.0;
    switch (tree_.kind(n)) {
      case NodeKind::kTerminal:
        acc = tree_.utility(n, player_);
        break;
      case NodeKind::kChance: {
        const int first = tree_.first_child(n);
        for (int c = first; c < first + tree_.num_children(n); ++c) {
          acc += tree_.chance_prob(c) * eval(c);
        }
        break;
      }
      case NodeKind::kDecision: {
        const int id = tree_.infoset(n);
        const auto& info = tree_.infoset_at(id);
        const int first = tree_.first_child(n);
        for (int a = 0; a < info.num_actions(); ++a) {
          acc += sigma_[info.offset + idx(a)] * eval(first + a);
        }
        if (shaped_) acc += shaping_[idx(player_)][idx(tree_.player(n))] * entropy_[idx(id)];
        break;
      }
    }
    done_[idx(n)] = 1;
    value_[idx(n)] = acc;
    return acc;
  }

 private:
  const GameTree& tree_;
  int player_;
  EntropyShaping shaping_;
  bool shaped_;
  FlatPolicy sigma_;
  std::vector<double> entropy_;
  std::vector<double> value_;
  std::vector<char> done_;
};

}  // namespace

ResponseResult respond(const GameTree& tree, std::span<const double> pi, int player,
                       const LocalResponse& response, const EntropyShaping& shaping) {
  check_flat(tree, pi);
  const auto reach = compute_reach(tree, pi);
  Responder r(tree, pi, player, shaping);
  std::vector<double> q;
  std::vector<double> out;
  for (int id : tree.infosets_deepest_first(player)) {
    const auto& info = tree.infoset_at(id);
    const auto k = static_cast<std::size_t>(info.num_actions());
    q.assign(k, 0.0);
    double total = 0.0;
    for (int n : info.nodes) {
      const double w = reach.counterfactual(player, n);
      if (w == 0.0) continue;
      total += w;
      const int first = tree.first_child(n);
      for (std::size_t a = 0; a < k; ++a) q[a] += w * r.eval(first + static_cast<int>(a));
    }
    if (!(total > 0.0)) continue;
    for (double& v : q) v /= total;
    auto dst = slice(tree, std::span<double>(r.sigma()), id);
    out.assign(k, 0.0);
    response(id, std::span<const double>(dst), q, out);
    std::copy(out.begin(), out.end(), dst.begin());
    r.resolved(id);
  }
  ResponseResult result;
  result.value = r.eval(0);
  result.policy = std::move(r.sigma());
  return result;
}

ResponseResult best_response(const GameTree& tree, std::span<const double> pi, int player) {
  return respond(tree, pi, player,
                 [](int, std::span<const double>, std::span<const double> q, std::span<double> out) {
                   std::size_t best = 0;
                   for (std::size_t a = 1; a < q.size(); ++a) {
                     if (q[a] > q[best]) best = a;
                   }
                   std::fill(out.begin(), out.end(), 0.0);
                   out[best] = 1.0;
                 });
}

ResponseResult soft_best_response(const GameTree& tree, std::span<const double> pi, int player,
                                  const EntropyShaping& shaping) {
  const double alpha = shaping[idx(player)][idx(player)];
  require_temperature(alpha, "soft best response");
  return respond(
      tree, pi, player,
      [alpha](int, std::span<const double>, std::span<const double> q, std::span<double> out) {
        double top = -std::numeric_limits<double>::infinity();
        for (double v : q) top = std::max(top, v);
        double total = 0.0;
        for (std::size_t a = 0; a < q.size(); ++a) {
          out[a] = std::exp((q[a] - top) / alpha);
          total += out[a];
        }
        for (double& v : out) v /= total;
      },
      shaping);
}

BestResponse best_response(const GameTree& tree, const JointPolicy& policy, int player) {
  const auto result = best_response(tree, to_flat(tree, policy), player);
  TabularPolicy br(player);
  for (int id : tree.infosets_deepest_first(player)) {
    const auto s = slice(tree, std::span<const double>(result.policy), id);
    br.set_unchecked(tree.infoset_at(id).key.bytes, std::vector<double>(s.begin(), s.end()));
  }
  return {std::move(br), result.value};
}

void require_two_player_zero_sum(const Game& game, std::string_view what) {
  if (game.num_players() != 2 || game.utility_kind() != UtilityKind::kZeroSum) {
    throw InvalidArgument(std::string(what) + " requires a two-player zero-sum game, got " +
                          game.description());
  }
}

double exploitability(const GameTree& tree, std::span<const double> pi) {
  require_two_player_zero_sum(tree.game(), "exploitability");
  return 0.5 * (best_response(tree, pi, 0).value + best_response(tree, pi, 1).value);
}

double exploitability(const GameTree& tree, const JointPolicy& policy) {
  return exploitability(tree, to_flat(tree, policy));
}

double nash_conv_mean(const GameTree& tree, std::span<const double> pi) {
  const auto j = expected_return(tree, pi);
  double total = 0.0;
  for (int p = 0; p < tree.num_players(); ++p) {
    total += best_response(tree, pi, p).value - j[idx(p)];
  }
  return total / tree.num_players();
}

double aqre_gap_sum(const GameTree& tree, std::span<const double> pi, double alpha) {
  require_temperature(alpha, "aqre_gap");
  check_flat(tree, pi);
  require_interior(pi, "aqre_gap");
  const auto reach = compute_reach(tree, pi);
  const auto values = compute_values(tree, pi);
  double gap = 0.0;
  InfosetQ q;
  std::vector<double> scaled;
  for (int p = 0; p < tree.num_players(); ++p) {
    infoset_q_into(tree, reach, values, p, q);
    for (int id : tree.infosets_deepest_first(p)) {
      const auto& info = tree.infoset_at(id);
      double prob = 0.0;
      for (int n : info.nodes) prob += reach.total(n);
      if (!(prob > 0.0)) continue;
      const auto dist = slice(tree, pi, id);
      const auto qs = slice(tree, std::span<const double>(q.q), id);
      scaled.resize(qs.size());
      double top = -std::numeric_limits<double>::infinity();
      for (std::size_t a = 0; a < qs.size(); ++a) {
        scaled[a] = qs[a] / alpha;
        top = std::max(top, scaled[a]);
      }
      double total = 0.0;
      for (double s : scaled) total += std::exp(s - top);
      const double lse = top + std::log(total);
      double kl = 0.0;
      for (std::size_t a = 0; a < dist.size(); ++a) {
        kl += dist[a] * (std::log(dist[a]) - (scaled[a] - lse));
      }
      gap += prob * alpha * std::max(kl, 0.0);
    }
  }
  return gap;
}

double aqre_gap(const GameTree& tree, std::span<const double> pi, double alpha) {
  return aqre_gap_sum(tree, pi, alpha) / tree.num_players();
}

double minimaxent_gap_sum(const GameTree& tree, std::span<const double> pi, double alpha) {
  require_temperature(alpha, "minimaxent_gap");
  check_flat(tree, pi);
  require_interior(pi, "minimaxent_gap");
  const auto shaping = minimaxent_shaping(alpha);
  const auto j = expected_return(tree, pi, shaping);
  double gap = 0.0;
  for (int p = 0; p < tree.num_players(); ++p) {
    gap += soft_best_response(tree, pi, p, shaping).value - j[idx(p)];
  }
  return gap;
}

double minimaxent_gap(const GameTree& tree, std::span<const double> pi, double alpha) {
  return minimaxent_gap_sum(tree, pi, alpha) / tree.num_players();
}

}  // namespace ue
