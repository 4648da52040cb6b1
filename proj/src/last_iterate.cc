#include "ue/last_iterate.h"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "ue/errors.h"
#include "ue/format.h"
#include "ue/simd/kernels.h"

namespace ue {

namespace {

std::size_t idx(int n) { return static_cast<std::size_t>(n); }

// Single-infoset MMD step performing the same operations as mmd_update_flat.
void mmd_local(std::span<const double> pi, std::span<const double> q,
               std::span<const double> logrho, double eta, double alpha, std::span<double> out) {
  log_into(pi, out);
  simd::active().mmd_logits(out.size(), out.data(), q.data(), logrho.data(), eta, alpha,
                            out.data());
  normalize_logits(out);
}

double linf(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

EntropyShaping shaping_for(Objective objective, double alpha) {
  return objective == Objective::kMiniMaxEnt ? minimaxent_shaping(alpha) : kNoShaping;
}

void require_step(double eta, double alpha) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw InvalidArgument("stepsize eta must be positive, got " + format_double(eta));
  }
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw InvalidArgument("temperature alpha must be nonnegative, got " + format_double(alpha));
  }
}

// q for `player` using weights from `reach_policy` and continuation values `values`.
void merge_player_q(const GameTree& tree, const Reach& reach, const NodeValues& values,
                    InfosetQ& merged, InfosetQ& scratch) {
  for (int p = 0; p < tree.num_players(); ++p) {
    infoset_q_into(tree, reach, values, p, scratch);
    for (int id : tree.infosets_deepest_first(p)) {
      const auto& info = tree.infoset_at(id);
      std::copy_n(scratch.q.begin() + static_cast<std::ptrdiff_t>(info.offset),
                  info.num_actions(),
                  merged.q.begin() + static_cast<std::ptrdiff_t>(info.offset));
      merged.weight[idx(id)] = scratch.weight[idx(id)];
    }
  }
}

InfosetQ empty_feedback(const GameTree& tree) {
  InfosetQ q;
  q.q.assign(tree.policy_size(), 0.0);
  q.weight.assign(tree.infosets().size(), 0.0);
  return q;
}

// q_i(h, a) = f_i(child) where f_i replaces the first opponent decision after
// player i by the opponent's updated policy `updated`, and continues with the
// values of the current policy below it.
InfosetQ opponent_feedback(const GameTree& tree, std::span<const double> pi,
                           std::span<const double> updated, const EntropyShaping& shaping) {
  const auto reach = compute_reach(tree, pi);
  const auto values = compute_values(tree, pi, shaping);
  std::vector<double> h(tree.infosets().size());
  for (std::size_t id = 0; id < h.size(); ++id) h[id] = entropy(slice(tree, updated, static_cast<int>(id)));
  InfosetQ out = empty_feedback(tree);
  const int num_nodes = static_cast<int>(tree.num_nodes());
  std::vector<double> f(idx(num_nodes));
  for (int i = 0; i < tree.num_players(); ++i) {
    const auto& v = values.v[idx(i)];
    for (int n = num_nodes - 1; n >= 0; --n) {
      switch (tree.kind(n)) {
        case NodeKind::kTerminal:
          f[idx(n)] = tree.utility(n, i);
          break;
        case NodeKind::kChance: {
          double acc = 0.0;
          const int first = tree.first_child(n);
          for (int c = first; c < first + tree.num_children(n); ++c) {
            acc += tree.chance_prob(c) * f[idx(c)];
          }
          f[idx(n)] = acc;
          break;
        }
        case NodeKind::kDecision: {
          const int mover = tree.player(n);
          if (mover == i) {
            f[idx(n)] = v[idx(n)];
            break;
          }
          const int id = tree.infoset(n);
          const auto dist = slice(tree, updated, id);
          const int first = tree.first_child(n);
          double acc = 0.0;
          for (std::size_t a = 0; a < dist.size(); ++a) acc += dist[a] * v[idx(first) + a];
          acc += shaping[idx(i)][idx(mover)] * h[idx(id)];
          f[idx(n)] = acc;
          break;
        }
      }
    }
    for (int id : tree.infosets_deepest_first(i)) {
      const auto& info = tree.infoset_at(id);
      double total = 0.0;
      double* q = out.q.data() + info.offset;
      for (int n : info.nodes) {
        const double w = reach.counterfactual(i, n);
        if (w == 0.0) continue;
        total += w;
        const int first = tree.first_child(n);
        for (int a = 0; a < info.num_actions(); ++a) q[a] += w * f[idx(first + a)];
      }
      out.weight[idx(id)] = total;
      if (total > 0.0) {
        for (int a = 0; a < info.num_actions(); ++a) q[a] /= total;
      }
    }
  }
  return out;
}

}  // namespace

std::string_view variant_name(Variant variant) {
  switch (variant) {
    case Variant::kStandard:
      return "standard";
    case Variant::kSubgame:
      return "subgame";
    case Variant::kBft:
      return "bft";
    case Variant::kOpponent:
      return "opponent";
  }
  return "?";
}

Variant parse_variant(std::string_view name) {
  if (name == "standard") return Variant::kStandard;
  if (name == "subgame" || name == "with_subgame_updates") return Variant::kSubgame;
  if (name == "bft" || name == "with_bft") return Variant::kBft;
  if (name == "opponent" || name == "with_opponent_update") return Variant::kOpponent;
  throw InvalidArgument("unknown variant '" + std::string(name) +
                        "' (expected standard, subgame, bft or opponent)");
}

std::string_view objective_name(Objective objective) {
  return objective == Objective::kPlain ? "plain" : "minimaxent";
}

Objective parse_objective(std::string_view name) {
  if (name == "plain") return Objective::kPlain;
  if (name == "minimaxent") return Objective::kMiniMaxEnt;
  throw InvalidArgument("unknown objective '" + std::string(name) +
                        "' (expected plain or minimaxent)");
}

void IterateLog::write_csv(std::ostream& out) const {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.t << ',' << format_double(r.eta) << ',' << format_double(r.alpha) << ','
        << format_double(r.j0) << ',' << format_double(r.j1) << ','
        << format_double(r.exploitability) << ',' << format_double(r.gap) << ','
        << format_double(r.linf_change) << '\n';
  }
}

std::vector<double> magnet_logs(const GameTree& tree, std::span<const double> magnet) {
  std::vector<double> logs(tree.policy_size());
  if (magnet.empty()) {
    for (const auto& info : tree.infosets()) {
      const double l = std::log(1.0 / info.num_actions());
      std::fill_n(logs.begin() + static_cast<std::ptrdiff_t>(info.offset), info.num_actions(), l);
    }
    return logs;
  }
  if (magnet.size() != tree.policy_size()) {
    throw InvalidArgument("magnet has " + std::to_string(magnet.size()) + " slots, tree needs " +
                          std::to_string(tree.policy_size()));
  }
  for (int id = 0; id < static_cast<int>(tree.infosets().size()); ++id) {
    const auto s = slice(tree, magnet, id);
    for (double r : s) {
      if (!(r > 0.0)) {
        throw InvalidArgument("magnet is not fully supported at key " +
                              tree.infoset_at(id).key.hex());
      }
    }
    if (!(simplex_violation(s) <= kSimplexTolerance)) {
      throw InvalidArgument("magnet is off the simplex at key " + tree.infoset_at(id).key.hex());
    }
  }
  log_into(magnet, logs);
  return logs;
}

void mmd_update_flat(const GameTree& tree, std::span<const double> pi, std::span<const double> q,
                     std::span<const double> weight, std::span<const double> logrho, double eta,
                     double alpha, std::span<double> out) {
  log_into(pi, out);
  simd::active().mmd_logits(out.size(), out.data(), q.data(), logrho.data(), eta, alpha,
                            out.data());
  for (int id = 0; id < static_cast<int>(tree.infosets().size()); ++id) {
    auto dst = slice(tree, out, id);
    if (weight[idx(id)] > 0.0) {
      normalize_logits(dst);
    } else {
      const auto src = slice(tree, pi, id);
      std::copy(src.begin(), src.end(), dst.begin());
    }
  }
}

InfosetQ standard_feedback(const GameTree& tree, std::span<const double> pi,
                           const EntropyShaping& shaping) {
  InfosetQ merged = empty_feedback(tree);
  InfosetQ scratch;
  merge_player_q(tree, compute_reach(tree, pi), compute_values(tree, pi, shaping), merged, scratch);
  return merged;
}

FlatPolicy md_step(const GameTree& tree, std::span<const double> pi, double eta) {
  require_step(eta, 0.0);
  const auto fb = standard_feedback(tree, pi);
  const std::vector<double> zeros(tree.policy_size(), 0.0);
  FlatPolicy next(tree.policy_size());
  mmd_update_flat(tree, pi, fb.q, fb.weight, zeros, eta, 0.0, next);
  return next;
}

MonotoneStep md_step_monotone(const GameTree& tree, std::span<const double> pi, double eta,
                              double tol, int max_halvings) {
  if (tree.game().utility_kind() != UtilityKind::kCommonPayoff) {
    throw InvalidArgument("monotone improvement applies to common-payoff games, got " +
                          tree.game().description());
  }
  MonotoneStep step;
  step.j_before = expected_return(tree, pi)[0];
  step.eta = eta;
  for (;;) {
    step.policy = md_step(tree, pi, step.eta);
    step.j_after = expected_return(tree, step.policy)[0];
    if (step.j_after >= step.j_before - tol) return step;
    if (step.halvings == max_halvings) {
      throw StateError("return decreased after " + std::to_string(max_halvings) +
                       " stepsize halvings");
    }
    ++step.halvings;
    step.eta *= 0.5;
  }
}

RunResult run_md(const GameTree& tree, std::span<const double> pi0, double eta, long iterations) {
  if (tree.game().utility_kind() != UtilityKind::kCommonPayoff) {
    throw InvalidArgument("run_md requires a common-payoff game, got " +
                          tree.game().description());
  }
  if (pi0.size() != tree.policy_size() || !(min_probability(pi0) > 0.0)) {
    throw InvalidArgument("run_md requires a fully supported initial policy");
  }
  if (iterations < 0) throw InvalidArgument("iteration count must be nonnegative");
  require_step(eta, 0.0);
  RunResult result;
  result.policy.assign(pi0.begin(), pi0.end());
  for (long t = 1; t <= iterations; ++t) {
    auto next = md_step(tree, result.policy, eta);
    IterateRecord row;
    row.t = t;
    row.eta = eta;
    const auto j = expected_return(tree, next);
    row.j0 = j[0];
    row.j1 = j[1];
    row.exploitability = nash_conv_mean(tree, next);
    row.linf_change = linf(next, result.policy);
    result.log.rows.push_back(row);
    result.policy = std::move(next);
  }
  return result;
}

FlatPolicy mmd_iteration(const GameTree& tree, std::span<const double> pi, const MmdConfig& config,
                         std::span<const double> logrho, double eta, double alpha) {
  require_step(eta, alpha);
  const auto shaping = shaping_for(config.objective, alpha);
  FlatPolicy next(tree.policy_size());
  switch (config.variant) {
    case Variant::kStandard: {
      const auto fb = standard_feedback(tree, pi, shaping);
      mmd_update_flat(tree, pi, fb.q, fb.weight, logrho, eta, alpha, next);
      break;
    }
    case Variant::kSubgame: {
      const LocalResponse op = [&](int id, std::span<const double> cur, std::span<const double> q,
                                   std::span<double> out) {
        mmd_local(cur, q, slice(tree, logrho, id), eta, alpha, out);
      };
      std::copy(pi.begin(), pi.end(), next.begin());
      for (int p = 0; p < tree.num_players(); ++p) {
        const auto r = respond(tree, pi, p, op, shaping);
        for (int id : tree.infosets_deepest_first(p)) {
          const auto src = slice(tree, std::span<const double>(r.policy), id);
          std::copy(src.begin(), src.end(), slice(tree, std::span<double>(next), id).begin());
        }
      }
      break;
    }
    case Variant::kBft: {
      if (config.bft_passes < 1) throw InvalidArgument("bft_passes must be at least 1");
      const auto values = compute_values(tree, pi, shaping);
      auto fb = standard_feedback(tree, pi, shaping);
      FlatPolicy provisional(tree.policy_size());
      mmd_update_flat(tree, pi, fb.q, fb.weight, logrho, eta, alpha, provisional);
      InfosetQ scratch;
      for (int pass = 0; pass < config.bft_passes; ++pass) {
        fb = empty_feedback(tree);
        merge_player_q(tree, compute_reach(tree, provisional), values, fb, scratch);
        mmd_update_flat(tree, pi, fb.q, fb.weight, logrho, eta, alpha, next);
        provisional = next;
      }
      break;
    }
    case Variant::kOpponent: {
      const auto fb = standard_feedback(tree, pi, shaping);
      FlatPolicy updated(tree.policy_size());
      mmd_update_flat(tree, pi, fb.q, fb.weight, logrho, eta, alpha, updated);
      const auto ofb = opponent_feedback(tree, pi, updated, shaping);
      mmd_update_flat(tree, pi, ofb.q, ofb.weight, logrho, eta, alpha, next);
      break;
    }
  }
  return next;
}

RunResult run_mmd(const GameTree& tree, std::span<const double> pi0, const MmdConfig& config,
                  long iterations) {
  require_two_player_zero_sum(tree.game(), "run_mmd");
  if (iterations < 0) throw InvalidArgument("iteration count must be nonnegative");
  if (pi0.size() != tree.policy_size() || !(min_probability(pi0) > 0.0)) {
    throw InvalidArgument("run_mmd requires a fully supported initial policy");
  }
  const auto logrho = magnet_logs(tree, config.magnet);
  RunResult result;
  result.policy.assign(pi0.begin(), pi0.end());
  for (long t = 1; t <= iterations; ++t) {
    const auto [eta, alpha] = schedule_eval(config.schedule, t);
    auto next = mmd_iteration(tree, result.policy, config, logrho, eta, alpha);
    if (!(min_probability(next) > 0.0)) {
      throw StateError("iterate " + std::to_string(t) + " lost full support");
    }
    IterateRecord row;
    row.t = t;
    row.eta = eta;
    row.alpha = alpha;
    const auto j = expected_return(tree, next);
    row.j0 = j[0];
    row.j1 = j[1];
    if (config.log_metrics) {
      row.exploitability = exploitability(tree, next);
      if (alpha > 0.0) {
        row.gap = config.objective == Objective::kMiniMaxEnt ? minimaxent_gap(tree, next, alpha)
                                                             : aqre_gap(tree, next, alpha);
      }
    }
    row.linf_change = linf(next, result.policy);
    result.log.rows.push_back(row);
    result.policy = std::move(next);
  }
  return result;
}

RunResult run_annealed_nash(const GameTree& tree, std::span<const double> pi0,
                            const Schedule& schedule, long iterations, Variant variant,
                            Objective objective) {
  if (schedule.eta.at(1) <= 0.0 || schedule.alpha.at(1) <= 0.0) {
    throw InvalidArgument("annealing schedule must be positive");
  }
  MmdConfig config;
  config.variant = variant;
  config.objective = objective;
  config.schedule = schedule;
  return run_mmd(tree, pi0, config, iterations);
}

namespace {

ScheduleTerm decay(double c, double k = 1.0) { return ScheduleTerm{c, k, true}; }

}  // namespace

Schedule annealing_schedule(std::string_view game, Variant variant, Objective objective) {
  if (game == "kuhn_poker" || game == "abrupt_dark_hex") return {decay(1.0), decay(1.0)};
  if (game == "liars_dice_4") {
    switch (variant) {
      case Variant::kStandard:
      case Variant::kBft:
        return {decay(2.0), decay(1.0)};
      case Variant::kSubgame:
        return {decay(1.0, 2.0), decay(1.0)};
      case Variant::kOpponent:
        return {decay(1.0), decay(1.0)};
    }
  }
  if (game == "leduc_poker") {
    switch (variant) {
      case Variant::kStandard:
        return {decay(1.0), decay(5.0)};
      case Variant::kSubgame:
        return {decay(1.0, 5.0), decay(5.0)};
      case Variant::kBft:
        return objective == Objective::kMiniMaxEnt ? Schedule{decay(1.0), decay(5.0)}
                                                   : Schedule{decay(1.0, 2.0), decay(5.0)};
      case Variant::kOpponent:
        return {decay(1.0, 2.0), decay(5.0)};
    }
  }
  throw InvalidArgument("no annealing schedule for game '" + std::string(game) + "'");
}

Schedule aqre_schedule(std::string_view game, Variant variant) {
  constexpr double alpha = 0.1;
  double eta = alpha / 10.0;
  if (game == "leduc_poker" && variant == Variant::kOpponent) eta = alpha / 20.0;
  if (game == "leduc_poker" && variant == Variant::kSubgame) eta = alpha / 50.0;
  return Schedule::constant(eta, alpha);
}

}  // namespace ue
