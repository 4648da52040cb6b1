#include "ue/harness/experiments.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <ostream>
#include <set>
#include <thread>

#include "ue/errors.h"
#include "ue/format.h"
#include "ue/harness/agents.h"
#include "ue/last_iterate.h"
#include "ue/simd/kernels.h"

namespace ue::harness {

namespace {

constexpr long kMaxIterations = 100'000'000;
constexpr std::uint64_t kBootstrapStream = 0xb0075ull;

Variant variant_from(const ExperimentConfig& config) {
  try {
    return parse_variant(config.get_string("variant", "standard"));
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(std::string("variant: ") + e.what());
  }
}

Objective objective_from(const ExperimentConfig& config) {
  try {
    return parse_objective(config.get_string("objective", "plain"));
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(std::string("objective: ") + e.what());
  }
}

Schedule schedule_override(const ExperimentConfig& config, Schedule schedule) {
  if (config.has("schedule")) {
    try {
      schedule = parse_schedule(config.get_string("schedule", ""));
    } catch (const InvalidArgument& e) {
      throw InvalidArgument(std::string("schedule: ") + e.what());
    }
  }
  if (auto eta = config.find_double("eta")) schedule.eta = ScheduleTerm{*eta, 1.0, false};
  if (auto alpha = config.find_double("alpha")) schedule.alpha = ScheduleTerm{*alpha, 1.0, false};
  if (!(schedule.eta.c > 0.0)) throw InvalidArgument("eta: must be positive");
  if (!(schedule.alpha.c >= 0.0)) throw InvalidArgument("alpha: must be nonnegative");
  return schedule;
}

void finish(const ExperimentConfig& config, std::ostream& out) { out << metadata_line(config) << '\n'; }

void write_run(const ExperimentConfig& config, const GameTree& tree, const RunResult& result,
               std::ostream& out) {
  result.log.write_csv(out);
  finish(config, out);
  if (config.has("policy_out")) {
    save_policy(config.get_string("policy_out", ""), from_flat(tree, result.policy));
  }
}

void run_mmd_experiment(const ExperimentConfig& config, std::ostream& out, bool annealed) {
  config.seed();
  const auto game = make_game(config);
  require_two_player_zero_sum(*game, config.command());
  const Variant variant = variant_from(config);
  MmdConfig mc;
  mc.variant = variant;
  mc.objective = objective_from(config);
  Schedule base = Schedule::constant(0.01, 0.1);
  if (annealed) {
    if (!config.has("schedule")) {
      try {
        base = annealing_schedule(game->name(), variant, mc.objective);
      } catch (const InvalidArgument&) {
        throw InvalidArgument("schedule: no default annealing schedule for " + game->name() +
                              "; pass --schedule");
      }
    }
  } else {
    base = aqre_schedule(game->name(), variant);
  }
  mc.schedule = schedule_override(config, base);
  const long iters = config.get_long("iters", 10'000, 0, kMaxIterations);
  const auto tree = GameTree::build(game);
  write_run(config, tree, run_mmd(tree, uniform_flat(tree), mc, iters), out);
}

std::vector<double> play_games(const ExperimentConfig& config, const std::shared_ptr<const Game>& game,
                               const AgentFactory& a, const AgentFactory& b, long games) {
  const std::uint64_t seed = config.seed();
  const long workers = config.get_long("workers", 1, 1, 256);
  std::vector<double> returns(static_cast<std::size_t>(games));
  std::exception_ptr failure;
  const auto play = [&](long g) {
    RngStream rng = RngStream(seed, 0).fork(static_cast<std::uint64_t>(g));
    const int seat_a = static_cast<int>(g % 2);
    auto agent_a = a.make();
    auto agent_b = b.make();
    agent_a->start(seat_a);
    agent_b->start(1 - seat_a);
    auto state = game->new_initial_state();
    std::vector<ChanceOutcome> outcomes;
    std::vector<double> weights;
    while (!state->is_terminal()) {
      if (state->is_chance_node()) {
        state->chance_outcomes(outcomes);
        weights.resize(outcomes.size());
        for (std::size_t i = 0; i < outcomes.size(); ++i) weights[i] = outcomes[i].probability;
        state->apply_action(outcomes[rng.discrete(weights)].action);
        continue;
      }
      agent_a->observe(*state);
      agent_b->observe(*state);
      auto& mover = state->current_player() == seat_a ? agent_a : agent_b;
      state->apply_action(mover->act(*state, rng));
    }
    agent_a->observe(*state);
    agent_b->observe(*state);
    returns[static_cast<std::size_t>(g)] = state->utility(seat_a);
  };
  if (workers == 1) {
    for (long g = 0; g < games; ++g) play(g);
    return returns;
  }
  std::vector<std::thread> pool;
  std::mutex mu;
  for (long w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (long g = w; g < games; g += workers) {
        try {
          play(g);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return returns;
}

}  // namespace

void run_convergence(const ExperimentConfig& config, std::ostream& out) {
  run_mmd_experiment(config, out, false);
}

void run_annealed(const ExperimentConfig& config, std::ostream& out) {
  run_mmd_experiment(config, out, true);
}

MatchReport play_match(const ExperimentConfig& config) {
  MatchReport report;
  report.seed = config.seed();
  const auto game = make_game(config);
  report.games = config.get_long("games", 10'000, 1, 100'000'000);
  const AgentFactory a(config.require_string("agent_a"), game, config);
  const AgentFactory b(config.require_string("agent_b"), game, config);
  report.returns = play_games(config, game, a, b, report.games);
  RngStream boot(report.seed, kBootstrapStream);
  report.mean = sample_mean(report.returns);
  report.ci = bootstrap_ci(report.returns, kBootstrapResamples, 0.95, boot);
  for (int s = 0; s < 2; ++s) {
    std::vector<double> seat;
    for (std::size_t g = static_cast<std::size_t>(s); g < report.returns.size(); g += 2) {
      seat.push_back(report.returns[g]);
    }
    report.seat_games[static_cast<std::size_t>(s)] = static_cast<long>(seat.size());
    if (seat.empty()) {
      report.seat_mean[static_cast<std::size_t>(s)] = std::numeric_limits<double>::quiet_NaN();
      report.seat_ci[static_cast<std::size_t>(s)] = {report.seat_mean[static_cast<std::size_t>(s)],
                                                     report.seat_mean[static_cast<std::size_t>(s)]};
      continue;
    }
    report.seat_mean[static_cast<std::size_t>(s)] = sample_mean(seat);
    report.seat_ci[static_cast<std::size_t>(s)] =
        bootstrap_ci(seat, kBootstrapResamples, 0.95, boot);
  }
  return report;
}

void run_match(const ExperimentConfig& config, std::ostream& out) {
  const auto report = play_match(config);
  out << "subject,mean,ci_lower,ci_upper,games\n";
  out << "agent_a," << format_double(report.mean) << ',' << format_double(report.ci.lower) << ','
      << format_double(report.ci.upper) << ',' << report.games << '\n';
  for (int s = 0; s < 2; ++s) {
    const auto i = static_cast<std::size_t>(s);
    out << "agent_a_seat" << s << ',' << format_double(report.seat_mean[i]) << ','
        << format_double(report.seat_ci[i].lower) << ',' << format_double(report.seat_ci[i].upper)
        << ',' << report.seat_games[i] << '\n';
  }
  finish(config, out);
}

void run_stepsize_sweep(const ExperimentConfig& config, std::ostream& out) {
  const std::uint64_t seed = config.seed();
  const auto game = make_game(config);
  if (game->utility_kind() != UtilityKind::kCommonPayoff) {
    throw InvalidArgument("game: the stepsize sweep needs a common-payoff game, got " +
                          game->description());
  }
  const auto etas = config.get_double_list("etas");
  if (etas.empty()) throw InvalidArgument("etas: the stepsize grid is empty");
  std::set<double> seen;
  for (double eta : etas) {
    if (!(eta > 0.0)) throw InvalidArgument("etas: stepsizes must be positive");
    if (!seen.insert(eta).second) {
      throw InvalidArgument("etas: duplicate stepsize " + format_double(eta));
    }
  }
  const long games = config.get_long("games", 1000, 1, 100'000'000);
  const std::string algo = config.get_string("algo", "mds");
  const SearchKind kind = parse_search_kind(algo);
  out << "eta,mean,ci_lower,ci_upper,games\n";
  for (double eta : etas) {
    ExperimentConfig row = config;
    row.set("eta", format_double(eta));
    if (!row.has("selection")) row.set("selection", "sample");
    const std::string spec = "uniform+" + std::string(search_kind_name(kind));
    const AgentFactory agent(spec, game, row);
    const auto returns = play_games(row, game, agent, agent, games);
    RngStream boot(seed, kBootstrapStream);
    const auto ci = bootstrap_ci(returns, kBootstrapResamples, 0.95, boot);
    out << format_double(eta) << ',' << format_double(sample_mean(returns)) << ','
        << format_double(ci.lower) << ',' << format_double(ci.upper) << ',' << games << '\n';
  }
  finish(config, out);
}

void run_exploitability_eval(const ExperimentConfig& config, std::ostream& out) {
  config.seed();
  const auto game = make_game(config);
  const auto tree = GameTree::build(game);
  out << "policy,exploitability,j0,j1\n";
  const auto row = [&](const std::string& label, const FlatPolicy& pi) {
    const auto j = expected_return(tree, pi);
    out << label << ',' << format_double(nash_conv_mean(tree, pi)) << ',' << format_double(j[0])
        << ',' << format_double(tree.num_players() > 1 ? j[1] : 0.0) << '\n';
  };
  if (config.has("policy")) {
    row("policy", to_flat(tree, load_policy(config.get_string("policy", ""), game->num_players())));
  } else {
    const double eta = config.get_double("eta", 50.0);
    const double alpha = config.get_double("alpha", 0.01);
    if (!(eta > 0.0)) throw InvalidArgument("eta: must be positive");
    if (!(alpha >= 0.0)) throw InvalidArgument("alpha: must be nonnegative");
    const auto uniform = uniform_flat(tree);
    row("uniform", uniform);
    const auto fb = standard_feedback(tree, uniform);
    FlatPolicy pi_step(uniform);
    for (int id = 0; id < static_cast<int>(tree.infosets().size()); ++id) {
      if (!(fb.weight[static_cast<std::size_t>(id)] > 0.0)) continue;
      const auto best = pi_update(slice(tree, std::span<const double>(uniform), id),
                                  slice(tree, std::span<const double>(fb.q), id));
      std::copy(best.begin(), best.end(), slice(tree, std::span<double>(pi_step), id).begin());
    }
    row("mcs_step", pi_step);
    row("mds_step", md_step(tree, uniform, eta));
    MmdConfig mc;
    const auto logrho = magnet_logs(tree, {});
    row("mmds_step", mmd_iteration(tree, uniform, mc, logrho, eta, alpha));
  }
  finish(config, out);
}

}  // namespace ue::harness
