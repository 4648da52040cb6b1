#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <ostream>

#include "ue/errors.h"
#include "ue/format.h"
#include "ue/harness/experiments.h"
#include "ue/last_iterate.h"
#include "ue/simd/kernels.h"

namespace ue::harness {

namespace {

struct Check {
  std::string name;
  bool ok;
  std::string detail;
};

Check check_update_stationarity(RngStream& rng) {
  // The closed form must satisfy the first-order conditions of
  //   max <p, q> - KL(p || pi) / eta - alpha KL(p || rho)
  // i.e. q - (log p - log pi) / eta - alpha (log p - log rho) is constant.
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto k = 2 + rng.uniform_int(4);
    std::vector<double> pi(k), rho(k), q(k);
    double sp = 0.0, sr = 0.0;
    for (std::size_t a = 0; a < k; ++a) {
      pi[a] = 0.05 + rng.uniform();
      rho[a] = 0.05 + rng.uniform();
      q[a] = 2.0 * rng.uniform() - 1.0;
      sp += pi[a];
      sr += rho[a];
    }
    for (std::size_t a = 0; a < k; ++a) {
      pi[a] /= sp;
      rho[a] /= sr;
    }
    const double eta = 0.05 + 2.0 * rng.uniform();
    const double alpha = trial % 5 == 0 ? 0.0 : 2.0 * rng.uniform();
    const auto p = mmd_update(pi, q, rho, eta, alpha);
    double lo = 1e300, hi = -1e300;
    for (std::size_t a = 0; a < k; ++a) {
      const double r = q[a] - (std::log(p[a]) - std::log(pi[a])) / eta -
                       alpha * (std::log(p[a]) - std::log(rho[a]));
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    worst = std::max(worst, hi - lo);
  }
  return {"update_stationarity", worst < 1e-9, "max_residual_spread=" + format_double(worst)};
}

// Best-response value by enumerating the responder's pure policies.
double pure_br_value(const GameTree& tree, const FlatPolicy& pi, int player) {
  const auto& ids = tree.infosets_deepest_first(player);
  std::vector<int> choice(ids.size(), 0);
  double best = -std::numeric_limits<double>::infinity();
  for (;;) {
    FlatPolicy trial(pi);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      auto s = slice(tree, std::span<double>(trial), ids[i]);
      std::fill(s.begin(), s.end(), 0.0);
      s[static_cast<std::size_t>(choice[i])] = 1.0;
    }
    best = std::max(best, expected_return(tree, trial)[static_cast<std::size_t>(player)]);
    std::size_t i = 0;
    for (; i < ids.size(); ++i) {
      if (++choice[i] < tree.infoset_at(ids[i]).num_actions()) break;
      choice[i] = 0;
    }
    if (i == ids.size()) return best;
  }
}

Check check_kuhn_exploitability() {
  const auto tree = GameTree::build(new_game("kuhn_poker"));
  const auto pi = uniform_flat(tree);
  const double oracle = 0.5 * (pure_br_value(tree, pi, 0) + pure_br_value(tree, pi, 1));
  const double got = exploitability(tree, pi);
  return {"kuhn_uniform_exploitability", std::abs(got - oracle) < 1e-12,
          "value=" + format_double(got) + " oracle=" + format_double(oracle)};
}

Check check_posteriors(const std::string& game_name) {
  const auto game = new_game(game_name);
  const auto tree = GameTree::build(game);
  RngStream rng(11, 3);
  FlatPolicy pi = uniform_flat(tree);
  for (int id = 0; id < static_cast<int>(tree.infosets().size()); ++id) {
    auto s = slice(tree, std::span<double>(pi), id);
    double total = 0.0;
    for (double& p : s) total += (p = 0.1 + rng.uniform());
    for (double& p : s) p /= total;
  }
  const auto reach = compute_reach(tree, pi);
  double worst = 0.0;
  for (int id = 0; id < static_cast<int>(tree.infosets().size()); ++id) {
    const auto& info = tree.infoset_at(id);
    // Bayes with the full reach, own terms included, then normalized.
    double total = 0.0;
    for (int n : info.nodes) total += reach.total(n);
    const auto post = posterior(tree, pi, info.key);
    for (const auto& e : post.entries) {
      worst = std::max(worst, std::abs(e.probability - reach.total(e.node) / total));
    }
  }
  return {"posterior_bayes_" + game_name, worst < 1e-12, "max_error=" + format_double(worst)};
}

Check check_q_consistency() {
  const auto tree = GameTree::build(new_game("leduc_poker"));
  const auto pi = uniform_flat(tree);
  const auto reach = compute_reach(tree, pi);
  const auto values = compute_values(tree, pi);
  double worst = 0.0;
  for (int p = 0; p < 2; ++p) {
    InfosetQ q;
    infoset_q_into(tree, reach, values, p, q);
    for (int id : tree.infosets_deepest_first(p)) {
      const auto& info = tree.infoset_at(id);
      double v = 0.0, w = 0.0;
      for (int n : info.nodes) {
        const double c = reach.counterfactual(p, n);
        v += c * values.at(n, p);
        w += c;
      }
      double pq = 0.0;
      for (int a = 0; a < info.num_actions(); ++a) {
        pq += pi[info.offset + static_cast<std::size_t>(a)] * q.q[info.offset + static_cast<std::size_t>(a)];
      }
      worst = std::max(worst, std::abs(pq - v / w));
    }
  }
  return {"q_consistency_leduc", worst < 1e-10, "max_error=" + format_double(worst)};
}

Check check_simd() {
  const auto* avx = simd::avx2_kernels();
  if (avx == nullptr || !simd::cpu_has_avx2()) return {"simd_equivalence", true, "avx2_unavailable"};
  const auto& ref = simd::scalar_kernels();
  RngStream rng(5, 9);
  std::size_t mismatches = 0;
  for (std::size_t n = 0; n < 67; ++n) {
    std::vector<double> lp(n), q(n), lr(n), out1(n), out2(n), y1(n), y2(n);
    for (std::size_t i = 0; i < n; ++i) {
      lp[i] = std::log(0.01 + rng.uniform());
      q[i] = 40.0 * rng.uniform() - 20.0;
      lr[i] = std::log(0.01 + rng.uniform());
      y1[i] = y2[i] = rng.uniform();
    }
    const double eta = 50.0 * rng.uniform() + 1e-3;
    const double alpha = rng.uniform();
    ref.mmd_logits(n, lp.data(), q.data(), lr.data(), eta, alpha, out1.data());
    avx->mmd_logits(n, lp.data(), q.data(), lr.data(), eta, alpha, out2.data());
    ref.axpy(n, eta, q.data(), y1.data());
    avx->axpy(n, eta, q.data(), y2.data());
    for (std::size_t i = 0; i < n; ++i) {
      if (std::memcmp(&out1[i], &out2[i], sizeof(double)) != 0) ++mismatches;
      if (std::memcmp(&y1[i], &y2[i], sizeof(double)) != 0) ++mismatches;
    }
  }
  return {"simd_equivalence", mismatches == 0, "mismatches=" + std::to_string(mismatches)};
}

}  // namespace

bool run_selfcheck(const ExperimentConfig& config, std::ostream& out) {
  RngStream rng(config.seed(), 0x5e1full);
  std::vector<Check> checks;
  checks.push_back(check_update_stationarity(rng));
  checks.push_back(check_kuhn_exploitability());
  checks.push_back(check_posteriors("kuhn_poker"));
  checks.push_back(check_posteriors("leduc_poker"));
  checks.push_back(check_q_consistency());
  checks.push_back(check_simd());
  bool all = true;
  out << "check,status,detail\n";
  for (const auto& c : checks) {
    all = all && c.ok;
    out << c.name << ',' << (c.ok ? "pass" : "fail") << ',' << c.detail << '\n';
  }
  out << metadata_line(config) << '\n';
  return all;
}

}  // namespace ue::harness
