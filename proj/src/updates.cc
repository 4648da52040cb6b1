#include "ue/updates.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ue/errors.h"
#include "ue/format.h"
#include "ue/policy.h"
#include "ue/simd/kernels.h"

namespace ue {

namespace {

void check_inputs(std::span<const double> pi, std::span<const double> q) {
  if (q.empty()) throw InvalidArgument("update called with an empty action set");
  if (pi.size() != q.size()) {
    throw InvalidArgument("policy has " + std::to_string(pi.size()) + " entries but q has " +
                          std::to_string(q.size()));
  }
  for (double v : q) {
    if (!std::isfinite(v)) throw InvalidArgument("non-finite action value " + format_double(v));
  }
  const double violation = simplex_violation(pi);
  if (!(violation <= kSimplexTolerance)) {
    throw InvalidArgument("input policy is off the simplex (violation " +
                          format_double(violation) + ")");
  }
}

void check_eta(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw InvalidArgument("stepsize eta must be positive, got " + format_double(eta));
  }
}

std::vector<double> closed_form(std::span<const double> pi, std::span<const double> q,
                                std::span<const double> logrho, double eta, double alpha) {
  std::vector<double> out(pi.size());
  log_into(pi, out);
  simd::active().mmd_logits(out.size(), out.data(), q.data(), logrho.data(), eta, alpha,
                            out.data());
  normalize_logits(out);
  return out;
}

}  // namespace

std::string_view update_kind_name(UpdateKind kind) {
  switch (kind) {
    case UpdateKind::kPolicyIteration:
      return "pi";
    case UpdateKind::kHedge:
      return "hedge";
    case UpdateKind::kMmd:
      return "mmd";
  }
  return "?";
}

UpdateKind parse_update_kind(std::string_view name) {
  if (name == "pi" || name == "policy_iteration") return UpdateKind::kPolicyIteration;
  if (name == "hedge" || name == "md") return UpdateKind::kHedge;
  if (name == "mmd") return UpdateKind::kMmd;
  throw InvalidArgument("unknown update kind '" + std::string(name) + "'");
}

void log_into(std::span<const double> p, std::span<double> out) {
  for (std::size_t a = 0; a < p.size(); ++a) {
    out[a] = p[a] > 0.0 ? std::log(p[a]) : -std::numeric_limits<double>::infinity();
  }
}

void normalize_logits(std::span<double> logits) {
  double top = -std::numeric_limits<double>::infinity();
  for (double v : logits) top = std::max(top, v);
  double total = 0.0;
  for (double& v : logits) {
    v = std::exp(v - top);
    total += v;
  }
  for (double& v : logits) v /= total;
}

std::vector<double> pi_update(std::span<const double> pi, std::span<const double> q) {
  if (q.empty()) throw InvalidArgument("update called with an empty action set");
  if (!pi.empty() && pi.size() != q.size()) {
    throw InvalidArgument("policy and q lengths differ");
  }
  std::size_t best = 0;
  for (std::size_t a = 0; a < q.size(); ++a) {
    if (!std::isfinite(q[a])) throw InvalidArgument("non-finite action value");
    if (q[a] > q[best]) best = a;
  }
  std::vector<double> out(q.size(), 0.0);
  out[best] = 1.0;
  return out;
}

std::vector<double> hedge_update(std::span<const double> pi, std::span<const double> q,
                                 double eta) {
  check_inputs(pi, q);
  check_eta(eta);
  const std::vector<double> zeros(pi.size(), 0.0);
  return closed_form(pi, q, zeros, eta, 0.0);
}

std::vector<double> mmd_update(std::span<const double> pi, std::span<const double> q,
                               std::span<const double> rho, double eta, double alpha) {
  check_inputs(pi, q);
  check_eta(eta);
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw InvalidArgument("temperature alpha must be nonnegative, got " + format_double(alpha));
  }
  if (rho.size() != pi.size()) throw InvalidArgument("magnet length differs from policy length");
  for (double r : rho) {
    if (!(r > 0.0)) throw InvalidArgument("magnet must be fully supported");
  }
  if (!(simplex_violation(rho) <= kSimplexTolerance)) {
    throw InvalidArgument("magnet is off the simplex");
  }
  if (alpha == 0.0) return hedge_update(pi, q, eta);
  std::vector<double> logrho(rho.size());
  log_into(rho, logrho);
  return closed_form(pi, q, logrho, eta, alpha);
}

std::vector<double> apply_update(const UpdateParams& params, std::span<const double> pi,
                                 std::span<const double> q) {
  switch (params.kind) {
    case UpdateKind::kPolicyIteration:
      return pi_update(pi, q);
    case UpdateKind::kHedge:
      return hedge_update(pi, q, params.eta);
    case UpdateKind::kMmd: {
      if (params.magnet.empty()) {
        const std::vector<double> uniform(q.size(), 1.0 / static_cast<double>(q.size()));
        return mmd_update(pi, q, uniform, params.eta, params.alpha);
      }
      return mmd_update(pi, q, params.magnet, params.eta, params.alpha);
    }
  }
  throw InvalidArgument("unknown update kind");
}

double ScheduleTerm::at(long t) const {
  if (t < 1) throw InvalidArgument("schedule evaluated at t=" + std::to_string(t) + " < 1");
  if (!decays) return c;
  return c / (k * std::sqrt(static_cast<double>(t)));
}

std::string ScheduleTerm::to_string() const {
  if (!decays) return format_double(c);
  if (k == 1.0) return format_double(c) + "/sqrt(t)";
  return format_double(c) + "/(" + format_double(k) + "sqrt(t))";
}

Schedule Schedule::constant(double eta, double alpha) {
  return Schedule{ScheduleTerm{eta, 1.0, false}, ScheduleTerm{alpha, 1.0, false}};
}

std::string Schedule::to_string() const {
  return "eta=" + eta.to_string() + ",alpha=" + alpha.to_string();
}

ScheduleValue schedule_eval(const Schedule& schedule, long t) {
  if (t < 1) throw InvalidArgument("schedule evaluated at t=" + std::to_string(t) + " < 1");
  return {schedule.eta.at(t), schedule.alpha.at(t)};
}

ScheduleTerm parse_schedule_term(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (ch != ' ' && ch != '*') s.push_back(ch);
  }
  const auto bad = [&]() {
    return InvalidArgument("cannot parse schedule term '" + std::string(text) + "'");
  };
  const auto positive = [&](double v) {
    if (!(v > 0.0) || !std::isfinite(v)) throw bad();
    return v;
  };
  const std::string root = "sqrt(t)";
  const auto ends_with_root = s.ends_with(root) || s.ends_with(root + ")");
  if (!ends_with_root) {
    try {
      return ScheduleTerm{parse_double(s), 1.0, false};
    } catch (const InvalidArgument&) {
      throw bad();
    }
  }
  const auto slash = s.find('/');
  if (slash == std::string::npos) throw bad();
  ScheduleTerm term;
  term.decays = true;
  try {
    term.c = positive(parse_double(s.substr(0, slash)));
    std::string rest = s.substr(slash + 1);
    if (rest == root) {
      term.k = 1.0;
    } else if (rest.size() > root.size() + 2 && rest.front() == '(' && rest.back() == ')') {
      term.k = positive(parse_double(rest.substr(1, rest.size() - 2 - root.size())));
    } else {
      throw bad();
    }
  } catch (const InvalidArgument&) {
    throw bad();
  }
  return term;
}

Schedule parse_schedule(std::string_view text) {
  Schedule schedule;
  bool have_eta = false;
  bool have_alpha = false;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view part = text.substr(start, end - start);
    const auto eq = part.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidArgument("schedule entry '" + std::string(part) + "' lacks '='");
    }
    std::string_view name = part.substr(0, eq);
    ScheduleTerm term = parse_schedule_term(part.substr(eq + 1));
    if (name == "eta") {
      schedule.eta = term;
      have_eta = true;
    } else if (name == "alpha") {
      schedule.alpha = term;
      have_alpha = true;
    } else {
      throw InvalidArgument("unknown schedule entry '" + std::string(name) + "'");
    }
    start = end + 1;
  }
  if (!have_eta || !have_alpha) throw InvalidArgument("schedule needs both eta and alpha");
  return schedule;
}

}  // namespace ue
