#include "ue/harness/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "ue/errors.h"

#ifndef UE_VERSION
#define UE_VERSION "0.0.0"
#endif

namespace ue::harness {

double sample_mean(std::span<const double> x) {
  if (x.empty()) throw InvalidArgument("mean of an empty sample");
  const double base = x.front();
  double acc = 0.0;
  for (double v : x) acc += v - base;
  return base + acc / static_cast<double>(x.size());
}

Interval bootstrap_ci(std::span<const double> x, int resamples, double level, RngStream& rng) {
  if (x.empty()) throw InvalidArgument("bootstrap of an empty sample");
  if (resamples < 1) throw InvalidArgument("bootstrap needs at least one resample");
  if (!(level > 0.0 && level < 1.0)) throw InvalidArgument("confidence level must be in (0, 1)");
  const double base = x.front();
  const auto n = x.size();
  std::vector<double> means(static_cast<std::size_t>(resamples));
  for (auto& m : means) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[rng.uniform_int(n)] - base;
    m = base + acc / static_cast<double>(n);
  }
  std::sort(means.begin(), means.end());
  const double tail = (1.0 - level) / 2.0;
  const auto last = static_cast<double>(resamples - 1);
  const auto lo = static_cast<std::size_t>(std::floor(tail * last));
  const auto hi = static_cast<std::size_t>(std::ceil((1.0 - tail) * last));
  return {means[lo], means[hi]};
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

std::string metadata_line(const ExperimentConfig& config) {
  return "# config_hash=" + hex64(config.hash()) + " seed=" + std::to_string(config.seed()) +
         " version=" UE_VERSION;
}

}  // namespace ue::harness
