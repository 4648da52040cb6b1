#ifndef UE_HARNESS_REPORT_H_
#define UE_HARNESS_REPORT_H_

#include <iosfwd>
#include <span>
#include <string>

#include "ue/harness/config.h"
#include "ue/rng.h"

namespace ue::harness {

inline constexpr int kBootstrapResamples = 10'000;

struct Interval {
  double lower;
  double upper;
};

// Mean computed relative to the first sample, so equal samples give that
// value exactly.
double sample_mean(std::span<const double> x);

// Percentile bootstrap of the mean. Throws InvalidArgument for empty input.
Interval bootstrap_ci(std::span<const double> x, int resamples, double level, RngStream& rng);

// "# config_hash=<16 hex digits> seed=<n> version=<semver>"
std::string metadata_line(const ExperimentConfig& config);

std::string hex64(std::uint64_t value);

}  // namespace ue::harness

#endif  // UE_HARNESS_REPORT_H_
