#ifndef UE_RNG_H_
#define UE_RNG_H_

#include <cstdint>
#include <limits>
#include <random>
#include <span>

namespace ue {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Reproducible random stream: identical (seed, stream, call sequence) gives
// identical draws on every platform. Distributions are implemented here rather
// than through <random> adaptors, whose output is implementation-defined.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed),
        stream_(stream),
        engine_(splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ull))) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return engine_(); }

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on {0, ..., n - 1}; n > 0.
  std::uint64_t uniform_int(std::uint64_t n) {
    const std::uint64_t limit = max() - max() % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  // Index drawn with probability proportional to weights[i] (nonnegative).
  std::size_t discrete(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    double u = uniform() * total;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] <= 0.0) continue;
      last_positive = i;
      if (u < weights[i]) return i;
      u -= weights[i];
    }
    return last_positive;
  }

  // An independent child stream, e.g. one per game or per worker.
  RngStream fork(std::uint64_t child) const {
    return RngStream(splitmix64(seed_ + 0x5851f42d4c957f2dull * (stream_ + 1)), child);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

}  // namespace ue

#endif  // UE_RNG_H_
