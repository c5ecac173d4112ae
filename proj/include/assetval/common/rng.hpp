#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace assetval {

// Deterministic random source. All draws are derived from std::mt19937_64
// output directly; the std <random> distributions are implementation-defined
// and would break cross-platform reproducibility.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of precision.
  double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::size_t next_index(std::size_t n) {
    return static_cast<std::size_t>(engine_() % static_cast<std::uint64_t>(n));
  }

  double next_normal();

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[next_index(i)]);
    }
  }

  // Index draw proportional to non-negative weights via the cumulative sums.
  std::size_t next_weighted_index(std::span<const double> cumulative);

  // splitmix64 step; used to derive independent per-task streams from a seed.
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::vector<double> cumulative_sums(std::span<const double> weights);

}  // namespace assetval
