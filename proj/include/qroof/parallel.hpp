#pragma once

#include <cstdint>

namespace qroof {

/// Selects the OpenMP kernel or its serial reference. Both produce bit-identical
/// results: work is split by index and reduced in index order.
enum class Execution { Serial, Parallel };

/// Applies QROOF_THREADS (if set and positive) as the OpenMP thread cap.
void configure_threads_from_env();

int max_threads();

/// Counter-based generator: every (seed, stream) pair yields an independent
/// sequence, so per-sample streams do not depend on scheduling.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : state_(mix(seed ^ mix(stream + 0x9E3779B97F4A7C15ULL))) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  std::uint64_t state_;
};

}  // namespace qroof
