#pragma once

#include <cstdint>

namespace tinv {

/// Counter-based generator: draw n of stream s under seed k is
/// splitmix64_finalize(k * C0 + s * C1 + n * C2), so any (stream, draw)
/// pair is addressable without replaying earlier draws. Ensemble member i
/// uses stream i; per-party draws inside one member share its stream and
/// advance the counter.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  std::uint64_t next_u64();
  /// Uniform in (0, 1): never returns 0.
  double uniform();
  /// Standard normal via Box-Muller (both outputs of a pair are used).
  double normal();

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace tinv
