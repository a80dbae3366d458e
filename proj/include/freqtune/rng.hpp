#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace freqtune {

/// Counter-based 64-bit random stream (SplitMix64 core).
///
/// Every consumer derives its own stream from a master seed, a purpose tag
/// and optional indices, so experiment results are a pure function of the
/// master seed regardless of evaluation order. The generator is fully
/// specified here (no reliance on std:: distribution internals), which keeps
/// emitted numbers byte-stable across platforms and standard libraries.
///
/// Derivation: the state starts from the master seed and absorbs the FNV-1a
/// hash of the purpose tag plus each index through one SplitMix64 step per
/// absorbed word.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(seed) {}

  static RngStream derive(std::uint64_t master, std::string_view purpose,
                          std::initializer_list<std::uint64_t> indices = {});

  /// Next raw 64-bit word.
  std::uint64_t next_u64();

  /// Uniform double in [0, 1), 53 bits of mantissa.
  double next_double();

  /// Uniform double in [lo, hi).
  double next_uniform(double lo, double hi);

  /// Standard normal draw via Box-Muller. Consumes exactly two words per
  /// call (the second Box-Muller output is discarded) so the stream position
  /// never depends on call history.
  double next_gaussian();

  /// Uniform integer in [0, n). n must be > 0.
  std::uint64_t next_below(std::uint64_t n);

 private:
  std::uint64_t state_;
};

/// FNV-1a hash of a byte string; also used for run-descriptor hashing.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace freqtune
