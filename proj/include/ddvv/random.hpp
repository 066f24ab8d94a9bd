#pragma once

#include <cstdint>
#include <random>

namespace ddvv {

/// Seedable Gaussian/uniform source with a stream-split operation.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Uniform and normal variates are derived from raw engine words
/// here (53-bit mantissa fill, Box-Muller) instead of going through the
/// implementation-defined std distributions, so a (seed, stream) pair gives the
/// same numbers on every standard library.
class RandomStream {
public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0);

  /// Independent stream for restart/trial `index` derived from this stream's
  /// seed. Does not advance this stream.
  [[nodiscard]] RandomStream split(std::uint64_t index) const;

  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on (0, 1].
  double uniform_open_low();
  double normal();
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  [[nodiscard]] std::uint64_t stream() const { return stream_; }

private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ddvv
