#pragma once

#include <array>
#include <cstdint>

namespace eigengame {

/// Counter-based random generator (Philox4x32-10).
///
/// A generator is identified by a 64-bit seed plus a 64-bit stream id; draws
/// are a pure function of (seed, stream, block counter), so sequences are
/// reproducible and independent streams can be handed to concurrent workers.
/// split(child) derives a new seed from (seed, stream, child) through one
/// keyed Philox block, giving an unlimited tree of decorrelated generators.
class Philox {
 public:
  explicit Philox(std::uint64_t seed, std::uint64_t stream = 0);

  /// Child generator for an independent substream.
  Philox split(std::uint64_t child) const;

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double();

  /// Standard normal via Box-Muller (second value cached).
  double next_normal();

  /// Uniform integer in [0, n), unbiased. n must be positive.
  std::uint64_t next_index(std::uint64_t n);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  void refill();

  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
  std::uint64_t block_ = 0;           // counter for the low 64 bits
  std::array<std::uint32_t, 4> buf_{};
  int buf_pos_ = 4;                   // exhausted
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace eigengame
