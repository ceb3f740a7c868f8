#pragma once

/*
 * Deterministic pseudo-random streams.
 *
 * RngStream is a splitmix-style counter generator: a 64-bit state advanced by
 * the golden-ratio increment with the splitmix64 finalizer. A (seed, stream)
 * pair fully determines the output sequence, uses only integer arithmetic plus
 * an exact power-of-two scaling for 53-bit uniforms, and therefore reproduces
 * byte-identically across runs. Replication loops give each replicate its own
 * stream id, which makes results independent of thread scheduling.
 */

#include <cstdint>

namespace subw::rng {

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t next_u64();

  // Uniform on [0, 1) with 53 random bits.
  double uniform();

  // Uniform on (0, 1]; safe as a log() argument.
  double uniform_pos();

  // Standard normal via the Box-Muller transform (second value cached).
  double gaussian();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  std::uint64_t state_;
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace subw::rng
