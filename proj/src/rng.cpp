#include "subw/rng.hpp"

#include <cmath>
#include <numbers>

namespace subw::rng {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// splitmix64 finalizer (Stafford mix 13).
constexpr std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  // Decorrelate (seed, stream) pairs by finalizing each coordinate before
  // combining; two different stream ids under the same seed share no prefix.
  state_ = mix(seed + kGolden) ^ mix(stream_id * 0xD1B54A32D192ED03ULL + 0x8BB84B93962EACC9ULL);
}

std::uint64_t RngStream::next_u64() {
  state_ += kGolden;
  return mix(state_);
}

double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_pos() {
  return 1.0 - uniform();
}

double RngStream::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform_pos();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

}  // namespace subw::rng
