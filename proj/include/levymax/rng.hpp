#pragma once
// Splittable keyed PRNG streams. A stream is fully determined by
// (seed, stream_id), so work split across threads by stream id reproduces the
// same draws no matter how many threads run or in what order chunks finish.
// Core is the SplitMix64 generator (Steele/Lea/Flood style: per-stream odd
// gamma derived from the key), all samplers hand-rolled so sequences are
// pinned across platforms.
#include <cmath>
#include <cstdint>
#include <string>

#include "levymax/errors.hpp"

namespace levymax {

inline std::uint64_t mix64(std::uint64_t z) {
  // Stafford variant 13 finalizer
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

// Stream-id block for a named purpose: low 32 bits left free for an index,
// so stream_base(label) | i is unique per (label, i) for i < 2^32.
inline std::uint64_t stream_base(const std::string& label) {
  return fnv1a64(label) & 0xFFFFFFFF00000000ull;
}

class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : seed_(seed), stream_id_(stream_id) {
    std::uint64_t h = mix64(seed ^ 0x5851F42D4C957F2Dull);
    state_ = mix64(h + 0x9E3779B97F4A7C15ull * stream_id);
    gamma_ = mix64(state_ ^ 0x8BB84B93962EACC9ull) | 1ull;
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() {
    state_ += gamma_;
    return mix64(state_);
  }

  // uniform on the open interval (0,1); never 0 or 1, safe under log()
  double uniform() { return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  double exponential(double rate) {
    if (!(rate > 0.0)) fail(errc::invalid_rate, "exponential: rate must be > 0");
    return -std::log(uniform()) / rate;
  }

  double normal() {
    double u = uniform();
    double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.28318530717958647692 * v);
  }

  bool bernoulli(double p) { return uniform() < p; }

  // failures before the first success: P(N = n) = (1-q)^n q for n >= 0
  std::int64_t geometric_failures(double q) {
    if (!(q > 0.0 && q <= 1.0)) fail(errc::invalid_probability, "geometric: q must be in (0,1]");
    if (q == 1.0) return 0;
    return static_cast<std::int64_t>(std::floor(std::log(uniform()) / std::log1p(-q)));
  }

  // uniform integer on [0, n), n >= 1 (fixed-point multiply, deterministic)
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

 private:
  std::uint64_t seed_, stream_id_, state_, gamma_;
};

}  // namespace levymax
