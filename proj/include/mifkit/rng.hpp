#pragma once

#include <cstdint>

namespace mifkit {

// Counter-based deterministic generator. Stream `i` of seed `s` starts from
// state mix(s ^ mix(i + 1)) and advances by the splitmix64 recurrence, so a
// (seed, stream-index) pair fully determines a draw sequence independently of
// thread scheduling. This is the substream scheme referenced by the CLI docs.
class Rng {
 public:
  explicit Rng(uint64_t seed, uint64_t stream = 0) {
    state_ = mix(seed ^ mix(stream + 0x9E3779B97F4A7C15ULL));
  }

  uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // Unbiased integer in [0, n); rejection sampling keeps the stream portable.
  uint64_t below(uint64_t n) {
    if (n <= 1) return 0;
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % n;
  }

  // Inclusive range.
  int64_t range(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

  // Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool coin(double prob) { return unit() < prob; }

  static uint64_t mix(uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

 private:
  uint64_t state_;
};

}  // namespace mifkit
