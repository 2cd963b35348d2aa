#pragma once

#include <cstdint>
#include <functional>
#include <optional>

namespace mifkit {

// Deterministic Miller-Rabin, valid for the full 64-bit range.
bool is_prime(uint64_t n);

// Smallest prime p with lo <= p <= hi and pred(p) (pred may be empty).
std::optional<uint64_t> first_prime_in(uint64_t lo, uint64_t hi,
                                       const std::function<bool(uint64_t)>& pred = nullptr);

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m);
uint64_t powmod(uint64_t a, uint64_t e, uint64_t m);
uint64_t invmod(uint64_t a, uint64_t m);  // m prime, a != 0 mod m

inline uint64_t addmod(uint64_t a, uint64_t b, uint64_t m) {
  uint64_t s = a + b;
  return s >= m ? s - m : s;
}
inline uint64_t submod(uint64_t a, uint64_t b, uint64_t m) { return a >= b ? a - b : a + m - b; }

}  // namespace mifkit
