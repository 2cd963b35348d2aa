#include "mifkit/primes.hpp"

#include "mifkit/error.hpp"

namespace mifkit {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

uint64_t invmod(uint64_t a, uint64_t m) {
  a %= m;
  if (a == 0) fail_domain("invmod: zero is not invertible");
  // extended gcd on (a, m)
  int64_t x0 = 1, x1 = 0;
  uint64_t r0 = a, r1 = m;
  while (r1 != 0) {
    uint64_t q = r0 / r1;
    uint64_t r2 = r0 - q * r1;
    int64_t x2 = x0 - static_cast<int64_t>(q) * x1;
    r0 = r1;
    r1 = r2;
    x0 = x1;
    x1 = x2;
  }
  if (r0 != 1) fail_domain("invmod: arguments not coprime");
  return x0 < 0 ? static_cast<uint64_t>(x0 + static_cast<int64_t>(m)) : static_cast<uint64_t>(x0);
}

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This witness set is deterministic below 3.3 * 10^24.
  for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::optional<uint64_t> first_prime_in(uint64_t lo, uint64_t hi,
                                       const std::function<bool(uint64_t)>& pred) {
  if (lo < 2) lo = 2;
  for (uint64_t p = lo; p <= hi; ++p) {
    if (is_prime(p) && (!pred || pred(p))) return p;
    if (p == UINT64_MAX) break;
  }
  return std::nullopt;
}

}  // namespace mifkit
