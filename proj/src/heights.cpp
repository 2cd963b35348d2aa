#include "mifkit/heights.hpp"

#include <cmath>

#include "mifkit/error.hpp"
#include "mifkit/primes.hpp"

namespace mifkit {

double log2_abs(const mpz_class& a) {
  if (a == 0) fail_domain("log2_abs: zero");
  long exp2;
  double mant = mpz_get_d_2exp(&exp2, a.get_mpz_t());
  return std::log2(std::fabs(mant)) + static_cast<double>(exp2);
}

HeightConstants height_constants(const RingCtx& ctx) {
  // The nonvanishing claim needs p > |a| with |a| <= N^{2h}, so the exponent
  // is floored at 2; N^{log2 N} alone fails for N in {2, 3} (e.g. 59/2^3 has
  // h = 3 and vanishes mod 59 > 2^3).
  double log2N = std::log2(static_cast<double>(ctx.N));
  double exponent = std::max(2.0, log2N);
  return HeightConstants{std::pow(static_cast<double>(ctx.N), exponent), ctx.N, ctx.t};
}

double height_scalar(const NLocInt& r, unsigned N) {
  if (r.is_zero()) return 0.0;
  double log2N = std::log2(static_cast<double>(N));
  // log_N |a/N^k| = log2|a|/log2 N - k
  double logN_abs = log2_abs(r.num) / log2N - static_cast<double>(r.exp);
  return std::max(static_cast<double>(r.exp), std::max(0.0, logN_abs));
}

double height_poly(const RingElement& r) {
  double h = 0.0;
  for (const auto& [mono, coeff] : r.terms()) {
    h = std::max(h, height_scalar(coeff, r.N()) + mono_total_degree(mono));
  }
  return h;
}

double height_matrix(const MatPoly& m) {
  double h = 0.0;
  for (unsigned i = 0; i < m.dim(); ++i) {
    for (unsigned j = 0; j < m.dim(); ++j) h = std::max(h, height_poly(m.at(i, j)));
  }
  return h;
}

double mod_p_threshold(const RingElement& r, const HeightConstants& consts) {
  if (r.is_zero()) fail_domain("mod_p_threshold: r must be nonzero");
  return std::pow(consts.C_R, height_poly(r));
}

bool nonzero_mod_p(const RingElement& r, uint64_t p) {
  if (p < 2) fail_domain("nonzero_mod_p: p must be prime");
  if (p <= r.N() && r.N() % p == 0) fail_domain("nonzero_mod_p: p divides N");
  mpz_class P(static_cast<unsigned long>(p));
  for (const auto& [mono, coeff] : r.terms()) {
    (void)mono;
    // coefficient a / N^k: nonzero mod p iff p does not divide a
    if (!mpz_divisible_p(coeff.num.get_mpz_t(), P.get_mpz_t())) return true;
  }
  return false;
}

EscapePrime find_escape_prime(const RingElement& r, uint64_t n, const HeightConstants& consts,
                              unsigned max_widenings) {
  if (r.is_zero()) fail_domain("find_escape_prime: r must be nonzero");
  double h = height_poly(r);
  if (static_cast<double>(n) < static_cast<double>(consts.N) ||
      static_cast<double>(n) < h)
    fail_domain("find_escape_prime: n must be at least max{N, h(r)}");
  uint64_t hi = static_cast<uint64_t>(std::ceil(consts.C_R * static_cast<double>(n)));
  if (hi < n) hi = n;
  auto ok = [&](uint64_t p) { return consts.N % p != 0 && nonzero_mod_p(r, p); };
  for (unsigned window = 1; window <= max_widenings; ++window) {
    auto p = first_prime_in(n, hi, ok);
    if (p) return EscapePrime{*p, window};
    hi *= 2;  // widen and report; never silently succeed
  }
  fail_budget("find_escape_prime: window exhausted after " + std::to_string(max_widenings) +
              " doublings");
}

}  // namespace mifkit
