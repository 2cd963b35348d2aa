#pragma once

#include <cstdint>

#include "mifkit/matrix.hpp"
#include "mifkit/ring.hpp"

namespace mifkit {

// Constants for the height calculus on Z[1/N][x_1..x_t]: C_R = N^{log2 N}
// (the number-field degree factor is 1 since the scalars sit over Q). The
// same constant serves the polynomial ring.
struct HeightConstants {
  double C_R;
  unsigned N;
  unsigned t;
};

HeightConstants height_constants(const RingCtx& ctx);

// max{k, log_N^+ |a/N^k|}; 0 for the zero element.
double height_scalar(const NLocInt& r, unsigned N);

// max over the support of scalar height plus total degree; 0 for zero.
double height_poly(const RingElement& r);

// max entry height
double height_matrix(const MatPoly& m);

// C_R^{h(r)}; every prime above it keeps r nonzero mod p. r must be nonzero.
double mod_p_threshold(const RingElement& r, const HeightConstants& consts);

// r mod p is a nonzero polynomial over F_p (requires p prime to N).
bool nonzero_mod_p(const RingElement& r, uint64_t p);

struct EscapePrime {
  uint64_t p = 0;
  unsigned windows_used = 1;  // 1 = first window [n, C_R n]; doubling widens
};

// Smallest prime in [n, ceil(C_R n)] with r nonzero mod p and p prime to N.
// If the window is empty the search widens it by doubling (reported in
// windows_used) rather than silently succeeding; throws Budget after
// max_widenings attempts. Requires r != 0 and n >= max{N, h(r)}.
EscapePrime find_escape_prime(const RingElement& r, uint64_t n, const HeightConstants& consts,
                              unsigned max_widenings = 6);

double log2_abs(const mpz_class& a);  // -inf guarded: a must be nonzero

}  // namespace mifkit
