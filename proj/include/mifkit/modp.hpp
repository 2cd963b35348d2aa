#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mifkit/groupspec.hpp"
#include "mifkit/matrix.hpp"
#include "mifkit/ring.hpp"

namespace mifkit {

// A homomorphism R[r^-1] -> F_p: the prime plus the image point of the
// variables, with r(point) != 0.
struct Specialization {
  uint64_t p = 0;
  std::vector<uint64_t> point;  // length t
};

// d x d matrix over F_p with determinant 1.
struct FpMatrix {
  unsigned d = 0;
  uint64_t p = 0;
  std::vector<uint64_t> e;  // row-major

  uint64_t at(unsigned i, unsigned j) const { return e[i * d + j]; }
  uint64_t& at(unsigned i, unsigned j) { return e[i * d + j]; }
  bool is_identity() const;
  bool operator==(const FpMatrix& o) const { return d == o.d && p == o.p && e == o.e; }
};

FpMatrix fp_identity(unsigned d, uint64_t p);
FpMatrix fp_mul(const FpMatrix& a, const FpMatrix& b);
FpMatrix fp_pow(const FpMatrix& a, long e);  // negative e inverts via adjugate
FpMatrix fp_inverse(const FpMatrix& a);      // det must be 1
uint64_t fp_det(const FpMatrix& a);

// |Hom(R, F_p)| = p^t exactly for this ring family. Errors if p | N or if
// p^t overflows.
uint64_t count_homs(uint64_t p, const RingCtx& ctx);

// scalar value of r at the specialization point
uint64_t eval_mod_p(const RingElement& r, const Specialization& phi);

// Uniform over {a in F_p^t : localizer(a) != 0} by rejection (cap 64*t
// draws, then a Budget error). Streams derive from (seed, stream).
Specialization sample_hom(uint64_t p, const GroupSpec& spec, uint64_t seed, uint64_t stream = 0);

// entrywise evaluation + reduction; checks the determinant stays 1
FpMatrix reduce_matrix(const MatPoly& m, const Specialization& phi);
FpMatrix reduce_matrix(const GroupElement& g, const Specialization& phi);

// exact |{a in F_p^t : s(a) = 0}| by enumeration; requires s != 0 mod p and
// p^t <= cap
uint64_t count_zeros(const RingElement& s, uint64_t p, uint64_t cap = 10'000'000);

// reduction of s as a polynomial over F_p; degree of that reduction
unsigned degree_mod_p(const RingElement& s, uint64_t p);

}  // namespace mifkit
