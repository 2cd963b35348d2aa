#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace mifkit {

// Ambient ring Z[1/N][x_1..x_t]. `vars` holds the t variable names; "x" is
// reserved for the word variable and rejected here.
struct RingCtx {
  unsigned N = 2;
  unsigned t = 0;
  std::vector<std::string> vars;

  void validate() const;
  bool compatible(const RingCtx& o) const { return N == o.N && t == o.t; }
};

// Scalar a / N^k in canonical form: k is minimal with N^k * value integral,
// and zero is (0, 0).
struct NLocInt {
  mpz_class num;
  unsigned exp = 0;

  bool is_zero() const { return num == 0; }
  bool is_one() const { return exp == 0 && num == 1; }
  bool operator==(const NLocInt& o) const { return exp == o.exp && num == o.num; }
};

NLocInt canonical_scalar(mpz_class numerator, long denom_exp, unsigned N);
NLocInt nloc_add(const NLocInt& a, const NLocInt& b, unsigned N);
NLocInt nloc_mul(const NLocInt& a, const NLocInt& b, unsigned N);
NLocInt nloc_neg(const NLocInt& a);
std::string nloc_to_string(const NLocInt& a, unsigned N);

using Mono = std::vector<unsigned>;  // exponent vector of length t

inline unsigned mono_total_degree(const Mono& m) {
  unsigned s = 0;
  for (unsigned e : m) s += e;
  return s;
}

// Sparse multivariate polynomial with NLocInt coefficients. Terms are kept in
// lexicographic monomial order and never store a zero coefficient.
class RingElement {
 public:
  RingElement() = default;
  RingElement(unsigned N, unsigned t) : N_(N), t_(t) {}

  static RingElement zero(const RingCtx& ctx) { return RingElement(ctx.N, ctx.t); }
  static RingElement constant(const RingCtx& ctx, NLocInt c);
  static RingElement from_int(const RingCtx& ctx, long v);
  static RingElement variable(const RingCtx& ctx, unsigned i, unsigned power = 1);

  unsigned N() const { return N_; }
  unsigned t() const { return t_; }
  const std::map<Mono, NLocInt>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  // max |I| over the support; 0 for the zero polynomial
  unsigned degree() const;
  std::size_t support_size() const { return terms_.size(); }

  void add_term(const Mono& m, const NLocInt& c);

  RingElement operator+(const RingElement& o) const;
  RingElement operator-(const RingElement& o) const;
  RingElement operator*(const RingElement& o) const;
  RingElement operator-() const;
  bool operator==(const RingElement& o) const { return N_ == o.N_ && t_ == o.t_ && terms_ == o.terms_; }

  RingElement pow(unsigned e) const;

  std::string to_string(const RingCtx& ctx) const;

 private:
  unsigned N_ = 2;
  unsigned t_ = 0;
  std::map<Mono, NLocInt> terms_;
};

// Polynomial string grammar:
//   poly := ("-")? term (("+" | "-") term)*
//   term := coeff ("*" var ("^" uint)?)* | var ("^" uint)? ("*" var ("^" uint)?)*
//   coeff := int ("/" uint)?       (denominators must divide a power of N)
RingElement parse_poly(const std::string& text, const RingCtx& ctx);

}  // namespace mifkit
