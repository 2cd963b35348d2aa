#include "mifkit/modp.hpp"

#include "mifkit/error.hpp"
#include "mifkit/primes.hpp"
#include "mifkit/rng.hpp"

namespace mifkit {

bool FpMatrix::is_identity() const {
  for (unsigned i = 0; i < d; ++i) {
    for (unsigned j = 0; j < d; ++j) {
      if (at(i, j) != (i == j ? 1u : 0u)) return false;
    }
  }
  return true;
}

FpMatrix fp_identity(unsigned d, uint64_t p) {
  FpMatrix m{d, p, std::vector<uint64_t>(static_cast<std::size_t>(d) * d, 0)};
  for (unsigned i = 0; i < d; ++i) m.at(i, i) = 1 % p;
  return m;
}

FpMatrix fp_mul(const FpMatrix& a, const FpMatrix& b) {
  if (a.d != b.d || a.p != b.p) fail_domain("fp_mul: shape or modulus mismatch");
  FpMatrix r{a.d, a.p, std::vector<uint64_t>(static_cast<std::size_t>(a.d) * a.d, 0)};
  for (unsigned i = 0; i < a.d; ++i) {
    for (unsigned k = 0; k < a.d; ++k) {
      uint64_t v = a.at(i, k);
      if (v == 0) continue;
      for (unsigned j = 0; j < a.d; ++j) {
        r.at(i, j) = addmod(r.at(i, j), mulmod(v, b.at(k, j), a.p), a.p);
      }
    }
  }
  return r;
}

namespace {

uint64_t fp_det_rec(const FpMatrix& m, std::vector<unsigned>& rows, std::vector<unsigned>& cols) {
  const unsigned n = static_cast<unsigned>(rows.size());
  if (n == 1) return m.at(rows[0], cols[0]);
  unsigned r0 = rows[0];
  std::vector<unsigned> sub_rows(rows.begin() + 1, rows.end());
  uint64_t acc = 0;
  for (unsigned jidx = 0; jidx < n; ++jidx) {
    uint64_t pivot = m.at(r0, cols[jidx]);
    if (pivot == 0) continue;
    std::vector<unsigned> sub_cols;
    for (unsigned k = 0; k < n; ++k)
      if (k != jidx) sub_cols.push_back(cols[k]);
    uint64_t term = mulmod(pivot, fp_det_rec(m, sub_rows, sub_cols), m.p);
    acc = jidx % 2 == 0 ? addmod(acc, term, m.p) : submod(acc, term, m.p);
  }
  return acc;
}

}  // namespace

uint64_t fp_det(const FpMatrix& a) {
  std::vector<unsigned> rows(a.d), cols(a.d);
  for (unsigned i = 0; i < a.d; ++i) rows[i] = cols[i] = i;
  return fp_det_rec(a, rows, cols);
}

FpMatrix fp_inverse(const FpMatrix& a) {
  if (fp_det(a) != 1 % a.p) fail_domain("fp_inverse: determinant is not 1");
  FpMatrix adj{a.d, a.p, std::vector<uint64_t>(static_cast<std::size_t>(a.d) * a.d, 0)};
  if (a.d == 1) {
    adj.at(0, 0) = 1 % a.p;
    return adj;
  }
  for (unsigned i = 0; i < a.d; ++i) {
    for (unsigned j = 0; j < a.d; ++j) {
      std::vector<unsigned> rows, cols;
      for (unsigned r = 0; r < a.d; ++r)
        if (r != i) rows.push_back(r);
      for (unsigned c = 0; c < a.d; ++c)
        if (c != j) cols.push_back(c);
      uint64_t minor = fp_det_rec(a, rows, cols);
      if ((i + j) % 2 == 1) minor = submod(0, minor, a.p);
      adj.at(j, i) = minor;
    }
  }
  return adj;
}

FpMatrix fp_pow(const FpMatrix& a, long e) {
  FpMatrix base = e < 0 ? fp_inverse(a) : a;
  unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
  FpMatrix acc = fp_identity(a.d, a.p);
  while (n) {
    if (n & 1) acc = fp_mul(acc, base);
    base = fp_mul(base, base);
    n >>= 1;
  }
  return acc;
}

uint64_t count_homs(uint64_t p, const RingCtx& ctx) {
  if (p < 2 || (p <= ctx.N && ctx.N % p == 0)) fail_domain("count_homs: p divides N");
  uint64_t r = 1;
  for (unsigned i = 0; i < ctx.t; ++i) {
    if (r > UINT64_MAX / p) fail_budget("count_homs: p^t overflows");
    r *= p;
  }
  return r;
}

uint64_t eval_mod_p(const RingElement& r, const Specialization& phi) {
  const uint64_t p = phi.p;
  if (r.t() != phi.point.size()) fail_domain("eval_mod_p: point arity mismatch");
  if (p <= r.N() && r.N() % p == 0) fail_domain("eval_mod_p: p divides N");
  uint64_t n_inv = invmod(r.N() % p, p);
  uint64_t acc = 0;
  for (const auto& [mono, coeff] : r.terms()) {
    uint64_t c = mpz_fdiv_ui(coeff.num.get_mpz_t(), p);
    if (coeff.exp > 0) c = mulmod(c, powmod(n_inv, coeff.exp, p), p);
    for (unsigned i = 0; i < mono.size(); ++i) {
      if (mono[i]) c = mulmod(c, powmod(phi.point[i] % p, mono[i], p), p);
    }
    acc = addmod(acc, c, p);
  }
  return acc;
}

Specialization sample_hom(uint64_t p, const GroupSpec& spec, uint64_t seed, uint64_t stream) {
  if (!is_prime(p)) fail_domain("sample_hom: p must be prime");
  if (p <= spec.ctx.N && spec.ctx.N % p == 0) fail_domain("sample_hom: p divides N");
  const unsigned t = spec.ctx.t;
  Specialization phi{p, std::vector<uint64_t>(t, 0)};
  if (t == 0) {
    if (eval_mod_p(spec.localizer, phi) == 0)
      fail_domain("sample_hom: localizer vanishes mod p");
    return phi;
  }
  Rng rng(seed, stream);
  const uint64_t max_draws = 64ULL * t;
  for (uint64_t draw = 0; draw < max_draws; ++draw) {
    for (unsigned i = 0; i < t; ++i) phi.point[i] = rng.below(p);
    if (eval_mod_p(spec.localizer, phi) != 0) return phi;
  }
  fail_budget("sample_hom: localizer rejected 64*t draws at p=" + std::to_string(p));
}

FpMatrix reduce_matrix(const MatPoly& m, const Specialization& phi) {
  FpMatrix r{m.dim(), phi.p, std::vector<uint64_t>(static_cast<std::size_t>(m.dim()) * m.dim(), 0)};
  for (unsigned i = 0; i < m.dim(); ++i) {
    for (unsigned j = 0; j < m.dim(); ++j) r.at(i, j) = eval_mod_p(m.at(i, j), phi);
  }
  if (fp_det(r) != 1 % phi.p) fail_internal("reduce_matrix: determinant did not reduce to 1");
  return r;
}

FpMatrix reduce_matrix(const GroupElement& g, const Specialization& phi) {
  return reduce_matrix(g.mat, phi);
}

unsigned degree_mod_p(const RingElement& s, uint64_t p) {
  unsigned deg = 0;
  mpz_class P(static_cast<unsigned long>(p));
  for (const auto& [mono, coeff] : s.terms()) {
    if (!mpz_divisible_p(coeff.num.get_mpz_t(), P.get_mpz_t()))
      deg = std::max(deg, mono_total_degree(mono));
  }
  return deg;
}

uint64_t count_zeros(const RingElement& s, uint64_t p, uint64_t cap) {
  if (p <= s.N() && s.N() % p == 0) fail_domain("count_zeros: p divides N");
  const unsigned t = s.t();
  // p^t must stay enumerable
  uint64_t total = 1;
  for (unsigned i = 0; i < t; ++i) {
    if (total > cap / p) fail_budget("count_zeros: p^t exceeds enumeration cap");
    total *= p;
  }
  bool reduced_nonzero = false;
  mpz_class P(static_cast<unsigned long>(p));
  for (const auto& [mono, coeff] : s.terms()) {
    (void)mono;
    if (!mpz_divisible_p(coeff.num.get_mpz_t(), P.get_mpz_t())) {
      reduced_nonzero = true;
      break;
    }
  }
  if (!reduced_nonzero) fail_domain("count_zeros: s reduces to 0 mod p");

  Specialization phi{p, std::vector<uint64_t>(t, 0)};
  uint64_t zeros = 0;
  for (uint64_t idx = 0; idx < total; ++idx) {
    uint64_t rest = idx;
    for (unsigned i = 0; i < t; ++i) {
      phi.point[i] = rest % p;
      rest /= p;
    }
    if (eval_mod_p(s, phi) == 0) ++zeros;
  }
  return zeros;
}

}  // namespace mifkit
