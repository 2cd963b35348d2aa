#include "mifkit/ring.hpp"

#include <cctype>
#include <sstream>

#include "mifkit/error.hpp"

namespace mifkit {

void RingCtx::validate() const {
  if (N < 2) fail_domain("RingCtx: N must be >= 2");
  if (vars.size() != t) fail_domain("RingCtx: variable name count must equal t");
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i] == "x") fail_domain("RingCtx: identifier 'x' is reserved for the word variable");
    if (vars[i].empty()) fail_domain("RingCtx: empty variable name");
    for (std::size_t j = i + 1; j < vars.size(); ++j) {
      if (vars[i] == vars[j]) fail_domain("RingCtx: duplicate variable name " + vars[i]);
    }
  }
}

NLocInt canonical_scalar(mpz_class numerator, long denom_exp, unsigned N) {
  if (N < 2) fail_domain("canonical_scalar: N must be >= 2");
  NLocInt r;
  if (numerator == 0) return r;  // (0, 0)
  if (denom_exp < 0) {
    // negative exponent means a multiplier N^{-denom_exp}
    mpz_class base(N);
    mpz_class scale;
    mpz_pow_ui(scale.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(-denom_exp));
    numerator *= scale;
    denom_exp = 0;
  }
  mpz_class n(N);
  // strip factors of N while the value stays integral
  while (denom_exp > 0 && mpz_divisible_p(numerator.get_mpz_t(), n.get_mpz_t())) {
    numerator /= n;
    --denom_exp;
  }
  r.num = numerator;
  r.exp = static_cast<unsigned>(denom_exp);
  return r;
}

NLocInt nloc_add(const NLocInt& a, const NLocInt& b, unsigned N) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  unsigned k = std::max(a.exp, b.exp);
  mpz_class base(N), sa, sb;
  mpz_pow_ui(sa.get_mpz_t(), base.get_mpz_t(), k - a.exp);
  mpz_pow_ui(sb.get_mpz_t(), base.get_mpz_t(), k - b.exp);
  return canonical_scalar(a.num * sa + b.num * sb, static_cast<long>(k), N);
}

NLocInt nloc_mul(const NLocInt& a, const NLocInt& b, unsigned N) {
  if (a.is_zero() || b.is_zero()) return NLocInt{};
  return canonical_scalar(a.num * b.num, static_cast<long>(a.exp) + b.exp, N);
}

NLocInt nloc_neg(const NLocInt& a) { return NLocInt{-a.num, a.exp}; }

std::string nloc_to_string(const NLocInt& a, unsigned N) {
  if (a.exp == 0) return a.num.get_str();
  mpz_class base(N), den;
  mpz_pow_ui(den.get_mpz_t(), base.get_mpz_t(), a.exp);
  return a.num.get_str() + "/" + den.get_str();
}

RingElement RingElement::constant(const RingCtx& ctx, NLocInt c) {
  RingElement r(ctx.N, ctx.t);
  if (!c.is_zero()) r.terms_.emplace(Mono(ctx.t, 0), std::move(c));
  return r;
}

RingElement RingElement::from_int(const RingCtx& ctx, long v) {
  return constant(ctx, canonical_scalar(mpz_class(v), 0, ctx.N));
}

RingElement RingElement::variable(const RingCtx& ctx, unsigned i, unsigned power) {
  if (i >= ctx.t) fail_domain("RingElement::variable: index out of range");
  RingElement r(ctx.N, ctx.t);
  if (power == 0) return from_int(ctx, 1);
  Mono m(ctx.t, 0);
  m[i] = power;
  r.terms_.emplace(std::move(m), canonical_scalar(1, 0, ctx.N));
  return r;
}

bool RingElement::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && mono_total_degree(terms_.begin()->first) == 0;
}

bool RingElement::is_one() const {
  return terms_.size() == 1 && mono_total_degree(terms_.begin()->first) == 0 &&
         terms_.begin()->second.is_one();
}

unsigned RingElement::degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, mono_total_degree(m));
  return d;
}

void RingElement::add_term(const Mono& m, const NLocInt& c) {
  if (m.size() != t_) fail_domain("add_term: monomial arity mismatch");
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  NLocInt s = nloc_add(it->second, c, N_);
  if (s.is_zero()) {
    terms_.erase(it);
  } else {
    it->second = std::move(s);
  }
}

RingElement RingElement::operator+(const RingElement& o) const {
  if (N_ != o.N_ || t_ != o.t_) fail_domain("RingElement: mixed ring contexts");
  RingElement r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

RingElement RingElement::operator-(const RingElement& o) const { return *this + (-o); }

RingElement RingElement::operator-() const {
  RingElement r(N_, t_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, nloc_neg(c));
  return r;
}

RingElement RingElement::operator*(const RingElement& o) const {
  if (N_ != o.N_ || t_ != o.t_) fail_domain("RingElement: mixed ring contexts");
  RingElement r(N_, t_);
  Mono m(t_, 0);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      for (unsigned i = 0; i < t_; ++i) m[i] = ma[i] + mb[i];
      r.add_term(m, nloc_mul(ca, cb, N_));
    }
  }
  return r;
}

RingElement RingElement::pow(unsigned e) const {
  RingElement base = *this;
  RingElement acc(N_, t_);
  acc.terms_.emplace(Mono(t_, 0), canonical_scalar(1, 0, N_));
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

std::string RingElement::to_string(const RingCtx& ctx) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    NLocInt coeff = c;
    bool neg = coeff.num < 0;
    if (first) {
      if (neg) out << "-";
    } else {
      out << (neg ? " - " : " + ");
    }
    if (neg) coeff.num = -coeff.num;
    unsigned deg = mono_total_degree(m);
    bool unit_coeff = coeff.is_one();
    if (!unit_coeff || deg == 0) out << nloc_to_string(coeff, ctx.N);
    bool printed = !unit_coeff || deg == 0;
    for (unsigned i = 0; i < t_; ++i) {
      if (m[i] == 0) continue;
      if (printed) out << "*";
      out << (i < ctx.vars.size() ? ctx.vars[i] : "x" + std::to_string(i + 1));
      if (m[i] > 1) out << "^" << m[i];
      printed = true;
    }
    first = false;
  }
  return out.str();
}

namespace {

struct PolyLexer {
  const std::string& s;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eof() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++i;
      return true;
    }
    return false;
  }
  std::string ident() {
    skip_ws();
    std::size_t start = i;
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
    if (start == i) fail_parse("polynomial: expected identifier at offset " + std::to_string(start) + " in '" + s + "'");
    return s.substr(start, i - start);
  }
  mpz_class uint_lit() {
    skip_ws();
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) fail_parse("polynomial: expected integer at offset " + std::to_string(start) + " in '" + s + "'");
    return mpz_class(s.substr(start, i - start));
  }
};

// Denominators must divide a power of N (grammar: powers of N; composite N
// makes "divides a power" the usable reading). Returns the exponent k and
// the compensating multiplier so that 1/den == mult/N^k.
std::pair<unsigned, mpz_class> denom_as_power(const mpz_class& den, unsigned N) {
  mpz_class base(N);
  mpz_class acc(1);
  unsigned k = 0;
  while (acc % den != 0) {
    acc *= base;
    ++k;
    if (k > 64) fail_parse("polynomial: denominator " + den.get_str() + " does not divide a power of N=" + std::to_string(N));
  }
  return {k, acc / den};
}

}  // namespace

RingElement parse_poly(const std::string& text, const RingCtx& ctx) {
  PolyLexer lx{text};
  RingElement poly = RingElement::zero(ctx);
  bool lead_neg = lx.accept('-');
  bool first = true;
  while (true) {
    int sign = 1;
    if (first) {
      sign = lead_neg ? -1 : 1;
    } else {
      if (lx.eof()) break;
      if (lx.accept('+')) {
        sign = 1;
      } else if (lx.accept('-')) {
        sign = -1;
      } else {
        fail_parse("polynomial: expected '+' or '-' at offset " + std::to_string(lx.i) + " in '" + text + "'");
      }
    }
    first = false;
    // one term: optional coefficient, then variable factors
    NLocInt coeff = canonical_scalar(sign, 0, ctx.N);
    Mono mono(ctx.t, 0);
    bool saw_factor = false;
    bool expect_factor = true;
    while (expect_factor) {
      char c = lx.peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        mpz_class num = lx.uint_lit();
        unsigned k = 0;
        if (lx.accept('/')) {
          mpz_class den = lx.uint_lit();
          if (den == 0) fail_parse("polynomial: zero denominator");
          auto [kk, mult] = denom_as_power(den, ctx.N);
          num *= mult;
          k = kk;
        }
        coeff = nloc_mul(coeff, canonical_scalar(num, k, ctx.N), ctx.N);
        saw_factor = true;
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string name = lx.ident();
        unsigned idx = ctx.t;
        for (unsigned v = 0; v < ctx.t; ++v) {
          if (ctx.vars[v] == name) {
            idx = v;
            break;
          }
        }
        if (idx == ctx.t) fail_parse("polynomial: unknown variable '" + name + "'");
        unsigned e = 1;
        if (lx.accept('^')) {
          mpz_class ee = lx.uint_lit();
          if (ee > 10000) fail_parse("polynomial: exponent too large");
          e = static_cast<unsigned>(ee.get_ui());
        }
        mono[idx] += e;
        saw_factor = true;
      } else {
        fail_parse("polynomial: expected term at offset " + std::to_string(lx.i) + " in '" + text + "'");
      }
      expect_factor = lx.accept('*');
    }
    if (!saw_factor) fail_parse("polynomial: empty term in '" + text + "'");
    poly.add_term(mono, coeff);
  }
  return poly;
}

}  // namespace mifkit
