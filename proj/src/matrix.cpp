#include "mifkit/matrix.hpp"

#include <sstream>

#include "mifkit/error.hpp"

namespace mifkit {

MatPoly::MatPoly(unsigned d, const RingCtx& ctx) : d_(d) {
  if (d < 1) fail_domain("MatPoly: dimension must be >= 1");
  e_.assign(static_cast<std::size_t>(d) * d, RingElement::zero(ctx));
}

MatPoly MatPoly::identity(unsigned d, const RingCtx& ctx) {
  MatPoly m(d, ctx);
  for (unsigned i = 0; i < d; ++i) m.at(i, i) = RingElement::from_int(ctx, 1);
  return m;
}

MatPoly MatPoly::operator*(const MatPoly& o) const {
  if (d_ != o.d_) fail_domain("MatPoly: dimension mismatch in product");
  MatPoly r;
  r.d_ = d_;
  r.e_.reserve(static_cast<std::size_t>(d_) * d_);
  for (unsigned i = 0; i < d_; ++i) {
    for (unsigned j = 0; j < d_; ++j) {
      RingElement s = at(i, 0) * o.at(0, j);
      for (unsigned k = 1; k < d_; ++k) s = s + at(i, k) * o.at(k, j);
      r.e_.push_back(std::move(s));
    }
  }
  return r;
}

bool MatPoly::is_identity() const {
  for (unsigned i = 0; i < d_; ++i) {
    for (unsigned j = 0; j < d_; ++j) {
      const RingElement& v = at(i, j);
      if (i == j ? !v.is_one() : !v.is_zero()) return false;
    }
  }
  return true;
}

namespace {

RingElement det_rec(const MatPoly& m, std::vector<unsigned>& rows, std::vector<unsigned>& cols) {
  const unsigned n = static_cast<unsigned>(rows.size());
  if (n == 1) return m.at(rows[0], cols[0]);
  unsigned r0 = rows[0];
  std::vector<unsigned> sub_rows(rows.begin() + 1, rows.end());
  RingElement acc;
  bool started = false;
  for (unsigned jidx = 0; jidx < n; ++jidx) {
    const RingElement& pivot = m.at(r0, cols[jidx]);
    if (pivot.is_zero()) continue;
    std::vector<unsigned> sub_cols;
    sub_cols.reserve(n - 1);
    for (unsigned k = 0; k < n; ++k) {
      if (k != jidx) sub_cols.push_back(cols[k]);
    }
    RingElement minor = det_rec(m, sub_rows, sub_cols);
    RingElement term = pivot * minor;
    if (jidx % 2 == 1) term = -term;
    acc = started ? acc + term : term;
    started = true;
  }
  if (!started) {
    RingCtx ctx{m.at(0, 0).N(), m.at(0, 0).t(), {}};
    return RingElement(ctx.N, ctx.t);
  }
  return acc;
}

}  // namespace

RingElement MatPoly::determinant() const {
  std::vector<unsigned> rows(d_), cols(d_);
  for (unsigned i = 0; i < d_; ++i) rows[i] = cols[i] = i;
  return det_rec(*this, rows, cols);
}

MatPoly MatPoly::adjugate() const {
  RingCtx ctx{at(0, 0).N(), at(0, 0).t(), {}};
  MatPoly adj(d_, ctx);
  if (d_ == 1) {
    adj.at(0, 0) = RingElement::from_int(ctx, 1);
    return adj;
  }
  for (unsigned i = 0; i < d_; ++i) {
    for (unsigned j = 0; j < d_; ++j) {
      std::vector<unsigned> rows, cols;
      for (unsigned r = 0; r < d_; ++r)
        if (r != i) rows.push_back(r);
      for (unsigned c = 0; c < d_; ++c)
        if (c != j) cols.push_back(c);
      RingElement minor = det_rec(*this, rows, cols);
      if ((i + j) % 2 == 1) minor = -minor;
      adj.at(j, i) = std::move(minor);  // transpose of cofactors
    }
  }
  return adj;
}

std::string MatPoly::key(const RingCtx& ctx) const {
  std::ostringstream out;
  for (unsigned i = 0; i < d_; ++i) {
    for (unsigned j = 0; j < d_; ++j) out << at(i, j).to_string(ctx) << ";";
  }
  return out.str();
}

uint64_t GroupElement::length() const {
  if (!has_word) fail_domain("GroupElement: length of an external element is undefined");
  return word.size();
}

std::vector<int> free_reduce(std::span<const int> word) {
  std::vector<int> out;
  out.reserve(word.size());
  for (int s : word) {
    if (s == 0) fail_domain("free_reduce: zero letter");
    if (!out.empty() && out.back() == -s) {
      out.pop_back();
    } else {
      out.push_back(s);
    }
  }
  return out;
}

GroupElement ge_external(MatPoly m) { return GroupElement{std::move(m), {}, false}; }

GroupElement ge_identity(unsigned d, const RingCtx& ctx) {
  return GroupElement{MatPoly::identity(d, ctx), {}, true};
}

GroupElement mat_mul(const GroupElement& a, const GroupElement& b) {
  GroupElement r;
  r.mat = a.mat * b.mat;
  r.has_word = a.has_word && b.has_word;
  if (r.has_word) {
    std::vector<int> w = a.word;
    w.insert(w.end(), b.word.begin(), b.word.end());
    r.word = free_reduce(w);
  }
  return r;
}

GroupElement mat_inv(const GroupElement& a) {
  if (!a.mat.determinant().is_one()) fail_domain("mat_inv: determinant is not 1");
  GroupElement r;
  r.mat = a.mat.adjugate();
  r.has_word = a.has_word;
  if (a.has_word) {
    r.word.reserve(a.word.size());
    for (auto it = a.word.rbegin(); it != a.word.rend(); ++it) r.word.push_back(-*it);
  }
  return r;
}

}  // namespace mifkit
