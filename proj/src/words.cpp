#include "mifkit/words.hpp"

#include <cctype>
#include <sstream>

#include "mifkit/error.hpp"

namespace mifkit {

namespace {

bool is_gamma(const Syllable& s) { return std::holds_alternative<GammaSyllable>(s); }

// Stack reduction: push one syllable, then merge same-kind neighbours at the
// seam. A merge that vanishes exposes a new seam, so the fixup loops.
std::vector<Syllable> reduce_syllables(std::vector<Syllable> in) {
  std::vector<Syllable> out;
  out.reserve(in.size());
  for (auto& s : in) {
    if (is_gamma(s)) {
      if (std::get<GammaSyllable>(s).g.mat.is_identity()) continue;
    } else {
      if (std::get<XSyllable>(s).exp == 0) continue;
    }
    out.push_back(std::move(s));
    while (out.size() >= 2) {
      Syllable& a = out[out.size() - 2];
      Syllable& b = out.back();
      if (is_gamma(a) && is_gamma(b)) {
        GroupElement prod = mat_mul(std::get<GammaSyllable>(a).g, std::get<GammaSyllable>(b).g);
        out.pop_back();
        if (prod.mat.is_identity()) {
          out.pop_back();
        } else {
          std::get<GammaSyllable>(out.back()).g = std::move(prod);
        }
      } else if (!is_gamma(a) && !is_gamma(b)) {
        long e = std::get<XSyllable>(a).exp + std::get<XSyllable>(b).exp;
        out.pop_back();
        if (e == 0) {
          out.pop_back();
        } else {
          std::get<XSyllable>(out.back()).exp = e;
        }
      } else {
        break;
      }
    }
  }
  return out;
}

}  // namespace

MixedWord MixedWord::from_syllables(std::vector<Syllable> syl) {
  MixedWord w;
  w.syl_ = reduce_syllables(std::move(syl));
  return w;
}

uint64_t MixedWord::length() const {
  uint64_t n = 0;
  for (const auto& s : syl_) {
    if (is_gamma(s)) {
      n += std::get<GammaSyllable>(s).g.length();
    } else {
      long e = std::get<XSyllable>(s).exp;
      n += static_cast<uint64_t>(e < 0 ? -e : e);
    }
  }
  return n;
}

uint64_t MixedWord::x_occurrences() const {
  uint64_t n = 0;
  for (const auto& s : syl_) {
    if (!is_gamma(s)) {
      long e = std::get<XSyllable>(s).exp;
      n += static_cast<uint64_t>(e < 0 ? -e : e);
    }
  }
  return n;
}

bool MixedWord::operator==(const MixedWord& o) const {
  if (syl_.size() != o.syl_.size()) return false;
  for (std::size_t i = 0; i < syl_.size(); ++i) {
    if (is_gamma(syl_[i]) != is_gamma(o.syl_[i])) return false;
    if (is_gamma(syl_[i])) {
      if (!(std::get<GammaSyllable>(syl_[i]).g.mat == std::get<GammaSyllable>(o.syl_[i]).g.mat))
        return false;
    } else {
      if (std::get<XSyllable>(syl_[i]).exp != std::get<XSyllable>(o.syl_[i]).exp) return false;
    }
  }
  return true;
}

std::string MixedWord::to_string(const GroupSpec& spec) const {
  if (syl_.empty()) return "";
  std::ostringstream out;
  bool first = true;
  for (const auto& s : syl_) {
    if (!first) out << " ";
    if (is_gamma(s)) {
      out << spec.word_to_string(std::get<GammaSyllable>(s).g.word);
    } else {
      long e = std::get<XSyllable>(s).exp;
      out << "x";
      if (e != 1) out << "^" << e;
    }
    first = false;
  }
  return out.str();
}

MixedWord parse_word(const std::string& text, const GroupSpec& spec) {
  std::vector<Syllable> syl;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    std::string ident = token;
    long e = 1;
    if (auto caret = token.find('^'); caret != std::string::npos) {
      ident = token.substr(0, caret);
      std::string exp_str = token.substr(caret + 1);
      try {
        std::size_t used = 0;
        e = std::stol(exp_str, &used);
        if (used != exp_str.size()) throw std::invalid_argument(exp_str);
      } catch (const std::exception&) {
        fail_parse("word: malformed exponent in token '" + token + "'");
      }
    }
    if (ident == "x") {
      syl.push_back(XSyllable{e});
      continue;
    }
    int idx = -1;
    for (std::size_t i = 0; i < spec.names.size(); ++i) {
      if (spec.names[i] == ident) {
        idx = static_cast<int>(i) + 1;
        break;
      }
    }
    if (idx < 0) fail_parse("word: unknown generator name '" + ident + "'");
    if (e == 0) continue;
    const GroupElement& base = e > 0 ? spec.letter(idx) : spec.letter(-idx);
    GroupElement acc = base;
    for (long i = 1; i < (e < 0 ? -e : e); ++i) acc = mat_mul(acc, base);
    syl.push_back(GammaSyllable{std::move(acc)});
  }
  return MixedWord::from_syllables(std::move(syl));
}

MixedWord reduce_concat(const MixedWord& a, const MixedWord& b) {
  std::vector<Syllable> syl = a.syllables();
  syl.insert(syl.end(), b.syllables().begin(), b.syllables().end());
  return MixedWord::from_syllables(std::move(syl));
}

MixedWord word_inverse(const MixedWord& w) {
  std::vector<Syllable> syl;
  syl.reserve(w.syllables().size());
  for (auto it = w.syllables().rbegin(); it != w.syllables().rend(); ++it) {
    if (is_gamma(*it)) {
      syl.push_back(GammaSyllable{mat_inv(std::get<GammaSyllable>(*it).g)});
    } else {
      syl.push_back(XSyllable{-std::get<XSyllable>(*it).exp});
    }
  }
  return MixedWord::from_syllables(std::move(syl));
}

MixedWord word_pow_x(long e) {
  return MixedWord::from_syllables({XSyllable{e}});
}

MixedWord word_constant(const GroupElement& g) {
  if (!g.has_word || g.word.empty()) fail_domain("word_constant: constant must carry a nonempty generator word");
  return MixedWord::from_syllables({GammaSyllable{g}});
}

MixedWord commutator(const MixedWord& u, const MixedWord& v) {
  return reduce_concat(reduce_concat(u, v), reduce_concat(word_inverse(u), word_inverse(v)));
}

MixedWord conjugate(const MixedWord& w, const MixedWord& alpha) {
  return reduce_concat(reduce_concat(word_inverse(alpha), w), alpha);
}

GroupElement evaluate(const MixedWord& w, const GroupSpec& spec, const GroupElement& gamma) {
  if (gamma.mat.dim() != spec.d) fail_domain("evaluate: dimension mismatch");
  GroupElement acc = ge_identity(spec.d, spec.ctx);
  GroupElement gamma_inv;  // computed lazily
  bool have_inv = false;
  for (const auto& s : w.syllables()) {
    if (is_gamma(s)) {
      acc = mat_mul(acc, std::get<GammaSyllable>(s).g);
    } else {
      long e = std::get<XSyllable>(s).exp;
      const GroupElement* step = &gamma;
      if (e < 0) {
        if (!have_inv) {
          gamma_inv = mat_inv(gamma);
          have_inv = true;
        }
        step = &gamma_inv;
      }
      for (long i = 0; i < (e < 0 ? -e : e); ++i) acc = mat_mul(acc, *step);
    }
  }
  return acc;
}

GroupElement evaluate_reversed(const MixedWord& w, const GroupSpec& spec, const GroupElement& gamma) {
  if (gamma.mat.dim() != spec.d) fail_domain("evaluate: dimension mismatch");
  GroupElement acc = ge_identity(spec.d, spec.ctx);
  GroupElement gamma_inv;
  bool have_inv = false;
  const auto& syls = w.syllables();
  for (auto it = syls.rbegin(); it != syls.rend(); ++it) {
    if (is_gamma(*it)) {
      acc = mat_mul(std::get<GammaSyllable>(*it).g, acc);
    } else {
      long e = std::get<XSyllable>(*it).exp;
      const GroupElement* step = &gamma;
      if (e < 0) {
        if (!have_inv) {
          gamma_inv = mat_inv(gamma);
          have_inv = true;
        }
        step = &gamma_inv;
      }
      for (long i = 0; i < (e < 0 ? -e : e); ++i) acc = mat_mul(*step, acc);
    }
  }
  return acc;
}

FpMatrix evaluate_mod_p(const MixedWord& w, const GroupSpec& spec, const FpMatrix& gamma_p,
                        const Specialization& phi) {
  if (gamma_p.d != spec.d || gamma_p.p != phi.p) fail_domain("evaluate_mod_p: shape mismatch");
  FpMatrix acc = fp_identity(spec.d, phi.p);
  FpMatrix gamma_inv;
  bool have_inv = false;
  for (const auto& s : w.syllables()) {
    if (is_gamma(s)) {
      acc = fp_mul(acc, reduce_matrix(std::get<GammaSyllable>(s).g, phi));
    } else {
      long e = std::get<XSyllable>(s).exp;
      const FpMatrix* step = &gamma_p;
      if (e < 0) {
        if (!have_inv) {
          gamma_inv = fp_inverse(gamma_p);
          have_inv = true;
        }
        step = &gamma_inv;
      }
      for (long i = 0; i < (e < 0 ? -e : e); ++i) acc = fp_mul(acc, *step);
    }
  }
  return acc;
}

MixedWord identity_factory(const IdentitySpec& is, const GroupSpec& spec) {
  if (is.k < 1) fail_domain("identity_factory: k must be >= 1");
  auto check_nontrivial = [](const GroupElement& g, const char* which) {
    if (g.mat.is_identity()) fail_domain(std::string("identity_factory: parameter ") + which + " is trivial");
  };
  const MixedWord xk = word_pow_x(static_cast<long>(is.k));
  switch (is.kind) {
    case IdentitySpec::Kind::FiniteNormalized: {
      check_nontrivial(is.a, "a");
      if (is.order < 1) fail_domain("identity_factory: |A| must be >= 1");
      // [x^k, a]^|A|
      MixedWord comm = commutator(xk, word_constant(is.a));
      MixedWord acc;
      for (unsigned i = 0; i < is.order; ++i) acc = reduce_concat(acc, comm);
      return acc;
    }
    case IdentitySpec::Kind::InfiniteAbelianNormalized: {
      check_nontrivial(is.a, "a");
      // [x^k a x^-k, a]
      MixedWord conj = reduce_concat(reduce_concat(xk, word_constant(is.a)), word_pow_x(-static_cast<long>(is.k)));
      return commutator(conj, word_constant(is.a));
    }
    case IdentitySpec::Kind::Centralized: {
      check_nontrivial(is.b, "b");
      check_nontrivial(is.c, "c");
      // [x^k b x^-k, c]
      MixedWord conj = reduce_concat(reduce_concat(xk, word_constant(is.b)), word_pow_x(-static_cast<long>(is.k)));
      return commutator(conj, word_constant(is.c));
    }
  }
  fail_internal("identity_factory: unreachable");
}

namespace {

// candidate conjugators 1, sigma1, sigma2, x, x^-1 as mixed words
std::vector<MixedWord> conjugator_candidates(const GroupSpec& spec) {
  if (spec.gens.size() < 2)
    fail_domain("combine: need at least two distinct non-inverse generators");
  std::vector<MixedWord> cands;
  cands.push_back(MixedWord());  // 1
  cands.push_back(word_constant(spec.gens[0]));
  cands.push_back(word_constant(spec.gens[1]));
  cands.push_back(word_pow_x(1));
  cands.push_back(word_pow_x(-1));
  return cands;
}

}  // namespace

CombinePair combine_pair(const MixedWord& w1, const MixedWord& w2, const GroupSpec& spec) {
  if (w1.trivial() || w2.trivial()) fail_domain("combine_pair: trivial input word");
  const auto cands = conjugator_candidates(spec);
  for (unsigned a1 = 0; a1 < kNumConjugators; ++a1) {
    MixedWord u = a1 == 0 ? w1 : conjugate(w1, cands[a1]);
    for (unsigned a2 = 0; a2 < kNumConjugators; ++a2) {
      MixedWord v = a2 == 0 ? w2 : conjugate(w2, cands[a2]);
      MixedWord c = commutator(u, v);
      if (!c.trivial()) return CombinePair{std::move(c), a1, a2};
    }
  }
  fail_internal("combine_pair: no nontrivial commutator among the 25 candidates");
}

MixedWord combine_all(const std::vector<MixedWord>& words, const GroupSpec& spec,
                      CombineAudit* audit) {
  if (words.empty()) fail_domain("combine_all: empty word list");
  for (const auto& w : words) {
    if (w.trivial()) fail_domain("combine_all: trivial member");
  }
  const uint64_t k = words.size();
  uint64_t n = 0;
  for (const auto& w : words) n = std::max(n, w.length());

  std::vector<MixedWord> layer = words;
  std::vector<uint64_t> participation(words.size(), 1);
  std::vector<std::vector<std::size_t>> members(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) members[i] = {i};

  unsigned rounds = 0;
  while (layer.size() > 1) {
    std::vector<MixedWord> next;
    std::vector<std::vector<std::size_t>> next_members;
    for (std::size_t i = 0; i + 1 < layer.size(); i += 2) {
      CombinePair cp = combine_pair(layer[i], layer[i + 1], spec);
      next.push_back(std::move(cp.word));
      std::vector<std::size_t> merged = members[i];
      merged.insert(merged.end(), members[i + 1].begin(), members[i + 1].end());
      next_members.push_back(std::move(merged));
    }
    if (layer.size() % 2 == 1) {
      next.push_back(layer.back());
      next_members.push_back(members.back());
    }
    // participation doubles for every word that went through a commutator
    for (std::size_t i = 0; i + 1 < layer.size(); i += 2) {
      for (std::size_t idx : members[i]) participation[idx] *= 2;
      for (std::size_t idx : members[i + 1]) participation[idx] *= 2;
    }
    layer = std::move(next);
    members = std::move(next_members);
    ++rounds;
  }

  if (audit) {
    audit->max_input_len = n;
    audit->input_count = k;
    audit->rounds = rounds;
    audit->final_len = layer[0].length();
    unsigned m = 0;
    while ((1ULL << m) < k) ++m;  // ceil(log2 k)
    audit->length_bound = n * 2 * static_cast<uint64_t>(std::max(1u, m)) * k * k;
    audit->within_bound = audit->final_len <= audit->length_bound || k == 1;
    audit->max_participation = 0;
    for (uint64_t c : participation) audit->max_participation = std::max(audit->max_participation, c);
  }
  return layer[0];
}

}  // namespace mifkit
