#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mifkit/groupspec.hpp"
#include "mifkit/matrix.hpp"
#include "mifkit/modp.hpp"

namespace mifkit {

// One syllable of an element of Gamma * <x>: either a group constant (with a
// nonempty generator word) or a nonzero power of x.
struct GammaSyllable {
  GroupElement g;
};
struct XSyllable {
  long exp;
};
using Syllable = std::variant<GammaSyllable, XSyllable>;

// Reduced alternating form: no adjacent syllables of the same kind, no
// identity constants, no zero x-powers. Construction goes through reduce(),
// so a MixedWord is reduced by invariant.
class MixedWord {
 public:
  MixedWord() = default;

  const std::vector<Syllable>& syllables() const { return syl_; }
  bool trivial() const { return syl_.empty(); }
  // sum of generator-word lengths plus sum of |x-exponents|
  uint64_t length() const;
  uint64_t x_occurrences() const;

  std::string to_string(const GroupSpec& spec) const;
  bool operator==(const MixedWord& o) const;

  static MixedWord from_syllables(std::vector<Syllable> syl);  // reduces

 private:
  std::vector<Syllable> syl_;
};

// Whitespace-separated tokens `ident(^int)?`, ident a generator name or "x".
MixedWord parse_word(const std::string& text, const GroupSpec& spec);

MixedWord reduce_concat(const MixedWord& a, const MixedWord& b);
MixedWord word_inverse(const MixedWord& w);
MixedWord word_pow_x(long e);                       // the word x^e
MixedWord word_constant(const GroupElement& g);     // one Gamma syllable
MixedWord commutator(const MixedWord& u, const MixedWord& v);  // u v u^-1 v^-1
MixedWord conjugate(const MixedWord& w, const MixedWord& alpha);  // alpha^-1 w alpha

// Substitutes gamma for x. The result's word is the substituted generator
// word when gamma carries one.
GroupElement evaluate(const MixedWord& w, const GroupSpec& spec, const GroupElement& gamma);

// Same computation folded from the right; used to cross-check certificates.
GroupElement evaluate_reversed(const MixedWord& w, const GroupSpec& spec, const GroupElement& gamma);

// Substitutes gamma_p for x after reducing every constant through phi.
FpMatrix evaluate_mod_p(const MixedWord& w, const GroupSpec& spec, const FpMatrix& gamma_p,
                        const Specialization& phi);

struct IdentitySpec {
  enum class Kind { FiniteNormalized, InfiniteAbelianNormalized, Centralized };
  Kind kind;
  GroupElement a;      // FiniteNormalized / InfiniteAbelianNormalized
  GroupElement b, c;   // Centralized
  unsigned k = 1;      // index factorial
  unsigned order = 1;  // |A| for FiniteNormalized
};

// Lemma-style identity words: [x^k, a]^{|A|}, [x^k a x^-k, a], [x^k b x^-k, c].
// The group-theoretic hypotheses are the caller's responsibility.
MixedWord identity_factory(const IdentitySpec& is, const GroupSpec& spec);

// Conjugator candidates, in fixed order: 1, sigma1, sigma2, x, x^-1.
inline constexpr unsigned kNumConjugators = 5;

struct CombinePair {
  MixedWord word;
  unsigned alpha1 = 0;  // index into the candidate list
  unsigned alpha2 = 0;
};

// First candidate pair (lexicographic over the 5x5 grid) whose commutator
// [w1^a1, w2^a2] is nontrivial in the free product.
CombinePair combine_pair(const MixedWord& w1, const MixedWord& w2, const GroupSpec& spec);

struct CombineAudit {
  uint64_t max_input_len = 0;   // n
  uint64_t input_count = 0;     // k
  unsigned rounds = 0;          // m = ceil(log2 k)
  uint64_t final_len = 0;
  uint64_t length_bound = 0;    // n * 2m * k^2
  bool within_bound = false;
  uint64_t max_participation = 0;  // how often one input word occurs in W
};

// Binary commutator tree over the inputs (odd element passes through each
// round). For every gamma, W(gamma) != 1 implies w_i(gamma) != 1 for all i.
MixedWord combine_all(const std::vector<MixedWord>& words, const GroupSpec& spec,
                      CombineAudit* audit = nullptr);

}  // namespace mifkit
