#include <doctest.h>

#include "gen.hpp"
#include "helpers.hpp"
#include "mifkit/error.hpp"
#include "mifkit/modp.hpp"
#include "mifkit/words.hpp"

using namespace mifkit;

namespace {

long entry_int(const RingElement& r) {
  if (r.is_zero()) return 0;
  REQUIRE(r.is_constant());
  REQUIRE(r.terms().begin()->second.exp == 0);
  return static_cast<long>(r.terms().begin()->second.num.get_si());
}

}  // namespace

TEST_CASE("parse_word reduces to free-product normal form") {
  GroupSpec spec = load_group("free_pair.json");
  CHECK(parse_word("x x^-1", spec).trivial());

  MixedWord w = parse_word("A x^2 A^-1 A x^-1", spec);
  REQUIRE(w.syllables().size() == 2);  // [A, x]
  CHECK(w.length() == 2);
  CHECK(w.to_string(spec) == "A x");

  MixedWord c = parse_word("A x A^-1 x^-1", spec);
  CHECK(c.syllables().size() == 4);
  CHECK(c.length() == 4);

  CHECK_THROWS_AS(parse_word("Q x", spec), Error);
  CHECK_THROWS_AS(parse_word("A x^z", spec), Error);
}

TEST_CASE("reduce corner cases") {
  GroupSpec spec = load_group("free_pair.json");
  // [A, A^-1] -> empty
  std::vector<Syllable> syl{GammaSyllable{spec.gens[0]}, GammaSyllable{spec.gens_inv[0]}};
  CHECK(MixedWord::from_syllables(syl).trivial());
  // [A, x, x^-1, B] -> [AB]
  std::vector<Syllable> syl2{GammaSyllable{spec.gens[0]}, XSyllable{1}, XSyllable{-1},
                             GammaSyllable{spec.gens[1]}};
  MixedWord w = MixedWord::from_syllables(syl2);
  REQUIRE(w.syllables().size() == 1);
  CHECK(std::get<GammaSyllable>(w.syllables()[0]).g.mat == mat_mul(spec.gens[0], spec.gens[1]).mat);
  // and if the two constants cancel, the word vanishes
  std::vector<Syllable> syl3{GammaSyllable{spec.gens[0]}, XSyllable{1}, XSyllable{-1},
                             GammaSyllable{spec.gens_inv[0]}};
  CHECK(MixedWord::from_syllables(syl3).trivial());
}

TEST_CASE("evaluate substitution semantics") {
  GroupSpec spec = load_group("free_pair.json");
  const GroupElement& A = spec.gens[0];
  const GroupElement& B = spec.gens[1];

  CHECK(evaluate(parse_word("x", spec), spec, A).mat == A.mat);
  CHECK(evaluate(parse_word("A x A^-1 x^-1", spec), spec, A).mat.is_identity());

  GroupElement w_at_B = evaluate(parse_word("A x A^-1 x^-1", spec), spec, B);
  CHECK(entry_int(w_at_B.mat.at(0, 0)) == 21);
  CHECK(entry_int(w_at_B.mat.at(0, 1)) == -8);
  CHECK(entry_int(w_at_B.mat.at(1, 0)) == 8);
  CHECK(entry_int(w_at_B.mat.at(1, 1)) == -3);
  CHECK(w_at_B.mat.determinant().is_one());
}

TEST_CASE("evaluate_mod_p matches reduced exact evaluation") {
  GroupSpec spec = load_group("free_pair.json");
  Specialization phi{5, {}};
  FpMatrix B5 = reduce_matrix(spec.gens[1], phi);
  FpMatrix m = evaluate_mod_p(parse_word("A x A^-1 x^-1", spec), spec, B5, phi);
  CHECK(m.e == std::vector<uint64_t>{1, 2, 3, 2});  // [[21,-8],[8,-3]] mod 5

  CHECK(evaluate_mod_p(MixedWord(), spec, B5, phi).is_identity());
  FpMatrix arbitrary{2, 5, {2, 1, 1, 1}};
  CHECK(evaluate_mod_p(parse_word("x", spec), spec, arbitrary, phi) == arbitrary);
}

TEST_CASE("reduce is idempotent and evaluation-invariant on random words") {
  GroupSpec spec = load_group("free_pair.json");
  Rng rng(21, 0);
  for (int i = 0; i < 1000; ++i) {
    MixedWord w = mifgen::random_word(rng, spec, 8);
    // from_syllables(reduced syllables) must be a fixed point
    MixedWord again = MixedWord::from_syllables(w.syllables());
    CHECK(again == w);
    GroupElement gamma = mifgen::random_ball_element(rng, spec, 4);
    CHECK(evaluate(w, spec, gamma).mat == evaluate(again, spec, gamma).mat);
  }
}

TEST_CASE("substitution is a homomorphism for fixed gamma") {
  GroupSpec spec = load_group("free_pair.json");
  Rng rng(22, 0);
  for (int i = 0; i < 500; ++i) {
    MixedWord u = mifgen::random_word(rng, spec, 6);
    MixedWord v = mifgen::random_word(rng, spec, 6);
    GroupElement gamma = mifgen::random_ball_element(rng, spec, 4);
    GroupElement lhs = evaluate(reduce_concat(u, v), spec, gamma);
    GroupElement rhs = mat_mul(evaluate(u, spec, gamma), evaluate(v, spec, gamma));
    CHECK(lhs.mat == rhs.mat);
    // inverse words evaluate to inverses
    CHECK(evaluate(word_inverse(u), spec, gamma).mat == mat_inv(evaluate(u, spec, gamma)).mat);
  }
}

TEST_CASE("mod-p commutation square on random words") {
  for (const char* file : {"free_pair.json", "family.json"}) {
    GroupSpec spec = load_group(file);
    Rng rng(23, spec.ctx.t);
    for (int i = 0; i < 500; ++i) {
      uint64_t p = 1000003;
      Specialization phi = sample_hom(p, spec, 99, static_cast<uint64_t>(i));
      MixedWord w = mifgen::random_word(rng, spec, 6);
      GroupElement gamma = mifgen::random_ball_element(rng, spec, 4);
      FpMatrix lhs = reduce_matrix(evaluate(w, spec, gamma), phi);
      FpMatrix rhs = evaluate_mod_p(w, spec, reduce_matrix(gamma, phi), phi);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("identity factory: central element") {
  GroupSpec spec = load_group("free_pair_center.json");
  // a = -I is central; [x, -I] evaluates to the identity everywhere
  IdentitySpec is{IdentitySpec::Kind::FiniteNormalized, spec.gens[2], {}, {}, 1, 2};
  MixedWord w = identity_factory(is, spec);
  CHECK(!w.trivial());
  Rng rng(24, 0);
  for (int i = 0; i < 200; ++i) {
    GroupElement gamma = mifgen::random_ball_element(rng, spec, 8);
    CHECK(evaluate(w, spec, gamma).mat.is_identity());
  }
}

TEST_CASE("identity factory: infinite abelian normalized subgroup") {
  GroupSpec spec = load_group("cyclic_t.json");
  // Gamma = <T> is abelian, A = <T> itself: [x T x^-1, T] = 1 identically
  IdentitySpec is{IdentitySpec::Kind::InfiniteAbelianNormalized, spec.gens[0], {}, {}, 1, 0};
  MixedWord w = identity_factory(is, spec);
  CHECK(!w.trivial());
  for (int j = -40; j <= 40; ++j) {
    std::vector<int> letters(static_cast<std::size_t>(j < 0 ? -j : j), j < 0 ? -1 : 1);
    GroupElement gamma = spec.element_of_word(letters);
    CHECK(evaluate(w, spec, gamma).mat.is_identity());
  }
}

TEST_CASE("identity factory: centralized pair") {
  GroupSpec spec = load_group("t_center.json");
  // b = T, c = -I central: [x T x^-1, -I] = 1 identically
  IdentitySpec is{IdentitySpec::Kind::Centralized, {}, spec.gens[0], spec.gens[1], 1, 0};
  MixedWord w = identity_factory(is, spec);
  CHECK(!w.trivial());
  Rng rng(25, 0);
  for (int i = 0; i < 200; ++i) {
    GroupElement gamma = mifgen::random_ball_element(rng, spec, 8);
    CHECK(evaluate(w, spec, gamma).mat.is_identity());
  }
}

TEST_CASE("identity factory rejects trivial parameters") {
  GroupSpec spec = load_group("free_pair.json");
  GroupElement id = ge_identity(2, spec.ctx);
  IdentitySpec is{IdentitySpec::Kind::FiniteNormalized, id, {}, {}, 1, 1};
  CHECK_THROWS_AS(identity_factory(is, spec), Error);
}

TEST_CASE("combine_pair finds the first working conjugator pair") {
  GroupSpec spec = load_group("free_pair.json");
  MixedWord x = parse_word("x", spec);
  MixedWord a = parse_word("A", spec);

  CombinePair cp = combine_pair(x, a, spec);
  CHECK(cp.alpha1 == 0);
  CHECK(cp.alpha2 == 0);
  CHECK(cp.word == commutator(x, a));
  CHECK(!cp.word.trivial());

  // powers of x commute, so conjugation is needed
  CombinePair cpx = combine_pair(x, x, spec);
  CHECK(!cpx.word.trivial());
  CHECK((cpx.alpha1 != 0 || cpx.alpha2 != 0));

  CHECK_THROWS_AS(combine_pair(MixedWord(), x, spec), Error);
}

TEST_CASE("combine_pair commutator evaluates as a commutator") {
  GroupSpec spec = load_group("free_pair.json");
  Rng rng(26, 0);
  for (int i = 0; i < 200; ++i) {
    MixedWord w1 = mifgen::random_nontrivial_word(rng, spec, 5);
    MixedWord w2 = mifgen::random_nontrivial_word(rng, spec, 5);
    CombinePair cp = combine_pair(w1, w2, spec);
    GroupElement gamma = mifgen::random_ball_element(rng, spec, 3);
    // rebuild the conjugated words to compare against the evaluated commutator
    std::vector<MixedWord> cands{MixedWord(), word_constant(spec.gens[0]),
                                 word_constant(spec.gens[1]), word_pow_x(1), word_pow_x(-1)};
    MixedWord u = cp.alpha1 == 0 ? w1 : conjugate(w1, cands[cp.alpha1]);
    MixedWord v = cp.alpha2 == 0 ? w2 : conjugate(w2, cands[cp.alpha2]);
    GroupElement ug = evaluate(u, spec, gamma);
    GroupElement vg = evaluate(v, spec, gamma);
    GroupElement comm = mat_mul(mat_mul(ug, vg), mat_mul(mat_inv(ug), mat_inv(vg)));
    CHECK(evaluate(cp.word, spec, gamma).mat == comm.mat);
  }
}

TEST_CASE("combine_all audit stays within the length bound") {
  GroupSpec spec = load_group("free_pair.json");
  Rng rng(27, 0);
  for (int iter = 0; iter < 30; ++iter) {
    unsigned k = static_cast<unsigned>(rng.range(1, 12));
    std::vector<MixedWord> words;
    uint64_t n = 0;
    for (unsigned i = 0; i < k; ++i) {
      MixedWord w = mifgen::random_nontrivial_word(rng, spec, 4);
      n = std::max(n, w.length());
      words.push_back(std::move(w));
    }
    CombineAudit audit;
    MixedWord W = combine_all(words, spec, &audit);
    CHECK(!W.trivial());
    CHECK(audit.input_count == k);
    CHECK(audit.max_input_len == n);
    CHECK(audit.within_bound);
    if (k == 1) CHECK(W == words[0]);
    if (k == 2) CHECK(W == combine_pair(words[0], words[1], spec).word);
  }
}

TEST_CASE("word serialization round-trips on reduced words") {
  GroupSpec spec = load_group("free_pair.json");
  Rng rng(28, 0);
  for (int i = 0; i < 500; ++i) {
    MixedWord w = mifgen::random_word(rng, spec, 8);
    MixedWord back = parse_word(w.to_string(spec), spec);
    CHECK(back == w);
    CHECK(back.to_string(spec) == w.to_string(spec));
  }
}
