#include <doctest.h>

#include <cmath>
#include <map>

#include "gen.hpp"
#include "helpers.hpp"
#include "mifkit/error.hpp"
#include "mifkit/heights.hpp"
#include "mifkit/modp.hpp"
#include "mifkit/primes.hpp"

using namespace mifkit;

namespace {
RingCtx ctx0{2, 0, {}};
RingCtx ctx1{2, 1, {"x1"}};
RingCtx ctx2{2, 2, {"x1", "x2"}};
}  // namespace

TEST_CASE("count_homs is exactly p^t") {
  CHECK(count_homs(7, ctx0) == 1);
  CHECK(count_homs(5, ctx1) == 5);
  CHECK(count_homs(3, ctx2) == 9);
  CHECK_THROWS_AS(count_homs(2, ctx1), Error);  // p | N
}

TEST_CASE("reduce_matrix entries") {
  GroupSpec spec = load_group("free_pair.json");
  Specialization phi{5, {}};
  FpMatrix m = reduce_matrix(spec.gens[0], phi);
  CHECK(m.e == std::vector<uint64_t>{1, 2, 0, 1});

  // 3/2 mod 5 = 4 since 2 * 4 = 3 (mod 5)
  RingElement r = parse_poly("3/2", ctx0);
  CHECK(eval_mod_p(r, phi) == 4);

  GroupSpec fam = load_group("family.json");
  Specialization phi7{7, {3}};
  FpMatrix a3 = reduce_matrix(fam.gens[0], phi7);
  CHECK(a3.e == std::vector<uint64_t>{1, 3, 0, 1});
}

TEST_CASE("reduction is a ring homomorphism on matrices") {
  GroupSpec fam = load_group("family.json");
  Rng rng(31, 0);
  for (int i = 0; i < 400; ++i) {
    uint64_t p = 11;
    Specialization phi = sample_hom(p, fam, 7, static_cast<uint64_t>(i));
    GroupElement m1 = mifgen::random_ball_element(rng, fam, 4);
    GroupElement m2 = mifgen::random_ball_element(rng, fam, 4);
    CHECK(reduce_matrix(mat_mul(m1, m2), phi) == fp_mul(reduce_matrix(m1, phi), reduce_matrix(m2, phi)));
  }
}

TEST_CASE("sample_hom uniformity and localizer avoidance") {
  // t = 0: the unique reduction map regardless of seed
  GroupSpec spec = load_group("free_pair.json");
  CHECK(sample_hom(7, spec, 1).point.empty());
  CHECK(sample_hom(7, spec, 2).point.empty());

  // localizer x1 over p = 5: uniform over {1,2,3,4}
  GroupSpec fam = parse_group_spec(R"({
    "d": 2, "t": 1, "vars": ["s"], "localizer": "s",
    "generators": {"A": [["1","s"],["0","1"]], "B": [["1","0"],["2","1"]]}
  })");
  std::map<uint64_t, uint64_t> counts;
  const int draws = 20000;
  for (int i = 0; i < draws; ++i) {
    Specialization phi = sample_hom(5, fam, 1234, static_cast<uint64_t>(i));
    REQUIRE(phi.point[0] != 0);
    counts[phi.point[0]]++;
  }
  REQUIRE(counts.size() == 4);
  // chi^2 with 3 dof; 16.27 is the 0.001 quantile
  double expect = draws / 4.0;
  double chi2 = 0;
  for (auto& [v, c] : counts) chi2 += (c - expect) * (c - expect) / expect;
  CHECK(chi2 < 16.27);

  // chi^2 uniformity over the full F_11 line for the r = 1 family
  GroupSpec fam1 = load_group("family.json");
  std::map<uint64_t, uint64_t> c11;
  for (int i = 0; i < 11000; ++i) c11[sample_hom(11, fam1, 42, static_cast<uint64_t>(i)).point[0]]++;
  double e11 = 11000.0 / 11.0;
  double chi2b = 0;
  for (auto& [v, c] : c11) chi2b += (c - e11) * (c - e11) / e11;
  CHECK(c11.size() == 11);
  CHECK(chi2b < 29.59);  // 0.001 quantile, 10 dof
}

TEST_CASE("count_zeros examples and DKL bound") {
  CHECK(count_zeros(parse_poly("x1", ctx1), 7) == 1);
  CHECK(count_zeros(parse_poly("x1^2-1", ctx1), 7) == 2);
  CHECK(count_zeros(parse_poly("x1*x2", ctx2), 5) == 9);  // 2p - 1
  CHECK_THROWS_AS(count_zeros(parse_poly("7*x1", ctx1), 7), Error);   // s = 0 mod p
  CHECK_THROWS_AS(count_zeros(parse_poly("x1", ctx1), 999983, 10), Error);  // cap
}

TEST_CASE("DKL bound holds exhaustively on random polynomials") {
  Rng rng(77, 0);
  const uint64_t primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31};
  int done = 0;
  while (done < 1000) {
    unsigned t = static_cast<unsigned>(rng.range(1, 2));
    const RingCtx& ctx = t == 1 ? ctx1 : ctx2;
    RingElement s = mifgen::random_nonzero_poly(rng, ctx, 6, 6, 50, 2);
    uint64_t p = primes[rng.below(10)];
    unsigned dp = degree_mod_p(s, p);
    if (dp == 0 && eval_mod_p(s, Specialization{p, std::vector<uint64_t>(t, 0)}) == 0) continue;
    bool all_div = true;
    for (const auto& [m, c] : s.terms()) {
      (void)m;
      if (mpz_fdiv_ui(c.num.get_mpz_t(), p) != 0) {
        all_div = false;
        break;
      }
    }
    if (all_div) continue;  // precondition of count_zeros
    ++done;
    uint64_t zeros = count_zeros(s, p);
    double bound = static_cast<double>(dp) * std::pow(static_cast<double>(p), static_cast<double>(t) - 1.0);
    CHECK(static_cast<double>(zeros) <= bound + 1e-9);
  }
}

TEST_CASE("random specialization bound with the DKL-derived constant") {
  // Pr(phi(s) = 0) <= h(s)/p follows from DKL since deg <= h; the measured
  // constant is max over the corpus of Pr * p / h and must stay <= 1.
  Rng rng(78, 0);
  double measured_C = 0;
  int done = 0;
  while (done < 500) {
    unsigned t = static_cast<unsigned>(rng.range(1, 2));
    const RingCtx& ctx = t == 1 ? ctx1 : ctx2;
    RingElement s = mifgen::random_nonzero_poly(rng, ctx, 5, 5, 40, 2);
    uint64_t p = 31;
    bool all_div = true;
    for (const auto& [m, c] : s.terms()) {
      (void)m;
      if (mpz_fdiv_ui(c.num.get_mpz_t(), p) != 0) {
        all_div = false;
        break;
      }
    }
    if (all_div) continue;
    ++done;
    double h = height_poly(s);
    if (h <= 0) continue;
    uint64_t zeros = count_zeros(s, p);
    double pr = static_cast<double>(zeros) / static_cast<double>(count_homs(p, ctx));
    CHECK(pr <= h / static_cast<double>(p) + 1e-12);
    measured_C = std::max(measured_C, pr * static_cast<double>(p) / h);
  }
  CHECK(measured_C <= 1.0 + 1e-12);
}

TEST_CASE("fp matrix primitives") {
  FpMatrix a{2, 7, {1, 2, 0, 1}};
  FpMatrix b = fp_inverse(a);
  CHECK(fp_mul(a, b).is_identity());
  CHECK(fp_det(a) == 1);
  CHECK(fp_pow(a, 3).e == std::vector<uint64_t>{1, 6, 0, 1});
  CHECK(fp_pow(a, -2).e == std::vector<uint64_t>{1, 3, 0, 1});
  FpMatrix bad{2, 7, {2, 0, 0, 1}};
  CHECK_THROWS_AS(fp_inverse(bad), Error);
}
