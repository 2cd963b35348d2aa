#include <doctest.h>

#include "gen.hpp"
#include "helpers.hpp"
#include "mifkit/error.hpp"
#include "mifkit/matrix.hpp"
#include "mifkit/ring.hpp"

using namespace mifkit;

namespace {

RingCtx ctx0{2, 0, {}};
RingCtx ctx1{2, 1, {"s"}};

long as_int(const RingElement& r) {
  REQUIRE(r.is_constant());
  if (r.is_zero()) return 0;
  const NLocInt& c = r.terms().begin()->second;
  REQUIRE(c.exp == 0);
  return static_cast<long>(c.num.get_si());
}

MatPoly int_mat(const RingCtx& ctx, long a, long b, long c, long d) {
  MatPoly m(2, ctx);
  m.at(0, 0) = RingElement::from_int(ctx, a);
  m.at(0, 1) = RingElement::from_int(ctx, b);
  m.at(1, 0) = RingElement::from_int(ctx, c);
  m.at(1, 1) = RingElement::from_int(ctx, d);
  return m;
}

}  // namespace

TEST_CASE("canonical_scalar normal forms") {
  NLocInt a = canonical_scalar(6, 1, 2);
  CHECK(a.num == 3);
  CHECK(a.exp == 0);
  NLocInt b = canonical_scalar(3, 1, 2);
  CHECK(b.num == 3);
  CHECK(b.exp == 1);
  NLocInt z = canonical_scalar(0, 5, 2);
  CHECK(z.num == 0);
  CHECK(z.exp == 0);
}

TEST_CASE("canonical_scalar is idempotent and value-preserving") {
  Rng rng(7, 0);
  for (int i = 0; i < 2000; ++i) {
    long num = rng.range(-10000, 10000);
    long k = rng.range(0, 8);
    unsigned N = static_cast<unsigned>(rng.range(2, 6));
    NLocInt c = canonical_scalar(num, k, N);
    NLocInt c2 = canonical_scalar(c.num, c.exp, N);
    CHECK(c == c2);
    // value check: c.num * N^k == num * N^{c.exp}
    mpz_class base(N), lhs, rhs;
    mpz_pow_ui(lhs.get_mpz_t(), base.get_mpz_t(), k);
    lhs *= c.num;
    mpz_pow_ui(rhs.get_mpz_t(), base.get_mpz_t(), c.exp);
    rhs *= num;
    CHECK(lhs == rhs);
    if (c.exp > 0) CHECK(c.num % N != 0);
  }
}

TEST_CASE("mat_mul matches the direct 2x2 integer oracle") {
  MatPoly A = int_mat(ctx0, 1, 2, 0, 1);
  MatPoly B = int_mat(ctx0, 1, 0, 2, 1);
  MatPoly AB = A * B;
  // oracle: plain integer arithmetic
  long a[2][2] = {{1, 2}, {0, 1}}, b[2][2] = {{1, 0}, {2, 1}}, c[2][2] = {};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) c[i][j] += a[i][k] * b[k][j];
  CHECK(c[0][0] == 5);
  for (unsigned i = 0; i < 2; ++i)
    for (unsigned j = 0; j < 2; ++j) CHECK(as_int(AB.at(i, j)) == c[i][j]);
}

TEST_CASE("A times its inverse is the identity") {
  GroupElement A{int_mat(ctx0, 1, 2, 0, 1), {1}, true};
  GroupElement Ainv = mat_inv(A);
  CHECK(mat_mul(A, Ainv).mat.is_identity());
  CHECK(Ainv.word == std::vector<int>{-1});
}

TEST_CASE("symbolic product [[1,s],[0,1]] * [[1,0],[2,1]]") {
  MatPoly A(2, ctx1);
  A.at(0, 0) = RingElement::from_int(ctx1, 1);
  A.at(0, 1) = RingElement::variable(ctx1, 0);
  A.at(1, 0) = RingElement::zero(ctx1);
  A.at(1, 1) = RingElement::from_int(ctx1, 1);
  MatPoly B = int_mat(ctx1, 1, 0, 2, 1);
  MatPoly AB = A * B;
  CHECK(AB.at(0, 0) == parse_poly("1+2*s", ctx1));
  CHECK(AB.at(0, 1) == parse_poly("s", ctx1));
  CHECK(AB.at(1, 0) == parse_poly("2", ctx1));
  CHECK(AB.at(1, 1) == parse_poly("1", ctx1));
  CHECK(AB.determinant().is_one());

  // adjugate oracle for the inverse
  GroupElement g{AB, {1, 2}, true};
  GroupElement inv = mat_inv(g);
  CHECK(inv.mat.at(0, 0) == parse_poly("1", ctx1));
  CHECK(inv.mat.at(0, 1) == parse_poly("-s", ctx1));
  CHECK(inv.mat.at(1, 0) == parse_poly("-2", ctx1));
  CHECK(inv.mat.at(1, 1) == parse_poly("1+2*s", ctx1));
  CHECK(mat_mul(g, inv).mat.is_identity());
}

TEST_CASE("mat_inv rejects non-unimodular input") {
  GroupElement bad{int_mat(ctx0, 2, 0, 0, 1), {}, false};
  CHECK_THROWS_AS(mat_inv(bad), Error);
}

TEST_CASE("ring axioms on random samples") {
  // associativity / commutativity / distributivity, deg <= 4, t <= 2
  for (unsigned t : {0u, 1u, 2u}) {
    RingCtx ctx{2, t, {}};
    for (unsigned v = 0; v < t; ++v) ctx.vars.push_back("x" + std::to_string(v + 1));
    Rng rng(42, t);
    int samples = t == 2 ? 4000 : 3000;  // 10^4 total across contexts
    for (int i = 0; i < samples; ++i) {
      RingElement a = mifgen::random_poly(rng, ctx, 4, 4, 50, 3);
      RingElement b = mifgen::random_poly(rng, ctx, 4, 4, 50, 3);
      RingElement c = mifgen::random_poly(rng, ctx, 4, 4, 50, 3);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * b == b * a);
      CHECK(a + b == b + a);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a + b) + c == a + (b + c));
    }
  }
}

TEST_CASE("matrix group axioms over random generator products") {
  GroupSpec spec = load_group("free_pair.json");
  Rng rng(5, 0);
  for (int i = 0; i < 1000; ++i) {
    GroupElement A = mifgen::random_ball_element(rng, spec, 6);
    GroupElement B = mifgen::random_ball_element(rng, spec, 6);
    GroupElement AB = mat_mul(A, B);
    // (AB)^-1 = B^-1 A^-1
    CHECK(mat_inv(AB).mat == mat_mul(mat_inv(B), mat_inv(A)).mat);
    // det multiplicativity (all dets are 1 here)
    CHECK(AB.mat.determinant().is_one());
    // word trace reproduces entries
    CHECK(spec.element_of_word(AB.word).mat == AB.mat);
  }
}

TEST_CASE("parse_group_spec validates and builds symmetric sets") {
  GroupSpec g = load_group("free_pair.json");
  CHECK(g.sym_size() == 4);
  CHECK(g.ctx.N == 2);  // integral entries normalize to the smallest base
  CHECK(g.ctx.t == 0);
  CHECK(mat_mul(g.gens[0], g.gens_inv[0]).mat.is_identity());
  CHECK(mat_mul(g.gens[1], g.gens_inv[1]).mat.is_identity());

  GroupSpec fam = load_group("family.json");
  CHECK(fam.ctx.t == 1);
  CHECK(fam.localizer.is_one());

  CHECK_THROWS_AS(parse_group_spec(R"({"d":2,"generators":{"A":[["2","0"],["0","1"]]}})"), Error);
  CHECK_THROWS_AS(parse_group_spec(R"({"d":2,"generators":{"x":[["1","0"],["0","1"]]}})"), Error);
  CHECK_THROWS_AS(parse_group_spec(R"({"d":2,"t":1,"vars":["x"],"generators":{"A":[["1","0"],["0","1"]]}})"),
                  Error);
  CHECK_THROWS_AS(parse_group_spec("not json"), Error);
}

TEST_CASE("external elements refuse length queries") {
  GroupElement ext = ge_external(int_mat(ctx0, 1, 2, 0, 1));
  CHECK_THROWS_AS(ext.length(), Error);
  GroupElement id = ge_identity(2, ctx0);
  CHECK(id.length() == 0);
}

TEST_CASE("poly parsing grammar corners") {
  CHECK(parse_poly("3/2", ctx0) == RingElement::constant(ctx0, canonical_scalar(3, 1, 2)));
  CHECK(parse_poly("-2", ctx0) == RingElement::from_int(ctx0, -2));
  CHECK(parse_poly("0", ctx1).is_zero());
  CHECK(parse_poly("s^2", ctx1) == RingElement::variable(ctx1, 0, 2));
  CHECK(parse_poly("2*s - s", ctx1) == RingElement::variable(ctx1, 0));
  CHECK(parse_poly("-s + s", ctx1).is_zero());
  CHECK(parse_poly("1/4", ctx0) == RingElement::constant(ctx0, canonical_scalar(1, 2, 2)));
  CHECK_THROWS_AS(parse_poly("1/3", ctx0), Error);  // 3 is not a power of 2
  CHECK_THROWS_AS(parse_poly("y", ctx1), Error);
  CHECK_THROWS_AS(parse_poly("", ctx1), Error);
  CHECK_THROWS_AS(parse_poly("1 +", ctx1), Error);
  // round trip through to_string
  Rng rng(11, 0);
  for (int i = 0; i < 500; ++i) {
    RingElement r = mifgen::random_poly(rng, ctx1, 5, 4, 99, 3);
    CHECK(parse_poly(r.to_string(ctx1), ctx1) == r);
  }
}
