#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "prophecke/gf.hpp"
#include "prophecke/intlin.hpp"
#include "prophecke/laurent.hpp"

using namespace prophecke;

TEST_CASE("prime power factorization") {
  int p, s;
  factor_prime_power(3, p, s);
  CHECK(p == 3);
  CHECK(s == 1);
  factor_prime_power(4, p, s);
  CHECK(p == 2);
  CHECK(s == 2);
  factor_prime_power(27, p, s);
  CHECK(p == 3);
  CHECK(s == 3);
  CHECK_THROWS(factor_prime_power(6, p, s));
  CHECK_THROWS(factor_prime_power(12, p, s));
}

TEST_CASE("field axioms over several small fields") {
  for (auto [p, m] : {std::pair{3, 1}, {5, 1}, {2, 2}, {3, 2}, {5, 4}, {2, 3}}) {
    GF f(p, m);
    int q = f.q();
    // additive and multiplicative identities
    for (Fel a = 0; a < q; ++a) {
      CHECK(f.add(a, f.zero) == a);
      CHECK(f.mul(a, f.one) == a);
      CHECK(f.add(a, f.neg(a)) == f.zero);
      if (a != 0) CHECK(f.mul(a, f.inv(a)) == f.one);
    }
    // associativity / distributivity on all triples for tiny fields
    if (q <= 9) {
      for (Fel a = 0; a < q; ++a)
        for (Fel b = 0; b < q; ++b)
          for (Fel c = 0; c < q; ++c) {
            CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
            CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
            CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
          }
    }
    // characteristic
    Fel s = f.zero;
    for (int i = 0; i < p; ++i) s = f.add(s, f.one);
    CHECK(s == f.zero);
    // generator order
    CHECK(f.order(f.gen()) == q - 1);
  }
}

TEST_CASE("field roots and embeddings") {
  GF f3(3, 1), f9(3, 2);
  // -1 has no square root in F_3 but two in F_9
  Fel m1 = f3.from_int(-1);
  CHECK(f3.roots(m1, 2).empty());
  Fel m1_big = f9.embed(f3, m1);
  auto rs = f9.roots(m1_big, 2);
  REQUIRE(rs.size() == 2);
  for (Fel r : rs) CHECK(f9.mul(r, r) == m1_big);
  // embedding is multiplicative
  for (Fel a = 0; a < 3; ++a)
    for (Fel b = 0; b < 3; ++b)
      CHECK(f9.embed(f3, f3.mul(a, b)) == f9.mul(f9.embed(f3, a), f9.embed(f3, b)));
}

TEST_CASE("Laurent ring basics") {
  Laurent q = Laurent::q_power(1);
  Laurent one = Laurent::of_int(1);
  CHECK((q * q) == Laurent::q_power(2));
  CHECK((q - q).is_zero());
  CHECK((one + q - one) == q);
  Laurent a = Laurent::of_int(-1) + Laurent::q_power(1).scaled(2) - Laurent::q_power(2);
  CHECK(a.to_string() == "-1 + 2*q - q^2");
  CHECK(a.is_q_polynomial());
  CHECK_FALSE(Laurent::q_power(-1).is_q_polynomial());
  CHECK_FALSE(Laurent::v_power(1).is_q_polynomial());
  CHECK(a.constant_term() == -1);
  // ring laws on a few elements
  Laurent b = Laurent::v_power(-3) + Laurent::of_int(4);
  Laurent c = Laurent::q_power(2) - Laurent::v_power(1);
  CHECK(((a + b) * c) == (a * c + b * c));
  CHECK((a * b) == (b * a));
}

TEST_CASE("Smith normal form") {
  // coroot lattice of GL2 inside Z^2: single column (1, -1)
  IMat m(2, 1);
  m.at(0, 0) = 1;
  m.at(1, 0) = -1;
  auto snf = smith_normal_form(m);
  REQUIRE(snf.divisors.size() == 1);
  CHECK(snf.divisors[0] == 1);
  // U * A * V == D
  IMat lhs = snf.u.mul(m).mul(snf.v);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 1; ++j) CHECK(lhs.at(i, j) == snf.d.at(i, j));

  // PGL2: coroot = 2 in Z^1 -> quotient Z/2
  IMat m2(1, 1);
  m2.at(0, 0) = 2;
  auto snf2 = smith_normal_form(m2);
  REQUIRE(snf2.divisors.size() == 1);
  CHECK(snf2.divisors[0] == 2);

  // 3x3 example: gcd of entries 2, gcd of 2x2 minors 4, det 624
  IMat m3(3, 3);
  long long vals[3][3] = {{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m3.at(i, j) = vals[i][j];
  auto snf3 = smith_normal_form(m3);
  REQUIRE(snf3.divisors.size() == 3);
  CHECK(snf3.divisors[0] == 2);
  CHECK(snf3.divisors[1] == 2);
  CHECK(snf3.divisors[2] == 156);
  CHECK(snf3.divisors[1] % snf3.divisors[0] == 0);
  CHECK(snf3.divisors[2] % snf3.divisors[1] == 0);
  IMat lhs3 = snf3.u.mul(m3).mul(snf3.v);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(lhs3.at(i, j) == snf3.d.at(i, j));
}

TEST_CASE("rational solve for cone membership") {
  // express (1,-1) in the basis {(1,-1)}: coefficient 1
  IMat a(2, 1);
  a.at(0, 0) = 1;
  a.at(1, 0) = -1;
  std::vector<long long> num;
  long long den;
  CHECK(solve_rational(a, {1, -1}, num, den));
  CHECK(num[0] == den);
  CHECK_FALSE(solve_rational(a, {1, 1}, num, den));
  // half-integral solution
  IMat b(1, 1);
  b.at(0, 0) = 2;
  CHECK(solve_rational(b, {1}, num, den));
  CHECK(2 * num[0] == den);  // num/den == 1/2
}
