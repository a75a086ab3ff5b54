#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "equid/errors.hpp"
#include "equid/intpoly.hpp"
#include "oracles.hpp"

using namespace equid;

TEST_CASE("parse dense and sparse forms") {
  CHECK(parse_poly("-1, 0, 1") == IntPolynomial({-1, 0, 1}));
  CHECK(parse_poly("\xE2\x88\x92" "1, 0, 1") == IntPolynomial({-1, 0, 1}));
  CHECK(parse_poly("z^3 - 1").coeffs() == IntPolynomial({-1, 0, 0, 1}).coeffs());
  CHECK(parse_poly("z^3 \xE2\x88\x92 1") == IntPolynomial({-1, 0, 0, 1}));
  CHECK(parse_poly("2*z^2 - 2") == IntPolynomial({-2, 0, 2}));
  CHECK(parse_poly("-z + 3z^2 + z") == IntPolynomial({0, 0, 3}));
  CHECK(parse_poly("5") == IntPolynomial({5}));
  CHECK(parse_poly("123456789012345678901234567890*z + 1").leading() ==
        ExactInteger("123456789012345678901234567890"));
  CHECK(parse_poly("0, 0").is_zero());
}

TEST_CASE("parse rejects malformed input") {
  CHECK_THROWS_AS(parse_poly(""), ParseError);
  CHECK_THROWS_AS(parse_poly("   "), ParseError);
  CHECK_THROWS_AS(parse_poly("1, 2.5"), ParseError);
  CHECK_THROWS_AS(parse_poly("1,,2"), ParseError);
  CHECK_THROWS_AS(parse_poly("0.5*z + 1"), ParseError);
  CHECK_THROWS_AS(parse_poly("z^ + 1"), ParseError);
  CHECK_THROWS_AS(parse_poly("z z"), ParseError);
  CHECK_THROWS_AS(parse_poly("x^2 + 1"), ParseError);
}

TEST_CASE("dense text round-trips through the parser") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    IntPolynomial p = oracle::random_poly(rng, 1 + i % 12, 1000);
    CHECK(parse_poly(p.to_dense_string()) == p);
    CHECK(parse_poly(p.to_string()) == p);
  }
}

TEST_CASE("zero polynomial is tagged") {
  IntPolynomial z;
  CHECK(z.is_zero());
  CHECK_THROWS_AS(z.degree(), ZeroPolynomial);
  CHECK_THROWS_AS(resultant(z, IntPolynomial({1, 1})), ZeroPolynomial);
  CHECK(z.to_dense_string() == "0");
}

TEST_CASE("derivative") {
  CHECK(derivative(IntPolynomial({-1, 0, 1})) == IntPolynomial({0, 2}));
  CHECK(derivative(IntPolynomial({5})).is_zero());
  CHECK(derivative(IntPolynomial({-1, 0, 0, 1})) == IntPolynomial({0, 0, 3}));
}

TEST_CASE("resultant examples") {
  CHECK(resultant(IntPolynomial({-1, 0, 1}), IntPolynomial({0, 2})) == -4);
  CHECK(resultant(IntPolynomial({-1, 1}), IntPolynomial({1, 1})) == 2);
  CHECK(resultant(IntPolynomial({7}), IntPolynomial({1, 0, 1})) == 49);
  CHECK(resultant(IntPolynomial({1, 0, 1}), IntPolynomial({3})) == 9);
}

TEST_CASE("resultant matches the Sylvester determinant on random pairs") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 400; ++trial) {
    const int dp = 1 + trial % 4;
    const int dq = 1 + (trial / 4) % 4;
    IntPolynomial p = oracle::random_poly(rng, dp, 6);
    IntPolynomial q = oracle::random_poly(rng, dq, 6);
    if (trial % 7 == 0) q = q * IntPolynomial({1, 1});
    if (trial % 11 == 0) p = p * IntPolynomial({1, 1});
    CAPTURE(p.to_string());
    CAPTURE(q.to_string());
    CHECK(resultant(p, q) == oracle::sylvester_resultant(p, q));
  }
  // up to degree 8 with non-primitive inputs
  for (int trial = 0; trial < 60; ++trial) {
    IntPolynomial p = ExactInteger(2 + trial % 3) * oracle::random_poly(rng, 5 + trial % 4, 20);
    IntPolynomial q = oracle::random_poly(rng, 3 + trial % 6, 20);
    CHECK(resultant(p, q) == oracle::sylvester_resultant(p, q));
  }
}

TEST_CASE("discriminant examples") {
  CHECK(discriminant(IntPolynomial({-1, 0, 1})) == 4);
  CHECK(discriminant(IntPolynomial({-1, 0, 0, 1})) == -27);
  CHECK(discriminant(IntPolynomial({1, -2, 1})) == 0);
  CHECK(discriminant(IntPolynomial({3, 5})) == 1);
  CHECK_THROWS_AS(discriminant(IntPolynomial({4})), DegreeZero);
}

TEST_CASE("discriminant agrees with the Sylvester route") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 120; ++trial) {
    IntPolynomial p = oracle::random_poly(rng, 1 + trial % 8, 9);
    const long n = p.degree();
    ExactInteger syl = oracle::sylvester_resultant(p, derivative(p));
    ExactInteger expect;
    mpz_divexact(expect.get_mpz_t(), syl.get_mpz_t(), p.leading().get_mpz_t());
    if ((n * (n - 1) / 2) % 2) expect = -expect;
    CHECK(discriminant(p) == expect);
  }
}

TEST_CASE("square-free iff nonzero discriminant") {
  CHECK(is_squarefree(parse_poly("z^5 - 1")));
  CHECK_FALSE(is_squarefree(pow(IntPolynomial({-1, 1}), 2) * IntPolynomial({1, 1})));
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    IntPolynomial p = oracle::random_poly(rng, 1 + trial % 6, 4);
    if (trial % 3 == 0) {
      IntPolynomial q = oracle::random_poly(rng, 1 + trial % 2, 3);
      p = p * q * q;
    }
    CAPTURE(p.to_string());
    CHECK(is_squarefree(p) == (discriminant(p) != 0));
  }
}

TEST_CASE("modular square-free test never certifies a repeated factor") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    IntPolynomial q = oracle::random_poly(rng, 1 + trial % 3, 50);
    IntPolynomial p = oracle::random_poly(rng, trial % 5 + 1, 50) * q * q;
    CHECK_FALSE(squarefree_modular(p));
  }
}

TEST_CASE("square-free decomposition recovers multiplicities") {
  IntPolynomial a({-1, 1}), b({1, 1}), c({1, 0, 1});
  IntPolynomial p = ExactInteger(6) * a * pow(b, 3) * pow(c, 2);
  auto parts = squarefree_decomposition(p);
  REQUIRE(parts.size() == 3);
  CHECK(parts[0].first == a);
  CHECK(parts[0].second == 1);
  CHECK(parts[1].first == c);
  CHECK(parts[1].second == 2);
  CHECK(parts[2].first == b);
  CHECK(parts[2].second == 3);
}

TEST_CASE("factor multiplicity") {
  IntPolynomial zm1({-1, 1});
  CHECK(factor_multiplicity(pow(zm1, 3) * IntPolynomial({1, 1}), zm1) == 3);
  CHECK(factor_multiplicity(parse_poly("z^4 - 1"), parse_poly("z^2 + 1")) == 1);
  CHECK(factor_multiplicity(parse_poly("z^4 - 1"), parse_poly("z - 2")) == 0);
  // divisible over Q but not over Z
  CHECK(factor_multiplicity(parse_poly("z + 1"), parse_poly("2*z + 2")) == 0);
  CHECK_THROWS_AS(factor_multiplicity(parse_poly("z^2"), IntPolynomial({3})), DegreeZero);
}

TEST_CASE("factor multiplicity is additive under multiplication") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    IntPolynomial q = oracle::random_poly(rng, 1 + trial % 3, 5).primitive_part();
    IntPolynomial p = oracle::random_poly(rng, 1 + trial % 5, 5);
    const unsigned m = trial % 4;
    CHECK(factor_multiplicity(p * pow(q, m), q) == factor_multiplicity(p, q) + m);
  }
}

TEST_CASE("power sums") {
  for (unsigned n = 2; n <= 9; ++n) {
    auto ps = power_sums(IntPolynomial::monomial(1, n) - IntPolynomial({1}), n + 1);
    for (unsigned m = 1; m < n; ++m) CHECK(ps[m - 1] == 0);
    CHECK(ps[n - 1] == n);
  }
  auto ps = power_sums(IntPolynomial({2, -3, 1}), 2);
  CHECK(ps[0] == 3);
  CHECK(ps[1] == 5);
  // non-monic: roots 1/2 and -1/3 of 6z^2 - z - 1
  auto q = power_sums(IntPolynomial({-1, -1, 6}), 3);
  CHECK(q[0] == ExactRational(1, 6));
  CHECK(q[1] == ExactRational(1, 4) + ExactRational(1, 9));
  CHECK(q[2] == ExactRational(1, 8) - ExactRational(1, 27));
}

TEST_CASE("power sums satisfy Newton's identities exactly") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    IntPolynomial p = oracle::random_poly(rng, 1 + trial % 8, 12);
    const unsigned n = p.degree();
    const unsigned mmax = 2 * n + 3;
    auto ps = power_sums(p, mmax);
    const auto& a = p.coeffs();
    for (unsigned m = 1; m <= mmax; ++m) {
      // a_n p_m + a_{n-1} p_{m-1} + ... + m a_{n-m} = 0, with a_j = 0 for j < 0
      ExactRational acc = ExactRational(a[n]) * ps[m - 1];
      for (unsigned j = 1; j < m && j <= n; ++j) acc += ExactRational(a[n - j]) * ps[m - j - 1];
      if (m <= n) acc += ExactRational(a[n - m]) * m;
      CHECK(acc == 0);
    }
    CHECK(ps[0] / n == exact_mean(p));
  }
}

TEST_CASE("log of exact integers") {
  CHECK(log_abs(ExactInteger(1)) == doctest::Approx(0.0));
  CHECK(log_abs(ExactInteger(-1000)) == doctest::Approx(std::log(1000.0)).epsilon(1e-15));
  ExactInteger big;
  mpz_ui_pow_ui(big.get_mpz_t(), 10, 1000);
  CHECK(log_abs(big) == doctest::Approx(1000 * std::log(10.0)).epsilon(1e-14));
  CHECK(std::isinf(log_abs(ExactInteger(0))));
}

TEST_CASE("deflation at the origin") {
  unsigned k = 0;
  CHECK(deflate_origin(parse_poly("z^5 + 2*z^3"), &k) == parse_poly("z^2 + 2"));
  CHECK(k == 3);
}
