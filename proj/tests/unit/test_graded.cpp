#include <doctest.h>

#include "hmzf/graded.hpp"
#include "hmzf/serialization.hpp"

using namespace hmzf;

TEST_CASE("dimension sequence") {
  CHECK(dimension(0) == 1);
  CHECK(dimension(1) == 0);
  CHECK(dimension(2) == 1);
  CHECK(dimension(3) == 2);
  CHECK(dimension(5) == 8);
  for (int n = 2; n <= 12; ++n) CHECK(dimension(n) == (std::int64_t{1} << (n - 2)));
}

TEST_CASE("exact linear algebra on rationals") {
  DenseMatrix<Rational> m(3, 3);
  m << Rational(1), Rational(2), Rational(3),
       Rational(2), Rational(4), Rational(6),
       Rational(1), Rational(0), Rational(1);
  CHECK(exact_rank(m) == 2);

  DenseMatrix<Rational> a(2, 2);
  a << Rational(1), Rational(1, 2), Rational(1, 3), Rational(1, 4);
  DenseVector<Rational> b(2);
  b << Rational(1), Rational(0);
  auto x = exact_solve(a, b);
  REQUIRE(x.has_value());
  for (Eigen::Index i = 0; i < 2; ++i) {
    Rational acc = 0;
    for (Eigen::Index j = 0; j < 2; ++j) acc += a(i, j) * (*x)(j);
    CHECK(acc == b(i));
  }
  CHECK((*x)(0) == Rational(3));      // inverse of the Hilbert-like block
  CHECK((*x)(1) == Rational(-4));

  IncrementalSpan<Rational> span(3);
  DenseVector<Rational> v1(3), v2(3), v3(3);
  v1 << 1, 2, 0;
  v2 << 2, 4, 0;
  v3 << 0, 0, 5;
  CHECK(span.insert(v1));
  CHECK_FALSE(span.insert(v2));
  CHECK(span.contains(v2));
  CHECK_FALSE(span.contains(v3));
  CHECK(span.insert(v3));
  CHECK(span.rank() == 2);
}

TEST_CASE("generator table small weights") {
  GeneratorTable t = GeneratorTable::build(5);
  CHECK(t.generators(2) == std::vector<Composition>{Composition{2}});
  CHECK(t.generators(3) == std::vector<Composition>{Composition{3}, Composition{2, 1}});
  CHECK(t.generators(4) ==
        std::vector<Composition>{Composition{4}, Composition{3, 1}, Composition{2, 1, 1}});
  CHECK(t.generators(5).size() == 6);
  CHECK_THROWS_AS(GeneratorTable::build(1), std::invalid_argument);
}

TEST_CASE("reduce worked examples") {
  GeneratorTable t = GeneratorTable::build(4);

  GeneratorPolynomial p = t.reduce(Composition{2, 2});
  GeneratorPolynomial expect;
  expect.add(GeneratorMonomial({{Composition{2}, 2}}), Rational(1, 2));
  expect.add(GeneratorMonomial({{Composition{4}, 1}}), Rational(-1, 2));
  CHECK(p == expect);

  CHECK(t.reduce(Composition{4}) ==
        [] {
          GeneratorPolynomial g;
          g.add(GeneratorMonomial({{Composition{4}, 1}}), 1);
          return g;
        }());
  CHECK(t.reduce(Composition{}) == GeneratorPolynomial::constant(1));
  CHECK_THROWS_AS(t.reduce(Composition{1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(t.reduce(Composition{4, 1}), std::invalid_argument);  // weight 5 > table
}

TEST_CASE("round trip: expansion of the normal form returns the basis element") {
  GeneratorTable t = GeneratorTable::build(6);
  for (int n = 0; n <= 6; ++n) {
    if (n == 1) continue;
    for (const auto& c : enumerate_compositions(n, true)) {
      FormalSum back = t.reduce(c).expand();
      CHECK(back == FormalSum::single(c, 1));
    }
  }
}

TEST_CASE("normal forms are weight homogeneous") {
  GeneratorTable t = GeneratorTable::build(6);
  for (int n = 2; n <= 6; ++n) {
    for (const auto& c : enumerate_compositions(n, true)) {
      for (const auto& [m, q] : t.reduce(c)) {
        CHECK(m.total_weight() == n);
      }
    }
  }
}

TEST_CASE("table build is deterministic") {
  GeneratorTable a = GeneratorTable::build(6);
  GeneratorTable b = GeneratorTable::build(6);
  for (int n = 2; n <= 6; ++n) CHECK(a.generators(n) == b.generators(n));
  CHECK(to_json(a) == to_json(b));
}

TEST_CASE("verify_freeness") {
  FreenessReport r4 = verify_freeness(4);
  CHECK(r4.all_ok);
  REQUIRE(r4.rows.size() == 3);
  CHECK(r4.rows[0].generator_count == 1);
  CHECK(r4.rows[1].generator_count == 2);
  CHECK(r4.rows[2].generator_count == 3);

  FreenessReport r5 = verify_freeness(5);
  CHECK(r5.all_ok);
  CHECK(r5.rows.back().generator_count == 6);
  CHECK(r5.rows.back().dim == 8);  // 6 + g2*g3 = 6 + 2 = 8 monomials

  FreenessReport r2 = verify_freeness(2);
  CHECK(r2.all_ok);
  CHECK(r2.rows.front().generator_count == 1);
  CHECK(r2.rows.front().dim == 1);

  // every weight deviates from the printed 2^(n-1) constant
  CHECK(r5.dimension_deviation_weights == std::vector<int>{2, 3, 4, 5});
}

TEST_CASE("generator counts match Lyndon counts to weight 7") {
  GeneratorTable t = GeneratorTable::build(7);
  for (int n = 2; n <= 7; ++n) {
    CHECK(static_cast<std::int64_t>(t.generators(n).size()) == count_lyndon(n));
  }
}

TEST_CASE("serialization round trips") {
  GeneratorTable t = GeneratorTable::build(4);
  GeneratorPolynomial p = t.reduce(Composition{2, 2});
  Json j = to_json(p);
  CHECK(generator_polynomial_from_json(j) == p);

  FormalSum s = sum_combine(FormalSum::single(Composition{2, 1}, Rational(-3, 7)),
                            FormalSum::single(Composition{}, 2), 1);
  CHECK(formal_sum_from_json(to_json(s)) == s);
}
