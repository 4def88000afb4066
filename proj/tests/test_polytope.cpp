#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "pibell/errors.hpp"
#include "pibell/polytope.hpp"

using namespace pibell;

TEST_CASE("phi on a hand-checked tuple") {
  // (a,b,c,d) = (2,1,1,0), n = 4: S0 = 2, S1 = 2, Z = 0.
  auto c = phi({2, 1, 1, 0, 4});
  CHECK(c.n == 4);
  CHECK(c.S0 == 2);
  CHECK(c.S1 == 2);
  CHECK(c.S00 == 0);   // S0^2 - n
  CHECK(c.S01 == 4);   // S0 S1 - Z
  CHECK(c.S11 == 0);
}

TEST_CASE("phi of the all-agree strategies") {
  auto c = phi({5, 0, 0, 0, 5});
  CHECK(c.S0 == 5);
  CHECK(c.S1 == 5);
  CHECK(c.S00 == 20);
  CHECK(c.S01 == 20);
  CHECK(c.S11 == 20);
  auto d = phi({0, 0, 0, 5, 5});
  CHECK(d.S0 == -5);
  CHECK(d.S1 == -5);
  CHECK(d.S00 == 20);
  CHECK(d.S01 == 20);
  CHECK(d.S11 == 20);
}

TEST_CASE("phi rejects inconsistent tuples") {
  CHECK_THROWS_AS(phi({1, 1, 1, 1, 5}), OutOfRange);
  CHECK_THROWS_AS(phi({-1, 2, 2, 2, 5}), OutOfRange);
}

TEST_CASE("phi_inverse round-trips every boundary tuple") {
  for (std::int64_t n : {1, 2, 3, 7, 20, 33}) {
    for (const auto& t : enumerate_boundary_tuples(n)) {
      auto back = phi_inverse(phi(t));
      CHECK(back == t);
    }
  }
}

TEST_CASE("phi_inverse round-trips interior tuples too") {
  for (std::int64_t n : {4, 9}) {
    for (const auto& t : enumerate_all_tuples(n)) {
      CHECK(phi_inverse(phi(t)) == t);
    }
  }
}

TEST_CASE("phi_inverse rejects non-images") {
  SymmetricCorrelators c;
  c.n = 4;
  c.S0 = 1;  // parity: a+b-c-d and n must have the same parity
  c.S1 = 1;
  c.S00 = -3;
  c.S01 = 0;
  c.S11 = -3;
  CHECK_THROWS_AS(phi_inverse(c), NotAVertexImage);
}

TEST_CASE("boundary tuple count is 2(n^2+1)") {
  for (std::int64_t n = 1; n <= 200; ++n) {
    auto tuples = enumerate_boundary_tuples(n);
    CHECK(tuples.size() == static_cast<std::size_t>(2 * (n * n + 1)));
    // every tuple touches the boundary
    for (const auto& t : tuples) {
      CHECK(t.a + t.b + t.c + t.d == n);
      CHECK((t.a == 0 || t.b == 0 || t.c == 0 || t.d == 0));
    }
  }
}

TEST_CASE("boundary tuples are distinct and sorted") {
  auto tuples = enumerate_boundary_tuples(12);
  std::set<StrategyTuple> dedup(tuples.begin(), tuples.end());
  CHECK(dedup.size() == tuples.size());
  CHECK(std::is_sorted(tuples.begin(), tuples.end()));
}

TEST_CASE("boundary tuple images are distinct correlator points") {
  for (std::int64_t n : {2, 5, 11}) {
    std::set<SymmetricCorrelators> images;
    for (const auto& t : enumerate_boundary_tuples(n)) images.insert(phi(t));
    CHECK(images.size() == static_cast<std::size_t>(2 * (n * n + 1)));
  }
}

TEST_CASE("n = 1 degenerates to four strategies") {
  auto tuples = enumerate_boundary_tuples(1);
  CHECK(tuples.size() == 4);
}

TEST_CASE("minimize_over_polytope of the zero functional") {
  BellInequality q;
  q.n = 5;
  auto m = minimize_over_polytope(q, 5);
  CHECK(m.min_value == 0);
  CHECK(m.argmin.size() == enumerate_boundary_tuples(5).size());
}

TEST_CASE("minimize_over_polytope of a pure S0 functional") {
  // alpha = 1: minimum of S0 over strategies is -n at a+b = 0.
  BellInequality q;
  q.n = 7;
  q.alpha = 1;
  auto m = minimize_over_polytope(q, 7);
  CHECK(m.min_value == -7);
  // minimizers: a = b = 0, c + d = 7, boundary tuples -> all 8 splits
  CHECK(m.argmin.size() == 8);
}

TEST_CASE("minimize_over_polytope agrees with brute force over all tuples") {
  // On a linear functional the minimum over T_n equals the minimum over
  // its boundary only if attained there; for these coefficients we check
  // against a full scan including interior tuples.
  BellInequality q;
  q.n = 9;
  q.alpha = 3;
  q.beta = -2;
  q.gamma = 1;
  q.delta = -1;
  q.epsilon = 2;
  auto m = minimize_over_polytope(q, 9);
  mpq_class best = 0;
  bool first = true;
  for (const auto& t : enumerate_boundary_tuples(9)) {
    mpq_class v = linear_part(q, phi(t));
    if (first || v < best) best = v, first = false;
  }
  CHECK(m.min_value == best);
}

TEST_CASE("polya bound for two binary measurements") {
  // d^m = 4 local strategies; bound is C(n+3, 3).
  CHECK(polya_vertex_bound(1, 2, 2) == 4);
  CHECK(polya_vertex_bound(2, 2, 2) == 10);
  CHECK(polya_vertex_bound(33, 2, 2) == mpz_class("7140"));
  CHECK(polya_vertex_bound(200, 2, 2) == mpz_class(203) * 202 * 201 / 6);
}

TEST_CASE("polya bound grows polynomially, degree d^m - 1") {
  // ratio of consecutive values tends to 1; spot check exact values
  CHECK(polya_vertex_bound(4, 2, 2) == 35);
  CHECK(polya_vertex_bound(10, 3, 2) == binomial(10 + 8 - 1, 8 - 1));
}

TEST_CASE("translation invariant count via necklace formula") {
  // (1/n) sum_{v | n} euler_phi(v) d^{m n / v}, with d^m = 4.
  CHECK(translation_invariant_count(1, 2, 2) == 4);
  CHECK(translation_invariant_count(2, 2, 2) == 10);   // (16 + 4)/2
  CHECK(translation_invariant_count(3, 2, 2) == 24);   // (64 + 2*4)/3
  CHECK(translation_invariant_count(4, 2, 2) == 70);   // (256 + 16 + 2*4)/4
  CHECK(translation_invariant_count(6, 2, 2) == 700);
}

TEST_CASE("boundary enumeration rejects nonpositive n") {
  CHECK_THROWS_AS(enumerate_boundary_tuples(0), OutOfRange);
  CHECK_THROWS_AS(enumerate_boundary_tuples(-3), OutOfRange);
}
