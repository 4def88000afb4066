#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "pibell/errors.hpp"

namespace pibell {

// Deterministic local strategy for n parties with two binary measurements,
// summarized by how many parties answer (+,+), (+,-), (-,+), (-,-).
// A point of the discrete simplex T_n.
struct StrategyTuple {
  std::int64_t a = 0, b = 0, c = 0, d = 0;
  std::int64_t n = 0;

  friend auto operator<=>(const StrategyTuple&, const StrategyTuple&) = default;
};

// Permutationally invariant one- and two-body correlators (image of phi).
struct SymmetricCorrelators {
  std::int64_t n = 0;
  std::int64_t S0 = 0, S1 = 0;
  std::int64_t S00 = 0, S01 = 0, S11 = 0;

  friend auto operator<=>(const SymmetricCorrelators&, const SymmetricCorrelators&) = default;
};

// Coefficients of  beta_c + alpha*S0 + beta*S1 + (gamma/2)*S00 + delta*S01 + (epsilon/2)*S11 >= 0.
// Exact rationals so that rescaled inequalities stay representable.
struct BellInequality {
  std::int64_t n = 0;
  mpq_class beta_c, alpha, beta, gamma, delta, epsilon;
};

// Correlator coordinates of a strategy tuple.  Exact integer arithmetic.
SymmetricCorrelators phi(const StrategyTuple& t);

// Inverse of phi on vertex images; throws NotAVertexImage when the
// reconstructed tuple is not a valid point of T_n.
StrategyTuple phi_inverse(const SymmetricCorrelators& c);

// All tuples of T_n with a*b*c*d = 0, each exactly once, sorted
// lexicographically on (a,b,c,d).  Size is always 2(n^2+1).
std::vector<StrategyTuple> enumerate_boundary_tuples(std::int64_t n);

// All of T_n (every split of n into four nonnegative parts), lexicographic.
std::vector<StrategyTuple> enumerate_all_tuples(std::int64_t n);

// Value of the linear part alpha*S0 + beta*S1 + (gamma/2)*S00 + delta*S01 + (epsilon/2)*S11.
mpq_class linear_part(const BellInequality& q, const SymmetricCorrelators& c);

struct PolytopeMinimum {
  mpq_class min_value;                // min of the linear part over phi(boundary of T_n)
  std::vector<StrategyTuple> argmin;  // every minimizer, lexicographic order
};

// Exact minimization of the linear part of q over the polytope vertices.
PolytopeMinimum minimize_over_polytope(const BellInequality& q, std::int64_t n);

// Exact binomial coefficient; 0 outside the Pascal triangle.
mpz_class binomial(std::int64_t n, std::int64_t k);

// Polya bound on the number of symmetrized vertices: C(n + d^m - 1, d^m - 1).
mpz_class polya_vertex_bound(std::int64_t n, std::int64_t m, std::int64_t d);

// Orbit count under the cyclic (translation) group: (1/n) sum_{v | n} phi_Euler(v) d^{m n / v}.
mpz_class translation_invariant_count(std::int64_t n, std::int64_t m, std::int64_t d);

} // namespace pibell
