#include "pibell/polytope.hpp"

#include <algorithm>
#include <numeric>

namespace pibell {

SymmetricCorrelators phi(const StrategyTuple& t) {
  if (t.a < 0 || t.b < 0 || t.c < 0 || t.d < 0 || t.a + t.b + t.c + t.d != t.n)
    throw OutOfRange("strategy counts must be nonnegative and sum to n");
  const std::int64_t S0 = t.a + t.b - t.c - t.d;
  const std::int64_t S1 = t.a - t.b + t.c - t.d;
  const std::int64_t Z = t.a - t.b - t.c + t.d;
  SymmetricCorrelators out;
  out.n = t.n;
  out.S0 = S0;
  out.S1 = S1;
  out.S00 = S0 * S0 - t.n;
  out.S01 = S0 * S1 - Z;
  out.S11 = S1 * S1 - t.n;
  return out;
}

StrategyTuple phi_inverse(const SymmetricCorrelators& c) {
  if (c.S00 != c.S0 * c.S0 - c.n || c.S11 != c.S1 * c.S1 - c.n)
    throw NotAVertexImage("correlators violate S_kk = S_k^2 - n");
  const std::int64_t Z = c.S0 * c.S1 - c.S01;
  // The Hadamard-type map (n, S1, S0, Z) = M (a,b,c,d) squares to 4*Id,
  // so the preimage is M (n, S1, S0, Z) / 4.
  const std::int64_t a4 = c.n + c.S1 + c.S0 + Z;
  const std::int64_t b4 = c.n - c.S1 + c.S0 - Z;
  const std::int64_t c4 = c.n + c.S1 - c.S0 - Z;
  const std::int64_t d4 = c.n - c.S1 - c.S0 + Z;
  for (std::int64_t v : {a4, b4, c4, d4})
    if (v < 0 || v % 4 != 0)
      throw NotAVertexImage("reconstructed tuple is negative or fractional");
  return StrategyTuple{a4 / 4, b4 / 4, c4 / 4, d4 / 4, c.n};
}

std::vector<StrategyTuple> enumerate_boundary_tuples(std::int64_t n) {
  if (n < 1) throw OutOfRange("party count must be positive");
  std::vector<StrategyTuple> out;
  out.reserve(static_cast<std::size_t>(2 * (n * n + 1)));
  // Walk the four facets; the positivity guards make each tuple appear once.
  for (std::int64_t b = 0; b <= n; ++b)
    for (std::int64_t c = 0; c + b <= n; ++c)
      out.push_back({0, b, c, n - b - c, n});
  for (std::int64_t a = 1; a <= n; ++a)
    for (std::int64_t c = 0; c + a <= n; ++c)
      out.push_back({a, 0, c, n - a - c, n});
  for (std::int64_t a = 1; a <= n; ++a)
    for (std::int64_t b = 1; a + b <= n; ++b)
      out.push_back({a, b, 0, n - a - b, n});
  for (std::int64_t a = 1; a <= n; ++a)
    for (std::int64_t b = 1; a + b < n; ++b)
      out.push_back({a, b, n - a - b, 0, n});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<StrategyTuple> enumerate_all_tuples(std::int64_t n) {
  if (n < 1) throw OutOfRange("party count must be positive");
  std::vector<StrategyTuple> out;
  for (std::int64_t a = 0; a <= n; ++a)
    for (std::int64_t b = 0; a + b <= n; ++b)
      for (std::int64_t c = 0; a + b + c <= n; ++c)
        out.push_back({a, b, c, n - a - b - c, n});
  return out;
}

mpq_class linear_part(const BellInequality& q, const SymmetricCorrelators& c) {
  mpq_class v = q.alpha * c.S0;
  v += q.beta * c.S1;
  v += q.gamma * c.S00 / 2;
  v += q.delta * c.S01;
  v += q.epsilon * c.S11 / 2;
  return v;
}

PolytopeMinimum minimize_over_polytope(const BellInequality& q, std::int64_t n) {
  const std::vector<StrategyTuple> verts = enumerate_boundary_tuples(n);
  PolytopeMinimum res;
  bool first = true;
  for (const StrategyTuple& t : verts) {
    mpq_class v = linear_part(q, phi(t));
    if (first || v < res.min_value) {
      res.min_value = v;
      res.argmin.clear();
      res.argmin.push_back(t);
      first = false;
    } else if (v == res.min_value) {
      res.argmin.push_back(t);  // input is sorted, so ties stay lexicographic
    }
  }
  return res;
}

mpz_class binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

mpz_class polya_vertex_bound(std::int64_t n, std::int64_t m, std::int64_t d) {
  if (n < 1 || m < 1 || d < 1) throw OutOfRange("n, m, d must be positive");
  mpz_class cells;
  mpz_ui_pow_ui(cells.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(m));
  // C(n + d^m - 1, d^m - 1) = C(n + d^m - 1, n): keep the small lower entry.
  mpz_class top = cells - 1 + n;
  mpz_class r;
  mpz_bin_ui(r.get_mpz_t(), top.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

namespace {

std::int64_t euler_phi(std::int64_t v) {
  std::int64_t result = v;
  for (std::int64_t p = 2; p * p <= v; ++p) {
    if (v % p == 0) {
      while (v % p == 0) v /= p;
      result -= result / p;
    }
  }
  if (v > 1) result -= result / v;
  return result;
}

} // namespace

mpz_class translation_invariant_count(std::int64_t n, std::int64_t m, std::int64_t d) {
  if (n < 1 || m < 1 || d < 1) throw OutOfRange("n, m, d must be positive");
  mpz_class sum = 0;
  for (std::int64_t v = 1; v <= n; ++v) {
    if (n % v != 0) continue;
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(d),
                  static_cast<unsigned long>(m * (n / v)));
    sum += euler_phi(v) * pw;
  }
  mpz_class out = sum / n;  // Burnside guarantees exact divisibility
  return out;
}

} // namespace pibell
