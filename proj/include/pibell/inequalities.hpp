#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pibell/polytope.hpp"

namespace pibell {

// Parameters of the two-body inequality family with quadratic structure:
// alpha = x[sigma*mu +- (x+y)], beta = mu*y, gamma = x^2, delta = sigma*x*y,
// epsilon = y^2, beta_c = [n(x+y)^2 + (sigma*mu +- x)^2 - 1]/2.
struct ClassParams {
  std::int64_t x = 1, y = 1;
  std::int64_t mu = 0;
  int sigma = +1;   // -1 or +1
  int branch = +1;  // the +- of the family, -1 or +1
};

BellInequality generate_class(const ClassParams& p, std::int64_t n);

struct SaturatingSet {
  std::int64_t count = 0;               // N_S from the Diophantine count
  std::vector<StrategyTuple> vertices;  // the saturating tuples, lexicographic
};

// Saturating-vertex count and explicit tuples via the modular construction
// (extended Euclid for the inverse of y mod x; x = 1 uses inverse 0).
SaturatingSet count_saturating_vertices(const ClassParams& p, std::int64_t n);

struct TightnessResult {
  bool tight = false;
  int affine_rank = 0;  // affine rank of the saturating vertex images in 5-space
};

// Exact tightness test: collect all vertices meeting the bound and compute
// their affine rank over the rationals; tight iff rank == 4.
TightnessResult is_tight(const BellInequality& q);

// Family detecting low-excitation Dicke states, 0 <= k <= (n-1)/2.
BellInequality dicke_low_k_inequality(std::int64_t n, std::int64_t k);

// Family detecting Dicke states near half filling, 0 <= k <= floor(n/2) - 1.
BellInequality dicke_mid_k_inequality(std::int64_t n, std::int64_t k);

// The inequality detecting the half-filled Dicke state (even n):
// ceil((n+2)/2) C(n,2) + (1/2) C(n,2) S00 + (n/2) S01 - (1/2) S11 >= 0.
BellInequality half_filled_dicke_inequality(std::int64_t n);

// Flat JSON record {n, beta_c, alpha, beta, gamma, delta, epsilon} with exact
// decimal strings (falls back to "p/q" for non-terminating expansions).
std::string inequality_to_json(const BellInequality& q);
BellInequality inequality_from_json(const std::string& text);

// Exact decimal rendering of a rational where possible, "p/q" otherwise.
std::string rational_to_string(const mpq_class& v);
mpq_class rational_from_string(const std::string& s);

} // namespace pibell
