#include "pibell/inequalities.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

namespace pibell {

namespace {

void check_class_params(const ClassParams& p, std::int64_t n) {
  if (p.x < 1 || p.y < 1) throw OutOfRange("x and y must be positive");
  if (p.mu < 0) throw OutOfRange("mu must be nonnegative");
  if ((p.sigma != 1 && p.sigma != -1) || (p.branch != 1 && p.branch != -1))
    throw OutOfRange("sigma and branch must be +1 or -1");
  if (std::gcd(p.x, p.y) != 1) throw NotCoprime("gcd(x, y) must be 1");
  // mu must have parity opposite to x for even n and opposite to y for odd n.
  const std::int64_t ref = (n % 2 == 0) ? p.x : p.y;
  if ((p.mu % 2) == (ref % 2)) throw ParityViolation("mu parity incompatible with n");
}

// Smallest nonnegative representative of v mod m (m > 0).
std::int64_t mod_floor(std::int64_t v, std::int64_t m) {
  std::int64_t r = v % m;
  return r < 0 ? r + m : r;
}

// Inverse of y modulo x via extended Euclid; defined as 0 when x = 1.
std::int64_t mod_inverse(std::int64_t y, std::int64_t x) {
  if (x == 1) return 0;
  std::int64_t r0 = x, r1 = mod_floor(y, x);
  std::int64_t s0 = 0, s1 = 1;  // coefficients of y
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
    std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
  }
  assert(r0 == 1);
  return mod_floor(s0, x);
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

// Renaming of the simplex faces: which of (a,b,c,d) plays the role of
// (r,s,t,u) depends on the (sigma, branch) choice.
StrategyTuple rename_to_abcd(int sigma, int branch, std::int64_t r, std::int64_t s,
                             std::int64_t t, std::int64_t u, std::int64_t n) {
  if (sigma > 0 && branch > 0) return {s, r, u, t, n};  // r,s,t,u = b,a,d,c
  if (sigma > 0 && branch < 0) return {t, u, r, s, n};  // r,s,t,u = c,d,a,b
  if (sigma < 0 && branch > 0) return {r, s, t, u, n};  // identity
  return {u, t, s, r, n};                               // r,s,t,u = d,c,b,a
}

} // namespace

BellInequality generate_class(const ClassParams& p, std::int64_t n) {
  if (n < 1) throw OutOfRange("party count must be positive");
  check_class_params(p, n);
  const std::int64_t x = p.x, y = p.y, mu = p.mu;
  const std::int64_t s = p.sigma, pm = p.branch;
  BellInequality q;
  q.n = n;
  q.alpha = x * (s * mu + pm * (x + y));
  q.beta = mu * y;
  q.gamma = x * x;
  q.delta = s * x * y;
  q.epsilon = y * y;
  const std::int64_t w = s * mu + pm * x;
  q.beta_c = mpq_class(n * (x + y) * (x + y) + w * w - 1, 2);
  q.beta_c.canonicalize();
  return q;
}

SaturatingSet count_saturating_vertices(const ClassParams& p, std::int64_t n) {
  if (n < 1) throw OutOfRange("party count must be positive");
  check_class_params(p, n);
  const std::int64_t x = p.x, y = p.y;
  const std::int64_t pm = p.branch;
  const std::int64_t yinv = mod_inverse(y, x);

  SaturatingSet out;
  std::set<StrategyTuple> seen;
  for (int tau : {-1, +1}) {
    const std::int64_t K2 = pm * n * (y - x) + p.sigma * p.mu + pm * x + tau;
    assert(K2 % 2 == 0);  // guaranteed by the parity condition on mu
    const std::int64_t K = K2 / 2;
    const std::int64_t t0 = (x == 1) ? 0 : mod_floor(pm * yinv * K, x);
    assert((-pm * K + y * t0) % x == 0);
    const std::int64_t s0 = (-pm * K + y * t0) / x;
    const std::int64_t u0 = n - s0 - t0;
    const std::int64_t kmin = std::max<std::int64_t>(0, ceil_div(-s0, y));
    const std::int64_t kmax = floor_div(u0, x + y);
    out.count += std::max<std::int64_t>(0, kmax - kmin + 1);
    // Solutions advance along the homogeneous direction (0, y, x, -(x+y)).
    for (std::int64_t k = kmin; k <= kmax; ++k) {
      const std::int64_t sv = s0 + k * y;
      const std::int64_t tv = t0 + k * x;
      const std::int64_t uv = u0 - k * (x + y);
      assert(sv >= 0 && tv >= 0 && uv >= 0 && sv + tv + uv == n);
      seen.insert(rename_to_abcd(p.sigma, p.branch, 0, sv, tv, uv, n));
    }
  }
  out.vertices.assign(seen.begin(), seen.end());
  return out;
}

TightnessResult is_tight(const BellInequality& q) {
  const PolytopeMinimum m = minimize_over_polytope(q, q.n);
  if (m.min_value > -q.beta_c)
    throw NoSaturatingVertex("inequality is not tangent to the polytope");
  if (m.min_value < -q.beta_c)
    throw NoSaturatingVertex("classical bound is violated by a vertex");

  // Affine rank of the saturating images: rank of differences to the first.
  std::vector<std::array<mpq_class, 5>> rows;
  const SymmetricCorrelators base = phi(m.argmin.front());
  for (std::size_t i = 1; i < m.argmin.size(); ++i) {
    const SymmetricCorrelators ci = phi(m.argmin[i]);
    rows.push_back({mpq_class(ci.S0 - base.S0), mpq_class(ci.S1 - base.S1),
                    mpq_class(ci.S00 - base.S00), mpq_class(ci.S01 - base.S01),
                    mpq_class(ci.S11 - base.S11)});
  }
  // Fraction-free Gaussian elimination over the rationals.
  int rank = 0;
  std::size_t row = 0;
  for (int col = 0; col < 5 && row < rows.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[row], rows[pivot]);
    for (std::size_t i = row + 1; i < rows.size(); ++i) {
      if (rows[i][col] == 0) continue;
      const mpq_class f = rows[i][col] / rows[row][col];
      for (int j = col; j < 5; ++j) rows[i][j] -= f * rows[row][j];
    }
    ++rank;
    ++row;
  }
  return {rank == 4, rank};
}

BellInequality dicke_low_k_inequality(std::int64_t n, std::int64_t k) {
  if (n < 1 || k < 0 || 2 * k > n - 1) throw OutOfRange("need 0 <= k <= (n-1)/2");
  BellInequality q;
  q.n = n;
  q.beta_c = (1 + 2 * k) * ((n - 2 * k - 1) * (n - 2 * k - 1) + n - 1);
  q.alpha = q.beta = (1 + 2 * k) * (n - 1 - 2 * k);
  q.gamma = q.epsilon = k;
  q.delta = k + 1;
  return q;
}

BellInequality dicke_mid_k_inequality(std::int64_t n, std::int64_t k) {
  if (n < 2 || k < 0 || k > n / 2 - 1) throw OutOfRange("need 0 <= k <= floor(n/2) - 1");
  const std::int64_t nu = n / 2 - k;
  const mpz_class pairs = binomial(n, 2);
  BellInequality q;
  q.n = n;
  if (n % 2 == 0) {
    q.beta_c = mpq_class(pairs * (n + 2 * (2 * nu * nu + 1)));
    q.alpha = 2 * nu * n * (n - 1);
  } else {
    q.beta_c = mpq_class(pairs * (n + 3 + 4 * nu * (nu + 1)));
    q.alpha = (1 + 2 * nu) * n * (n - 1);
  }
  q.beta = q.alpha / n;
  q.beta.canonicalize();
  q.gamma = n * (n - 1);
  q.delta = n;
  q.epsilon = -2;
  return q;
}

BellInequality half_filled_dicke_inequality(std::int64_t n) {
  if (n < 2 || n % 2 != 0) throw OutOfRange("need even n >= 2");
  const mpz_class pairs = binomial(n, 2);
  BellInequality q;
  q.n = n;
  q.beta_c = mpq_class((n + 2) / 2 * pairs);
  q.alpha = q.beta = 0;
  q.gamma = mpq_class(pairs);
  q.delta = mpq_class(n, 2);
  q.delta.canonicalize();
  q.epsilon = -1;
  return q;
}

std::string rational_to_string(const mpq_class& v) {
  mpq_class r = v;
  r.canonicalize();
  mpz_class num = r.get_num(), den = r.get_den();
  if (den == 1) return num.get_str();
  // Terminating decimal iff the denominator is 2^a 5^b; scale to 10^max(a,b).
  mpz_class rest = den;
  unsigned a = 0, b = 0;
  while (rest % 2 == 0) { rest /= 2; ++a; }
  while (rest % 5 == 0) { rest /= 5; ++b; }
  if (rest != 1) return num.get_str() + "/" + den.get_str();
  const unsigned digits = std::max(a, b);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  mpz_class scaled = num * (scale / den);
  const bool neg = scaled < 0;
  std::string s = mpz_class(abs(scaled)).get_str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  s.insert(s.size() - digits, ".");
  return (neg ? "-" : "") + s;
}

mpq_class rational_from_string(const std::string& s) {
  const auto dot = s.find('.');
  mpq_class v;
  if (dot == std::string::npos) {
    v = mpq_class(s);
  } else {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const unsigned frac = static_cast<unsigned>(s.size() - dot - 1);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac);
    v = mpq_class(mpz_class(digits), scale);
  }
  v.canonicalize();
  return v;
}

std::string inequality_to_json(const BellInequality& q) {
  nlohmann::json j;
  j["n"] = q.n;
  j["beta_c"] = rational_to_string(q.beta_c);
  j["alpha"] = rational_to_string(q.alpha);
  j["beta"] = rational_to_string(q.beta);
  j["gamma"] = rational_to_string(q.gamma);
  j["delta"] = rational_to_string(q.delta);
  j["epsilon"] = rational_to_string(q.epsilon);
  return j.dump();
}

BellInequality inequality_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  BellInequality q;
  q.n = j.at("n").get<std::int64_t>();
  q.beta_c = rational_from_string(j.at("beta_c").get<std::string>());
  q.alpha = rational_from_string(j.at("alpha").get<std::string>());
  q.beta = rational_from_string(j.at("beta").get<std::string>());
  q.gamma = rational_from_string(j.at("gamma").get<std::string>());
  q.delta = rational_from_string(j.at("delta").get<std::string>());
  q.epsilon = rational_from_string(j.at("epsilon").get<std::string>());
  return q;
}

} // namespace pibell
