#include "pibell/states.hpp"

#include "pibell/inequalities.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>

namespace pibell {

namespace {

constexpr double kPi = std::numbers::pi;

void normalize(std::vector<double>& c) {
  double norm = 0;
  for (double x : c) norm += x * x;
  norm = std::sqrt(norm);
  if (norm == 0) throw DivisionByZero("state has zero norm");
  for (double& x : c) x /= norm;
}

} // namespace

SymmetricState dicke_state(std::int64_t n, std::int64_t k) {
  if (n < 1 || k < 0 || k > n) throw OutOfRange("need 0 <= k <= n");
  SymmetricState s;
  s.n = n;
  s.coeffs.assign(n + 1, 0.0);
  s.coeffs[k] = 1.0;
  return s;
}

SymmetricState gaussian_state(std::int64_t n, const GaussianParams& g) {
  if (n < 1 || g.sigma <= 0) throw OutOfRange("need n >= 1 and sigma > 0");
  if (g.sigma <= 0.1 || g.sigma >= n / 2.0)
    std::cerr << "pibell: warning: sigma=" << g.sigma
              << " outside the asymptotic window (0.1, n/2)\n";
  SymmetricState s;
  s.n = n;
  s.coeffs.resize(n + 1);
  for (std::int64_t k = 0; k <= n; ++k) {
    const double z = k - g.mu;
    s.coeffs[k] = std::exp(-z * z / (4 * g.sigma));
  }
  normalize(s.coeffs);
  return s;
}

double expectation(const SymmetricState& s, const BellBlock& b) {
  if (static_cast<std::int64_t>(s.coeffs.size()) != b.twoJ + 1)
    throw DimensionMismatch("state length does not match block size");
  double v = 0;
  const auto& c = s.coeffs;
  for (std::size_t k = 0; k < c.size(); ++k) v += c[k] * c[k] * b.d[k];
  for (std::size_t k = 0; k + 1 < c.size(); ++k) v += 2 * c[k] * c[k + 1] * b.u[k];
  for (std::size_t k = 0; k + 2 < c.size(); ++k) v += 2 * c[k] * c[k + 2] * b.v[k];
  return v;
}

namespace {

struct AnalyticPieces {
  double leading = std::numeric_limits<double>::infinity();
  double value = 0;
  bool ok = false;
};

// Evaluate the Gaussian-profile closed form at the C=0 angle for relative
// angle kappa, choosing the arctan branch indexed by root.
AnalyticPieces analytic_at(const BellInequality& q, std::int64_t n, double sigma,
                           double kappa, std::size_t root) {
  AnalyticPieces out;
  std::vector<double> thetas;
  try {
    thetas = tridiagonal_angles(q, kappa);
  } catch (const NoRealSolution&) {
    return out;
  } catch (const DegenerateMeasurements&) {
    return out;
  }
  if (root >= thetas.size()) return out;
  const double theta = thetas[root];
  const MeasurementPair m{theta - kappa, theta};
  const OperatorConstants c = block_constants(q, m);
  if (std::abs(c.B) < 1e-12) return out;
  const double damp = std::exp(-1.0 / (8 * sigma));
  const double cross = damp * (c.Ap - c.A * c.D / c.B);
  out.leading = q.beta_c.get_d() / n - c.B / 2 + cross;
  out.value = out.leading * n + (2 * c.B * sigma - c.A * c.A / (2 * c.B) + cross);
  out.ok = true;
  return out;
}

} // namespace

double analytic_violation(const BellInequality& q, std::int64_t n, double sigma) {
  if (q.n != n) throw DimensionMismatch("inequality was built for a different n");
  if (sigma <= 0) throw OutOfRange("sigma must be positive");
  const int grid = 720;
  double best_kappa = 0;
  std::size_t best_root = 0;
  double best_leading = std::numeric_limits<double>::infinity();
  bool any = false;
  for (int i = 1; i < grid; ++i) {
    const double kappa = 2 * kPi * i / grid;
    for (std::size_t root = 0; root < 2; ++root) {
      const AnalyticPieces p = analytic_at(q, n, sigma, kappa, root);
      if (p.ok && p.leading < best_leading) {
        best_leading = p.leading;
        best_kappa = kappa;
        best_root = root;
        any = true;
      }
    }
  }
  if (!any) throw DivisionByZero("B vanishes at every tridiagonalizing angle");
  // Golden-section refinement of the leading bracket in kappa.
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = best_kappa - 2 * kPi / grid, hi = best_kappa + 2 * kPi / grid;
  auto leading_of = [&](double kp) {
    const AnalyticPieces p = analytic_at(q, n, sigma, kp, best_root);
    return p.ok ? p.leading : std::numeric_limits<double>::infinity();
  };
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = leading_of(x1), f2 = leading_of(x2);
  while (hi - lo > 1e-10) {
    if (f1 < f2) {
      hi = x2; x2 = x1; f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = leading_of(x1);
    } else {
      lo = x1; x1 = x2; f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = leading_of(x2);
    }
  }
  const AnalyticPieces p = analytic_at(q, n, sigma, (lo + hi) / 2, best_root);
  return p.ok ? p.value : analytic_at(q, n, sigma, best_kappa, best_root).value;
}

namespace {

// Stable binomial-ratio factor C(n-d, m) / sqrt(C(n, m+i) C(n, m+j)).
double f_factor(std::int64_t n, std::int64_t m, int d, int i, int j) {
  if (i > j) std::swap(i, j);
  auto diag = [&](int p) -> double {
    if (d == 1)
      return p == 0 ? double(n - m) / n : double(m + 1) / n;
    const double nn = double(n) * (n - 1);
    if (p == 0) return double(n - m) * (n - m - 1) / nn;
    if (p == 1) return double(n - m - 1) * (m + 1) / nn;
    return double(m + 1) * (m + 2) / nn;
  };
  if (i == j) return diag(i);
  return std::sqrt(diag(i) * diag(j));
}

} // namespace

ReducedDensity reduced_density(const SymmetricState& s, int d) {
  if (d != 1 && d != 2) throw OutOfRange("only d = 1 or 2 supported");
  if (s.n < d) throw OutOfRange("cannot keep more parties than the state has");
  const std::int64_t n = s.n;
  // Entries depend only on the excitation numbers of the retained bits.
  std::array<std::array<double, 3>, 3> g{};
  for (int p = 0; p <= d; ++p)
    for (int q = p; q <= d; ++q) {
      double sum = 0;
      for (std::int64_t m = 0; m <= n - d; ++m)
        sum += f_factor(n, m, d, p, q) * s.coeffs[m + p] * s.coeffs[m + q];
      g[p][q] = g[q][p] = sum;
    }
  ReducedDensity rho;
  rho.d = d;
  const int dim = 1 << d;
  rho.entries.resize(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      rho.entries(i, j) = g[std::popcount(unsigned(i))][std::popcount(unsigned(j))];
  return rho;
}

ReducedDensity rho2_asymptotic(std::int64_t n, double c) {
  if (n < 2) throw OutOfRange("need n >= 2");
  Eigen::Matrix4d M;
  M << -(1 + 2 * c), -c, -c, 1,
       -c, 0, 0, c,
       -c, 0, 0, c,
       1, c, c, 2 * c - 1;
  ReducedDensity rho;
  rho.d = 2;
  rho.entries = (Eigen::Matrix4d::Constant(n * n / 4.0) + (n / 2.0) * M) /
                (double(n) * (n - 1));
  return rho;
}

std::pair<double, double> dicke_closed_form_violation(std::int64_t n, std::int64_t k) {
  if (k <= 0) throw OutOfRange("need k > 0");
  if (2 * k > n - 1) throw OutOfRange("low-excitation inequality needs k <= (n-1)/2");
  const double C1 = double(k) * (n - (1 + 3 * k));
  const double C2 = double(n) * n * (2 * k + 1) - double(n) * (8 * k * k + 4 * k + 1) +
                    2.0 * k * k * (1 + 4 * k);
  if (C1 < 0 || C2 <= 0) throw OutOfRegime("outside the low-excitation regime");
  const double theta_star = 2 * std::acos(std::sqrt(C1 / C2));
  return {-4 * C1 * C1 / C2, theta_star};
}

namespace {

double dicke_block_value(const BellInequality& q, double phi, double theta,
                         std::int64_t k) {
  const OperatorConstants c = block_constants(q, {phi, theta});
  const double g = double(q.n - 2 * k);
  return q.beta_c.get_d() + g * c.A + (g * g - q.n) * c.B / 2 +
         double(k) * (q.n - k) * c.C;
}

// Small Nelder-Mead descent for the two-angle Dicke objective.
DickeViolation nelder_mead_refine(const BellInequality& q, std::int64_t k,
                                  double phi0, double theta0, double step) {
  using Point = std::array<double, 2>;
  auto f = [&](const Point& p) { return dicke_block_value(q, p[0], p[1], k); };
  std::array<Point, 3> simplex{{{phi0, theta0}, {phi0 + step, theta0}, {phi0, theta0 + step}}};
  std::array<double, 3> fv{f(simplex[0]), f(simplex[1]), f(simplex[2])};
  for (int iter = 0; iter < 400; ++iter) {
    std::array<int, 3> ord{0, 1, 2};
    std::sort(ord.begin(), ord.end(), [&](int a, int b) { return fv[a] < fv[b]; });
    if (std::abs(fv[ord[2]] - fv[ord[0]]) < 1e-13 * (1 + std::abs(fv[ord[0]]))) break;
    const Point &b = simplex[ord[0]], &m = simplex[ord[1]], &w = simplex[ord[2]];
    const Point centroid{(b[0] + m[0]) / 2, (b[1] + m[1]) / 2};
    auto blend = [&](double t) {
      return Point{centroid[0] + t * (centroid[0] - w[0]),
                   centroid[1] + t * (centroid[1] - w[1])};
    };
    Point refl = blend(1.0);
    double fr = f(refl);
    if (fr < fv[ord[0]]) {
      Point expa = blend(2.0);
      double fe = f(expa);
      if (fe < fr) { simplex[ord[2]] = expa; fv[ord[2]] = fe; }
      else { simplex[ord[2]] = refl; fv[ord[2]] = fr; }
    } else if (fr < fv[ord[1]]) {
      simplex[ord[2]] = refl;
      fv[ord[2]] = fr;
    } else {
      Point contr = blend(-0.5);
      double fc = f(contr);
      if (fc < fv[ord[2]]) { simplex[ord[2]] = contr; fv[ord[2]] = fc; }
      else {
        for (int i : {ord[1], ord[2]}) {
          simplex[i] = {(simplex[i][0] + b[0]) / 2, (simplex[i][1] + b[1]) / 2};
          fv[i] = f(simplex[i]);
        }
      }
    }
  }
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (fv[i] < fv[best]) best = i;
  return {fv[best], simplex[best][0], simplex[best][1]};
}

} // namespace

DickeViolation dicke_numeric_violation(std::int64_t n, std::int64_t k, DickeClass which) {
  if (k <= 0 || k >= n) throw OutOfRange("need 0 < k < n");
  // Relabeling outcomes maps |D_n^k> to |D_n^{n-k}> with the same violation,
  // so work in the k <= n/2 half.
  const bool mirrored = 2 * k > n;
  const std::int64_t kk = mirrored ? n - k : k;
  BellInequality q;
  if (which == DickeClass::low) {
    q = dicke_low_k_inequality(n, std::min(kk, (n - 1) / 2));
  } else if (n % 2 == 0 && kk == n / 2) {
    q = half_filled_dicke_inequality(n);  // the nu = 0 member of the family
  } else {
    q = dicke_mid_k_inequality(n, kk);
  }
  const int grid = 360;
  double best = std::numeric_limits<double>::infinity(), bp = 0, bt = 0;
  std::vector<double> cs(grid), sn(grid);
  for (int i = 0; i < grid; ++i) {
    cs[i] = std::cos(2 * kPi * i / grid);
    sn[i] = std::sin(2 * kPi * i / grid);
  }
  const double al = q.alpha.get_d(), be = q.beta.get_d();
  const double ga = q.gamma.get_d(), de = q.delta.get_d(), ep = q.epsilon.get_d();
  const double bc = q.beta_c.get_d();
  const double g = double(n - 2 * kk), gg = g * g - n, kc = double(kk) * (n - kk);
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const double A = al * cs[i] + be * cs[j];
      const double B = ga * cs[i] * cs[i] + 2 * de * cs[i] * cs[j] + ep * cs[j] * cs[j];
      const double C = ga * sn[i] * sn[i] + 2 * de * sn[i] * sn[j] + ep * sn[j] * sn[j];
      const double v = bc + g * A + gg * B / 2 + kc * C;
      if (v < best) {
        best = v;
        bp = 2 * kPi * i / grid;
        bt = 2 * kPi * j / grid;
      }
    }
  DickeViolation res = nelder_mead_refine(q, kk, bp, bt, 2 * kPi / grid);
  if (mirrored) {
    // Undo the qubit flip: angles map as (phi, theta) -> (pi - phi, pi - theta).
    auto wrap = [](double a) { return a - 2 * kPi * std::floor(a / (2 * kPi)); };
    res.phi_star = wrap(kPi - res.phi_star);
    res.theta_star = wrap(kPi - res.theta_star);
  }
  return res;
}

RealCorrelators collective_correlators(const CollectiveMoments& m, std::int64_t n) {
  RealCorrelators out;
  out.S0 = 2 * m.m0_S;
  out.S1 = 2 * m.m1_S;
  out.S00 = 4 * m.m0_S2 - n;
  out.S11 = 4 * m.m1_S2 - n;
  out.S01 = m.sum_S2 - m.diff_S2 - n * m.m0_dot_m1;
  return out;
}

double expectation_from_rho2(const BellInequality& q, const ReducedDensity& rho2,
                             const MeasurementPair& m) {
  if (rho2.d != 2) throw DimensionMismatch("need a two-party reduced state");
  Eigen::Matrix2d M0, M1, id2 = Eigen::Matrix2d::Identity();
  M0 << std::cos(m.phi), std::sin(m.phi), std::sin(m.phi), -std::cos(m.phi);
  M1 << std::cos(m.theta), std::sin(m.theta), std::sin(m.theta), -std::cos(m.theta);
  auto kron = [](const Eigen::Matrix2d& a, const Eigen::Matrix2d& b) {
    Eigen::Matrix4d k;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        k.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return k;
  };
  const auto& r = rho2.entries;
  const double e0 = (r * kron(M0, id2)).trace();
  const double e1 = (r * kron(M1, id2)).trace();
  const double e00 = (r * kron(M0, M0)).trace();
  const double e01 = (r * kron(M0, M1)).trace();
  const double e11 = (r * kron(M1, M1)).trace();
  const double n = double(q.n);
  return q.beta_c.get_d() + n * (q.alpha.get_d() * e0 + q.beta.get_d() * e1) +
         n * (n - 1) *
             (q.gamma.get_d() / 2 * e00 + q.delta.get_d() * e01 + q.epsilon.get_d() / 2 * e11);
}

GaussianParams fit_gaussian_moments(const SymmetricState& s) {
  double mu = 0, var = 0;
  for (std::size_t k = 0; k < s.coeffs.size(); ++k) mu += k * s.coeffs[k] * s.coeffs[k];
  for (std::size_t k = 0; k < s.coeffs.size(); ++k) {
    const double z = k - mu;
    var += z * z * s.coeffs[k] * s.coeffs[k];
  }
  return {mu, var};
}

double fidelity(const SymmetricState& a, const SymmetricState& b) {
  if (a.n != b.n) throw DimensionMismatch("states have different party counts");
  double ov = 0;
  for (std::size_t k = 0; k < a.coeffs.size(); ++k) ov += a.coeffs[k] * b.coeffs[k];
  return ov * ov;
}

} // namespace pibell
