#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pibell/bell_operator.hpp"
#include "pibell/polytope.hpp"

namespace pibell {

// Real coefficient vector over the Dicke basis |D_n^k>, k = 0..n.
struct SymmetricState {
  std::int64_t n = 0;
  std::vector<double> coeffs;  // length n+1, unit norm
};

struct GaussianParams {
  double mu = 0;     // center, typically n/2 + A/(2B - C)
  double sigma = 1;  // variance parameter of the coefficient profile
};

// Density matrix of d retained parties (d = 1 or 2), basis ordered by bits.
struct ReducedDensity {
  int d = 0;
  Eigen::MatrixXd entries;  // 2^d x 2^d, symmetric, trace 1
};

SymmetricState dicke_state(std::int64_t n, std::int64_t k);

// Gaussian profile exp(-(k-mu)^2 / 4 sigma), renormalized exactly.
// Warns (once per call) when sigma falls outside (0.1, n/2).
SymmetricState gaussian_state(std::int64_t n, const GaussianParams& g);

// <s| block |s> for a pentadiagonal block of matching size.
double expectation(const SymmetricState& s, const BellBlock& b);

// Closed-form Gaussian-state expectation of the symmetric block at the
// tridiagonalizing angle chosen to minimize the leading bracket:
// [beta_c/n - B/2 + e^{-1/8 sigma}(A' - AD/B)] n + [2 B sigma - A^2/2B + e^{-1/8 sigma}(A' - AD/B)].
double analytic_violation(const BellInequality& q, std::int64_t n, double sigma);

// Partial trace down to d parties using the numerically stable product forms
// for the binomial ratios (geometric mean for off-diagonal factors).
ReducedDensity reduced_density(const SymmetricState& s, int d);

// Large-n two-body reduced state of the Gaussian family, c = mu - n/2.
ReducedDensity rho2_asymptotic(std::int64_t n, double c);

// Closed-form optimum of d_k(-theta, theta) for the low-excitation Dicke
// inequality: value = -4 C1^2 / C2 at theta* = 2 arccos(sqrt(C1/C2)).
std::pair<double, double> dicke_closed_form_violation(std::int64_t n, std::int64_t k);

enum class DickeClass { low, mid };

struct DickeViolation {
  double value = 0;
  double phi_star = 0, theta_star = 0;
};

// 2-D minimization of <D_n^k| B(phi, theta) |D_n^k> = d_k for the chosen
// inequality class; k > n/2 handled by the outcome-relabeling symmetry.
DickeViolation dicke_numeric_violation(std::int64_t n, std::int64_t k, DickeClass which);

// Collective spin moments along the two measurement directions.
struct CollectiveMoments {
  double m0_S = 0, m1_S = 0;      // <m0.S>, <m1.S>
  double m0_S2 = 0, m1_S2 = 0;    // <(m0.S)^2>, <(m1.S)^2>
  double sum_S2 = 0, diff_S2 = 0; // <[(m0+m1).S]^2>, <[(m0-m1).S]^2>
  double m0_dot_m1 = 0;
};

struct RealCorrelators {
  double S0 = 0, S1 = 0, S00 = 0, S01 = 0, S11 = 0;
};

// S_k = 2<m_k.S>; S_kk = 4<(m_k.S)^2> - n;
// S_01 = <[(m0+m1).S]^2> - <[(m0-m1).S]^2> - n (m0.m1).
RealCorrelators collective_correlators(const CollectiveMoments& m, std::int64_t n);

// Expectation of the inequality computed from the two-body reduced state:
// beta_c + n (alpha <M0> + beta <M1>) + n(n-1) [gamma/2 <M0 M0> + delta <M0 M1> + epsilon/2 <M1 M1>].
double expectation_from_rho2(const BellInequality& q, const ReducedDensity& rho2,
                             const MeasurementPair& m);

// Mean and variance of the |coeffs|^2 distribution, as Gaussian parameters.
GaussianParams fit_gaussian_moments(const SymmetricState& s);

// Squared overlap of two pure symmetric states.
double fidelity(const SymmetricState& a, const SymmetricState& b);

} // namespace pibell
