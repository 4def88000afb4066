#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "pibell/bell_operator.hpp"
#include "pibell/polytope.hpp"

namespace pibell {
namespace oracle {

// Brute-force ground truth at small n.  Obviously-correct over fast.

enum class Collective { Sx, Sy, Sz, Sxx, Sxy, Sxz, Syy, Syz, Szz };

// Dense 2^n x 2^n collective operator from the bitwise matrix-element rules
// (Hamming-distance selection).  For the purely imaginary operators
// (Sy, Sxy, Syz) the returned matrix holds the imaginary parts.
Eigen::MatrixXd dense_collective(std::int64_t n, Collective which);

// Matrix-free application of the same operator to a 2^n vector (real part
// convention as above); usable beyond the dense cap.
std::vector<double> apply_collective(std::int64_t n, Collective which,
                                     const std::vector<double>& v);

// Dense Bell operator A Sz + A' Sx + (B/2) Szz + (C/2) Sxx + D Sxz + beta_c.
Eigen::MatrixXd dense_bell_operator(const BellInequality& q, const MeasurementPair& m);

// Ascending spectrum of the dense Bell operator.
std::vector<double> dense_spectrum(const BellInequality& q, const MeasurementPair& m);

// Project the dense operator onto the explicit Dicke-times-singlets basis of
// sector J and compare entrywise with build_block; returns max |difference|.
double block_projection_check(const BellInequality& q, const MeasurementPair& m,
                              std::int64_t twoJ);

// Extreme points of the convex hull of the correlator images of ALL of T_n,
// decided by exact rational linear programming.
std::vector<SymmetricCorrelators> hull_extreme_points(std::int64_t n);

// Expectation values of the dense Bell operator on the GHZ state and on the
// even classical mixture of |0...0> and |1...1>.
std::pair<double, double> ghz_vs_mixture(const BellInequality& q, const MeasurementPair& m);

} // namespace oracle
} // namespace pibell
