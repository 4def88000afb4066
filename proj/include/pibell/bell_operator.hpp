#pragma once

#include <cstdint>
#include <vector>

#include "pibell/polytope.hpp"

namespace pibell {

// Measurement directions in the xz plane: M0 = cos(phi) sz + sin(phi) sx,
// M1 = cos(theta) sz + sin(theta) sx.  Only theta - phi affects the spectrum.
struct MeasurementPair {
  double phi = 0.0;
  double theta = 0.0;
};

// Angle-dependent scalars entering every block of the Bell operator.
struct OperatorConstants {
  double A = 0, Ap = 0, B = 0, C = 0, D = 0;
};

// One total-spin block: real symmetric pentadiagonal matrix of size 2J+1,
// stored as its three diagonals.  The constant beta_c is folded into d.
struct BellBlock {
  std::int64_t n = 0;
  std::int64_t twoJ = 0;          // 2J, same parity as n
  std::vector<double> d, u, v;    // sizes 2J+1, 2J, 2J-1
};

OperatorConstants block_constants(const BellInequality& q, const MeasurementPair& m);

BellBlock build_block(const BellInequality& q, const MeasurementPair& m, std::int64_t twoJ);

struct EigenPair {
  double value = 0;
  std::vector<double> vector;  // unit norm
};

// Smallest eigenvalue of the pentadiagonal block.  Dense solve below size 512,
// banded LAPACK solve (storage 3 x dim) above; both deterministic.
EigenPair min_eigenvalue(const BellBlock& b);

struct ViolationOptions {
  bool all_blocks = false;   // default: symmetric block J = n/2 only
  int grid_points = 720;     // coarse scan of theta - phi on (0, 2pi)
  double refine_tol = 1e-8;  // golden-section window in angle
};

struct ViolationResult {
  double value = 0;       // most negative total value; negative means violation
  MeasurementPair m;      // optimal angles with phi fixed to 0
  std::int64_t twoJ = 0;  // block achieving the optimum
  std::vector<double> state;  // eigenvector (Dicke coefficients when 2J = n)
};

ViolationResult max_quantum_violation(const BellInequality& q, const ViolationOptions& opts = {});

// Angles theta making the block tridiagonal (C = 0) at relative angle kappa:
// theta = arctan(gamma sin kappa / (gamma cos kappa + delta +- sqrt(delta^2 - gamma epsilon))).
std::vector<double> tridiagonal_angles(const BellInequality& q, double kappa);

// Largest absolute difference between the sorted spectra at (phi, theta) and
// (phi + c, theta + c); should vanish to solver precision.
double spectrum_shift_check(const BellInequality& q, double c, const MeasurementPair& m);

struct BlockInfo {
  std::int64_t twoJ = 0;
  std::int64_t dim = 0;      // 2J + 1
  mpz_class multiplicity;    // C(n, n/2-J) - C(n, n/2-J-1); 1 for J = n/2
};

// All Schur-Weyl sectors of n qubits; sum of dim * multiplicity is 2^n.
std::vector<BlockInfo> schur_weyl_dimensions(std::int64_t n);

// Full spectrum of one block (ignoring multiplicity), ascending.
std::vector<double> block_spectrum(const BellBlock& b);

} // namespace pibell
