#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pibell/bell_operator.hpp"
#include "pibell/polytope.hpp"

namespace pibell {

// Measured second moments are kappa + eta * ideal; first moments untouched.
struct ErrorModel {
  double eta = 1.0;    // visibility, in (0, 1]
  double kappa = 0.0;  // additive offset in counts^2, >= 0
};

// Collective-spin moments entering the spin form of a two-body inequality.
struct SpinMomentSet {
  std::int64_t n = 0;
  double Sz = 0, Sx = 0;          // first moments
  double Szz = 0, Sxx = 0;        // <S_z^2>, <S_x^2>
  double Sdiag = 0;               // <S_{pi/4}^2>, the diagonal direction
};

// Coefficients of  beta_c + 2A<S_z> + 2A'<S_x> + 2(B-D)<S_z^2> + 2(C-D)<S_x^2>
//                + 4D<S_{pi/4}^2> - n(B+C)/2 >= 0.
struct SpinFormCoefficients {
  double A = 0, Ap = 0, B = 0, C = 0, D = 0;
  double constant = 0;  // beta_c - n(B+C)/2
};

SpinFormCoefficients inequality_in_spin_form(const BellInequality& q,
                                             const MeasurementPair& m);

double evaluate_spin_form(const SpinFormCoefficients& f, const SpinMomentSet& moms);

SpinMomentSet apply_error_model(const SpinMomentSet& moms, const ErrorModel& e);

struct RobustnessPoint {
  double eta = 0, kappa = 0, value = 0;
};

struct RobustnessTable {
  std::vector<RobustnessPoint> points;
  // kappa*(eta): largest offset still violating, per eta; absent when the
  // ideal value is already nonnegative.
  std::vector<std::pair<double, std::optional<double>>> kappa_star;
};

// Sweep the error model over a kappa grid for each eta and locate the
// violation threshold by bisection (1e-6 relative).
RobustnessTable robustness_sweep(const BellInequality& q, const MeasurementPair& m,
                                 const SpinMomentSet& ideal,
                                 const std::vector<double>& etas, double kappa_min,
                                 double kappa_max, int kappa_steps);

// Diagnostic for inconsistent calibration: applying different visibilities to
// <S_x^2> and <S_{pi/4}^2> breaks an exact cancellation and leaves a spurious
// residual growing like n^2.  Returns the residual magnitude.
double mimic_artifact_check(double eta_x, double eta_diag, std::int64_t n);

} // namespace pibell
