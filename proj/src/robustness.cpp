#include "pibell/robustness.hpp"

#include <cmath>
#include <numbers>

#include "pibell/inequalities.hpp"

namespace pibell {

SpinFormCoefficients inequality_in_spin_form(const BellInequality& q,
                                             const MeasurementPair& m) {
  const OperatorConstants c = block_constants(q, m);
  SpinFormCoefficients f;
  f.A = c.A;
  f.Ap = c.Ap;
  f.B = c.B;
  f.C = c.C;
  f.D = c.D;
  f.constant = q.beta_c.get_d() - q.n * (c.B + c.C) / 2;
  return f;
}

double evaluate_spin_form(const SpinFormCoefficients& f, const SpinMomentSet& moms) {
  return f.constant + 2 * f.A * moms.Sz + 2 * f.Ap * moms.Sx +
         2 * (f.B - f.D) * moms.Szz + 2 * (f.C - f.D) * moms.Sxx +
         4 * f.D * moms.Sdiag;
}

SpinMomentSet apply_error_model(const SpinMomentSet& moms, const ErrorModel& e) {
  if (e.eta <= 0 || e.eta > 1) throw OutOfRange("visibility must lie in (0, 1]");
  if (e.kappa < 0) throw OutOfRange("offset must be nonnegative");
  SpinMomentSet out = moms;  // first moments are left untouched by the model
  out.Szz = e.kappa + e.eta * moms.Szz;
  out.Sxx = e.kappa + e.eta * moms.Sxx;
  out.Sdiag = e.kappa + e.eta * moms.Sdiag;
  return out;
}

RobustnessTable robustness_sweep(const BellInequality& q, const MeasurementPair& m,
                                 const SpinMomentSet& ideal,
                                 const std::vector<double>& etas, double kappa_min,
                                 double kappa_max, int kappa_steps) {
  if (kappa_steps < 2 || kappa_max < kappa_min) throw OutOfRange("bad kappa grid");
  const SpinFormCoefficients f = inequality_in_spin_form(q, m);
  RobustnessTable table;
  for (double eta : etas) {
    auto value_at = [&](double kappa) {
      return evaluate_spin_form(f, apply_error_model(ideal, {eta, kappa}));
    };
    for (int i = 0; i < kappa_steps; ++i) {
      const double kappa = kappa_min + (kappa_max - kappa_min) * i / (kappa_steps - 1);
      table.points.push_back({eta, kappa, value_at(kappa)});
    }
    // Threshold kappa*: bisect the sign change if the ideal point violates.
    std::optional<double> kstar;
    if (value_at(kappa_min) < 0) {
      if (value_at(kappa_max) < 0) {
        kstar = kappa_max;  // still violating at the end of the sweep window
      } else {
        double lo = kappa_min, hi = kappa_max;
        while (hi - lo > 1e-6 * std::max(1.0, std::abs(hi))) {
          const double mid = (lo + hi) / 2;
          (value_at(mid) < 0 ? lo : hi) = mid;
        }
        kstar = (lo + hi) / 2;
      }
    }
    table.kappa_star.emplace_back(eta, kstar);
  }
  return table;
}

double mimic_artifact_check(double eta_x, double eta_diag, std::int64_t n) {
  // The balanced inequality 2n - 2 S0 + S00/2 - S01 + S11/2 >= 0, measured in
  // a frame rotated by pi/4 from the tridiagonal angles so that D != 0 and
  // both <S_x^2> and <S_{pi/4}^2> carry n^2-sized terms.
  const BellInequality q = generate_class({1, 1, 0, -1, -1}, n);
  const double pi = std::numbers::pi;
  const SpinFormCoefficients f = inequality_in_spin_form(q, {pi / 6 + pi / 4, 5 * pi / 6 + pi / 4});
  const double diag_ideal = n * (n / 2.0 + 1 / std::sqrt(3.0)) / 4;
  // Calibrating the two second moments with different visibilities breaks the
  // exact cancellation of their n^2 parts; this is the leftover term.
  return 4 * f.D * (eta_diag - eta_x) * diag_ideal;
}

} // namespace pibell
