#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pibell/bell_operator.hpp"
#include "pibell/errors.hpp"
#include "pibell/inequalities.hpp"
#include "pibell/robustness.hpp"
#include "pibell/states.hpp"

using namespace pibell;

namespace {

constexpr double kPi = std::numbers::pi;

BellInequality example_inequality(std::int64_t n) {
  return generate_class({1, 1, 0, -1, -1}, n);
}

// Ideal moments of the broad-Gaussian state in the measurement frame of the
// example inequality at (phi, theta) = (pi/6, 5 pi/6).
SpinMomentSet gaussian_case_moments(std::int64_t n) {
  SpinMomentSet s;
  s.n = n;
  s.Sz = 1.0 / (2 * std::sqrt(3.0));
  s.Sx = n / 2.0;
  s.Szz = 0.0;
  s.Sxx = n * n / 4.0;
  s.Sdiag = n * (n / 2.0 + 1.0 / std::sqrt(3.0)) / 4.0;
  return s;
}

SpinMomentSet half_filled_moments(std::int64_t n) {
  SpinMomentSet s;
  s.n = n;
  s.Sxx = n * (n + 2.0) / 8.0;
  s.Sdiag = n * (n + 2.0) / 16.0;
  return s;
}

}  // namespace

TEST_CASE("spin form evaluates like the correlator form on Dicke states") {
  // On |D_n^k> in the z basis: <Sz> = n/2 - k, <Sz^2> = (n/2 - k)^2,
  // <Sx> = 0, <Sx^2> = [k(n-k) + n/2]/2... checked against the block value.
  const std::int64_t n = 14;
  auto q = example_inequality(n);
  MeasurementPair m{0.7, 2.3};
  auto f = inequality_in_spin_form(q, m);
  auto b = build_block(q, m, n);
  for (std::int64_t k : {0, 3, 7, 14}) {
    SpinMomentSet mom;
    mom.n = n;
    double g = n / 2.0 - k;
    mom.Sz = g;
    mom.Szz = g * g;
    mom.Sx = 0;
    mom.Sxx = (double(k) * (n - k) + n / 2.0) / 2.0;
    // S_{pi/4}^2 = (Sz^2 + Sx^2 + Sz Sx + Sx Sz)/2; the cross part vanishes
    // on a Dicke state.
    mom.Sdiag = (mom.Szz + mom.Sxx) / 2.0;
    CAPTURE(k);
    CHECK(evaluate_spin_form(f, mom) == doctest::Approx(b.d[k]).epsilon(1e-10));
  }
}

TEST_CASE("spin form constant term") {
  auto q = example_inequality(20);
  MeasurementPair m{kPi / 6, 5 * kPi / 6};
  auto f = inequality_in_spin_form(q, m);
  // B = 3, C = 0 here, so the constant is beta_c - n(B+C)/2 = 40 - 30.
  CHECK(f.constant == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(f.A == doctest::Approx(-std::sqrt(3.0)).epsilon(1e-12));
  CHECK(f.B == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("error model touches only second moments") {
  SpinMomentSet mom = gaussian_case_moments(100);
  auto noisy = apply_error_model(mom, {0.9, 25.0});
  CHECK(noisy.Sz == mom.Sz);
  CHECK(noisy.Sx == mom.Sx);
  CHECK(noisy.Szz == doctest::Approx(25.0 + 0.9 * mom.Szz));
  CHECK(noisy.Sxx == doctest::Approx(25.0 + 0.9 * mom.Sxx));
  CHECK(noisy.Sdiag == doctest::Approx(25.0 + 0.9 * mom.Sdiag));
  CHECK_THROWS_AS(apply_error_model(mom, {1.2, 0.0}), OutOfRange);
  CHECK_THROWS_AS(apply_error_model(mom, {0.0, 0.0}), OutOfRange);
  CHECK_THROWS_AS(apply_error_model(mom, {0.9, -1.0}), OutOfRange);
}

TEST_CASE("gaussian case study ideal value is -n/2 - 1") {
  for (std::int64_t n : {100, 1000, 8000}) {
    auto q = example_inequality(n);
    MeasurementPair m{kPi / 6, 5 * kPi / 6};
    auto f = inequality_in_spin_form(q, m);
    CAPTURE(n);
    CHECK(evaluate_spin_form(f, gaussian_case_moments(n)) ==
          doctest::Approx(-(n / 2.0) - 1).epsilon(1e-9));
  }
}

TEST_CASE("gaussian case kappa threshold near (n/2 + 1)/6") {
  // The offset enters through 2(B + C) kappa = 6 kappa; violation dies at
  // kappa* = (n/2 + 1)/6.
  const std::int64_t n = 8000;
  auto q = example_inequality(n);
  MeasurementPair m{kPi / 6, 5 * kPi / 6};
  auto table = robustness_sweep(q, m, gaussian_case_moments(n), {1.0}, 0.0,
                                2000.0, 41);
  REQUIRE(table.kappa_star.size() == 1);
  REQUIRE(table.kappa_star[0].second.has_value());
  CHECK(*table.kappa_star[0].second ==
        doctest::Approx((n / 2.0 + 1) / 6.0).epsilon(1e-3));
}

TEST_CASE("sweep reports a point grid and monotone values in kappa") {
  const std::int64_t n = 1000;
  auto q = example_inequality(n);
  MeasurementPair m{kPi / 6, 5 * kPi / 6};
  auto table = robustness_sweep(q, m, gaussian_case_moments(n), {1.0, 0.8},
                                0.0, 200.0, 21);
  CHECK(table.points.size() == 2 * 21);
  double prev = -1e300;
  for (const auto& p : table.points) {
    if (p.eta != 1.0) break;
    CHECK(p.value >= prev);  // adding offset only hurts here (B + C > 0)
    prev = p.value;
  }
}

TEST_CASE("half-filled case study is less offset tolerant") {
  const std::int64_t n = 8000;
  auto qg = example_inequality(n);
  MeasurementPair mg{kPi / 6, 5 * kPi / 6};
  auto tg = robustness_sweep(qg, mg, gaussian_case_moments(n), {1.0}, 0.0,
                             2000.0, 41);
  auto qh = half_filled_dicke_inequality(n);
  auto vh = dicke_numeric_violation(n, n / 2, DickeClass::mid);
  REQUIRE(vh.value < 0);
  MeasurementPair mh{vh.phi_star, vh.theta_star};
  auto th = robustness_sweep(qh, mh, half_filled_moments(n), {1.0}, 0.0,
                             2000.0, 41);
  REQUIRE(tg.kappa_star[0].second.has_value());
  REQUIRE(th.kappa_star[0].second.has_value());
  CHECK(*tg.kappa_star[0].second > 5.0 * *th.kappa_star[0].second);
}

TEST_CASE("no threshold reported without an ideal violation") {
  // Low visibility on the half-filled case: the second moments carry the
  // whole violation there, so a small eta erases it already at kappa = 0.
  const std::int64_t n = 100;
  auto q = half_filled_dicke_inequality(n);
  auto v = dicke_numeric_violation(n, n / 2, DickeClass::mid);
  MeasurementPair m{v.phi_star, v.theta_star};
  auto f = inequality_in_spin_form(q, m);
  SpinMomentSet mom;
  mom.n = n;
  mom.Sxx = n * (n + 2.0) / 8.0;
  mom.Sdiag = n * (n + 2.0) / 16.0;
  REQUIRE(evaluate_spin_form(f, apply_error_model(mom, {0.05, 0.0})) >= 0);
  auto table = robustness_sweep(q, m, mom, {0.05}, 0.0, 100.0, 11);
  CHECK_FALSE(table.kappa_star[0].second.has_value());
}

TEST_CASE("mimic artifact grows like n^2 with mismatched visibilities") {
  double r1 = std::abs(mimic_artifact_check(1.0, 0.9, 1000));
  double r2 = std::abs(mimic_artifact_check(1.0, 0.9, 2000));
  CHECK(r1 > 0);
  CHECK(r2 / r1 == doctest::Approx(4.0).epsilon(0.05));
  // consistent calibration leaves no residual
  CHECK(mimic_artifact_check(0.9, 0.9, 1000) == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
}

TEST_CASE("spin form at eta = 1 kappa = 0 equals the ideal value") {
  const std::int64_t n = 4000;
  auto q = example_inequality(n);
  MeasurementPair m{kPi / 6, 5 * kPi / 6};
  auto f = inequality_in_spin_form(q, m);
  auto mom = apply_error_model(gaussian_case_moments(n), {1.0, 0.0});
  CHECK(evaluate_spin_form(f, mom) ==
        doctest::Approx(-(n / 2.0) - 1).epsilon(1e-9));
}
