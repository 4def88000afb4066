#include "pibell/bell_operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Dense>
#include <lapacke.h>

namespace pibell {

namespace {

constexpr double kDegenerateSine = 1e-9;

Eigen::MatrixXd block_to_dense(const BellBlock& b) {
  const std::int64_t dim = b.twoJ + 1;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(dim, dim);
  for (std::int64_t k = 0; k < dim; ++k) M(k, k) = b.d[k];
  for (std::int64_t k = 0; k + 1 < dim; ++k) M(k, k + 1) = M(k + 1, k) = b.u[k];
  for (std::int64_t k = 0; k + 2 < dim; ++k) M(k, k + 2) = M(k + 2, k) = b.v[k];
  return M;
}

double banded_min_eigenvalue_value(const BellBlock& b) {
  const lapack_int dim = static_cast<lapack_int>(b.twoJ + 1);
  const lapack_int kd = 2;
  const lapack_int ldab = kd + 1;
  // Lower-triangular band storage, column major: AB(i-j, j) = M(i, j).
  std::vector<double> ab(static_cast<std::size_t>(ldab) * dim, 0.0);
  for (lapack_int j = 0; j < dim; ++j) {
    ab[0 + j * ldab] = b.d[j];
    if (j + 1 < dim) ab[1 + j * ldab] = b.u[j];
    if (j + 2 < dim) ab[2 + j * ldab] = b.v[j];
  }
  std::vector<double> w(dim);
  std::vector<lapack_int> ifail(dim);
  lapack_int found = 0;
  lapack_int info = LAPACKE_dsbevx(
      LAPACK_COL_MAJOR, 'N', 'I', 'L', dim, kd, ab.data(), ldab, nullptr, dim,
      0.0, 0.0, 1, 1, 2.0 * LAPACKE_dlamch('S'), &found, w.data(), nullptr, dim,
      ifail.data());
  if (info != 0 || found < 1)
    throw ConvergenceFailure("banded eigensolver failed, info=" + std::to_string(info));
  return w[0];
}

EigenPair banded_min_eigenvalue(const BellBlock& b) {
  // Accumulating the band-reduction orthogonal factor inside dsbevx is
  // O(dim^2) strided work and dominates at large dim; inverse iteration
  // with a banded LU of (M - lambda I) recovers the eigenvector in O(dim).
  const lapack_int dim = static_cast<lapack_int>(b.twoJ + 1);
  EigenPair out;
  out.value = banded_min_eigenvalue_value(b);

  const lapack_int kl = 2, ku = 2;
  const lapack_int ldafb = 2 * kl + ku + 1;
  // dgbtrf band storage with fill-in room: AFB(kl + ku + i - j, j) = M(i, j).
  std::vector<double> afb(static_cast<std::size_t>(ldafb) * dim, 0.0);
  auto put = [&](lapack_int i, lapack_int j, double v) {
    afb[kl + ku + i - j + j * ldafb] = v;
  };
  // Small relative shift keeps the factorization well conditioned while the
  // inverse power step still amplifies the wanted eigenvector overwhelmingly.
  double scale = 0;
  for (double x : b.d) scale = std::max(scale, std::abs(x));
  const double shift = out.value - 1e-10 * (scale + 1.0);
  for (lapack_int j = 0; j < dim; ++j) {
    put(j, j, b.d[j] - shift);
    if (j + 1 < dim) {
      put(j + 1, j, b.u[j]);
      put(j, j + 1, b.u[j]);
    }
    if (j + 2 < dim) {
      put(j + 2, j, b.v[j]);
      put(j, j + 2, b.v[j]);
    }
  }
  std::vector<lapack_int> ipiv(dim);
  lapack_int info = LAPACKE_dgbtrf(LAPACK_COL_MAJOR, dim, dim, kl, ku,
                                   afb.data(), ldafb, ipiv.data());
  if (info < 0)
    throw ConvergenceFailure("band LU failed, info=" + std::to_string(info));
  std::vector<double> x(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  for (int iter = 0; iter < 4; ++iter) {
    info = LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', dim, kl, ku, 1, afb.data(),
                          ldafb, ipiv.data(), x.data(), dim);
    if (info != 0)
      throw ConvergenceFailure("band solve failed, info=" + std::to_string(info));
    double norm = 0;
    for (double v : x) norm += v * v;
    norm = std::sqrt(norm);
    if (!(norm > 0)) throw ConvergenceFailure("inverse iteration collapsed");
    for (double& v : x) v /= norm;
  }
  // Residual check: || M x - lambda x || should be tiny.
  double res = 0;
  for (lapack_int i = 0; i < dim; ++i) {
    double mx = b.d[i] * x[i];
    if (i >= 1) mx += b.u[i - 1] * x[i - 1];
    if (i + 1 < dim) mx += b.u[i] * x[i + 1];
    if (i >= 2) mx += b.v[i - 2] * x[i - 2];
    if (i + 2 < dim) mx += b.v[i] * x[i + 2];
    res += (mx - out.value * x[i]) * (mx - out.value * x[i]);
  }
  if (std::sqrt(res) > 1e-6 * (scale + 1.0))
    throw ConvergenceFailure("inverse iteration did not converge");
  if (x[0] < 0 || (x[0] == 0 && x[1] < 0))
    for (double& v : x) v = -v;
  out.vector = std::move(x);
  return out;
}

double min_eigenvalue_only(const BellBlock& b) {
  const std::int64_t dim = b.twoJ + 1;
  if (dim < 1) throw BadSpinLabel("empty block");
  if (dim == 1) return b.d[0];
  if (dim < 512) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block_to_dense(b),
                                                      Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw ConvergenceFailure("dense eigensolve failed");
    return es.eigenvalues()(0);
  }
  return banded_min_eigenvalue_value(b);
}

} // namespace

OperatorConstants block_constants(const BellInequality& q, const MeasurementPair& m) {
  const double al = q.alpha.get_d(), be = q.beta.get_d();
  const double ga = q.gamma.get_d(), de = q.delta.get_d(), ep = q.epsilon.get_d();
  const double cp = std::cos(m.phi), sp = std::sin(m.phi);
  const double ct = std::cos(m.theta), st = std::sin(m.theta);
  OperatorConstants k;
  k.A = al * cp + be * ct;
  k.Ap = al * sp + be * st;
  k.B = ga * cp * cp + 2 * de * cp * ct + ep * ct * ct;
  k.C = ga * sp * sp + 2 * de * sp * st + ep * st * st;
  k.D = ga * cp * sp + de * (cp * st + ct * sp) + ep * ct * st;
  return k;
}

BellBlock build_block(const BellInequality& q, const MeasurementPair& m, std::int64_t twoJ) {
  if (twoJ < 0 || twoJ > q.n || (twoJ % 2) != (q.n % 2))
    throw BadSpinLabel("2J must satisfy 0 <= 2J <= n and 2J = n mod 2");
  const OperatorConstants c = block_constants(q, m);
  const double bc = q.beta_c.get_d();
  const double n = static_cast<double>(q.n);
  const double mm = static_cast<double>(q.n - twoJ);
  BellBlock b;
  b.n = q.n;
  b.twoJ = twoJ;
  b.d.resize(twoJ + 1);
  b.u.resize(std::max<std::int64_t>(twoJ, 0));
  b.v.resize(std::max<std::int64_t>(twoJ - 1, 0));
  for (std::int64_t k = 0; k <= twoJ; ++k) {
    const double g = static_cast<double>(twoJ - 2 * k);
    b.d[k] = bc + g * c.A + (g * g - n) * c.B / 2 +
             (2.0 * k * (twoJ - k) - mm) * c.C / 2;
  }
  for (std::int64_t k = 0; k < twoJ; ++k)
    b.u[k] = (c.Ap + (twoJ - 1 - 2 * k) * c.D) *
             std::sqrt(static_cast<double>((twoJ - k) * (k + 1)));
  for (std::int64_t k = 0; k + 1 < twoJ; ++k)
    b.v[k] = c.C *
             std::sqrt(static_cast<double>((twoJ - k) * (twoJ - k - 1) * (k + 1) * (k + 2))) /
             2.0;
  return b;
}

EigenPair min_eigenvalue(const BellBlock& b) {
  const std::int64_t dim = b.twoJ + 1;
  if (dim < 1) throw BadSpinLabel("empty block");
  if (dim == 1) return {b.d[0], {1.0}};
  if (dim < 512) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block_to_dense(b));
    if (es.info() != Eigen::Success) throw ConvergenceFailure("dense eigensolve failed");
    EigenPair out;
    out.value = es.eigenvalues()(0);
    out.vector.assign(es.eigenvectors().col(0).data(),
                      es.eigenvectors().col(0).data() + dim);
    return out;
  }
  return banded_min_eigenvalue(b);
}

std::vector<double> block_spectrum(const BellBlock& b) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block_to_dense(b),
                                                    Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw ConvergenceFailure("dense eigensolve failed");
  return {es.eigenvalues().data(), es.eigenvalues().data() + b.twoJ + 1};
}

namespace {

double violation_at(const BellInequality& q, double theta, bool all_blocks,
                    std::int64_t* best_twoJ) {
  double best = std::numeric_limits<double>::infinity();
  const MeasurementPair m{0.0, theta};
  if (all_blocks) {
    for (std::int64_t twoJ = q.n % 2; twoJ <= q.n; twoJ += 2) {
      const double v = min_eigenvalue_only(build_block(q, m, twoJ));
      if (v < best) {
        best = v;
        if (best_twoJ) *best_twoJ = twoJ;
      }
    }
  } else {
    best = min_eigenvalue_only(build_block(q, m, q.n));
    if (best_twoJ) *best_twoJ = q.n;
  }
  return best;
}

} // namespace

ViolationResult max_quantum_violation(const BellInequality& q, const ViolationOptions& opts) {
  if (opts.grid_points < 8) throw OutOfRange("need at least 8 grid points");
  const double two_pi = 2 * std::numbers::pi;
  double best_theta = 0, best_value = std::numeric_limits<double>::infinity();
  for (int i = 1; i < opts.grid_points; ++i) {
    const double theta = two_pi * i / opts.grid_points;
    if (std::abs(std::sin(theta)) < kDegenerateSine) continue;  // M0 = +-M1
    const double v = violation_at(q, theta, opts.all_blocks, nullptr);
    if (v < best_value) {
      best_value = v;
      best_theta = theta;
    }
  }
  // Golden-section refinement inside the bracketing grid cells.
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = best_theta - two_pi / opts.grid_points;
  double hi = best_theta + two_pi / opts.grid_points;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = violation_at(q, x1, opts.all_blocks, nullptr);
  double f2 = violation_at(q, x2, opts.all_blocks, nullptr);
  while (hi - lo > opts.refine_tol) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = violation_at(q, x1, opts.all_blocks, nullptr);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = violation_at(q, x2, opts.all_blocks, nullptr);
    }
  }
  double theta_star = (lo + hi) / 2;
  // (phi, theta) -> (-phi, -theta) is conjugation by a z rotation, so the
  // mirror angle 2 pi - theta is equivalent; report the one in (0, pi).
  if (theta_star > std::numbers::pi) theta_star = two_pi - theta_star;
  ViolationResult res;
  res.value = violation_at(q, theta_star, opts.all_blocks, &res.twoJ);
  res.m = {0.0, theta_star};
  res.state = min_eigenvalue(build_block(q, res.m, res.twoJ)).vector;
  return res;
}

std::vector<double> tridiagonal_angles(const BellInequality& q, double kappa) {
  if (q.gamma == 0) throw NoRealSolution("gamma must be nonzero");
  const mpq_class disc_exact = q.delta * q.delta - q.gamma * q.epsilon;
  if (disc_exact < 0) throw NoRealSolution("delta^2 - gamma*epsilon < 0");
  if (std::abs(std::sin(kappa)) < kDegenerateSine)
    throw DegenerateMeasurements("kappa makes M0 = +-M1");
  const double ga = q.gamma.get_d(), de = q.delta.get_d();
  const double root = std::sqrt(disc_exact.get_d());
  std::vector<double> out;
  out.push_back(std::atan2(ga * std::sin(kappa), ga * std::cos(kappa) + de + root));
  if (disc_exact > 0)
    out.push_back(std::atan2(ga * std::sin(kappa), ga * std::cos(kappa) + de - root));
  return out;
}

double spectrum_shift_check(const BellInequality& q, double c, const MeasurementPair& m) {
  std::vector<double> s1, s2;
  for (std::int64_t twoJ = q.n % 2; twoJ <= q.n; twoJ += 2) {
    const auto a = block_spectrum(build_block(q, m, twoJ));
    const auto b = block_spectrum(build_block(q, {m.phi + c, m.theta + c}, twoJ));
    s1.insert(s1.end(), a.begin(), a.end());
    s2.insert(s2.end(), b.begin(), b.end());
  }
  std::sort(s1.begin(), s1.end());
  std::sort(s2.begin(), s2.end());
  double diff = 0;
  for (std::size_t i = 0; i < s1.size(); ++i) diff = std::max(diff, std::abs(s1[i] - s2[i]));
  return diff;
}

std::vector<BlockInfo> schur_weyl_dimensions(std::int64_t n) {
  if (n < 1) throw OutOfRange("party count must be positive");
  std::vector<BlockInfo> out;
  for (std::int64_t twoJ = n % 2; twoJ <= n; twoJ += 2) {
    BlockInfo b;
    b.twoJ = twoJ;
    b.dim = twoJ + 1;
    b.multiplicity = (twoJ == n)
                         ? mpz_class(1)
                         : binomial(n, (n - twoJ) / 2) - binomial(n, (n - twoJ) / 2 - 1);
    out.push_back(b);
  }
  return out;
}

} // namespace pibell
