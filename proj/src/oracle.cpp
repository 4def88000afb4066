#include "pibell/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace pibell {
namespace oracle {

namespace {

int pop(std::uint64_t x) { return std::popcount(x); }

int sign_of(int d) { return (d > 0) - (d < 0); }

// Matrix element <i| O |j> per the bitwise rules; imaginary part for the
// Sy-family operators.
double entry(std::int64_t n, Collective which, std::uint64_t i, std::uint64_t j) {
  const int ham = pop(i ^ j);
  const int pi = pop(i), pj = pop(j);
  switch (which) {
    case Collective::Sx:
      return ham == 1 ? 1.0 : 0.0;
    case Collective::Sy:
      return ham == 1 ? sign_of(pi - pj) : 0.0;
    case Collective::Sz:
      return i == j ? double(n - 2 * pi) : 0.0;
    case Collective::Sxx:
      return ham == 2 ? 2.0 : 0.0;
    case Collective::Sxy:
      return ham == 2 ? sign_of(pi - pj) * (1 - ((pi - pj) / 2 % 2 ? -1 : 1)) : 0.0;
    case Collective::Sxz:
      return ham == 1 ? double(n - pi - pj) : 0.0;
    case Collective::Syy:
      return ham == 2 ? 2.0 * ((pi - pj) / 2 % 2 ? -1 : 1) : 0.0;
    case Collective::Syz:
      return ham == 1 ? sign_of(pi - pj) * double(n - pi - pj) : 0.0;
    case Collective::Szz:
      return i == j ? double(n - 2 * pi) * (n - 2 * pi) - n : 0.0;
  }
  return 0.0;
}

} // namespace

Eigen::MatrixXd dense_collective(std::int64_t n, Collective which) {
  if (n < 1 || n > 14) throw TooLarge("dense collective operators capped at n = 14");
  const std::int64_t dim = std::int64_t(1) << n;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(dim, dim);
  for (std::int64_t i = 0; i < dim; ++i)
    for (std::int64_t j = 0; j < dim; ++j)
      M(i, j) = entry(n, which, i, j);
  return M;
}

std::vector<double> apply_collective(std::int64_t n, Collective which,
                                     const std::vector<double>& v) {
  const std::uint64_t dim = std::uint64_t(1) << n;
  if (v.size() != dim) throw DimensionMismatch("vector length must be 2^n");
  std::vector<double> out(dim, 0.0);
  const bool two_flip =
      which == Collective::Sxx || which == Collective::Sxy || which == Collective::Syy;
  const bool one_flip =
      which == Collective::Sx || which == Collective::Sy || which == Collective::Sxz ||
      which == Collective::Syz;
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (which == Collective::Sz || which == Collective::Szz) {
      out[i] = entry(n, which, i, i) * v[i];
      continue;
    }
    double acc = 0;
    if (one_flip) {
      for (int b = 0; b < n; ++b) {
        const std::uint64_t j = i ^ (std::uint64_t(1) << b);
        acc += entry(n, which, i, j) * v[j];
      }
    } else if (two_flip) {
      for (int b1 = 1; b1 < n; ++b1)
        for (int b0 = 0; b0 < b1; ++b0) {
          const std::uint64_t j = i ^ (std::uint64_t(1) << b0) ^ (std::uint64_t(1) << b1);
          acc += entry(n, which, i, j) * v[j];
        }
    }
    out[i] = acc;
  }
  return out;
}

Eigen::MatrixXd dense_bell_operator(const BellInequality& q, const MeasurementPair& m) {
  if (q.n > 12) throw TooLarge("dense Bell operator capped at n = 12");
  const OperatorConstants c = block_constants(q, m);
  const std::int64_t dim = std::int64_t(1) << q.n;
  Eigen::MatrixXd B = c.A * dense_collective(q.n, Collective::Sz) +
                      c.Ap * dense_collective(q.n, Collective::Sx) +
                      (c.B / 2) * dense_collective(q.n, Collective::Szz) +
                      (c.C / 2) * dense_collective(q.n, Collective::Sxx) +
                      c.D * dense_collective(q.n, Collective::Sxz);
  B += q.beta_c.get_d() * Eigen::MatrixXd::Identity(dim, dim);
  return B;
}

std::vector<double> dense_spectrum(const BellInequality& q, const MeasurementPair& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_bell_operator(q, m),
                                                    Eigen::EigenvaluesOnly);
  return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

double block_projection_check(const BellInequality& q, const MeasurementPair& m,
                              std::int64_t twoJ) {
  if (q.n > 10) throw TooLarge("block projection capped at n = 10");
  if (twoJ < 0 || twoJ > q.n || (twoJ % 2) != (q.n % 2))
    throw BadSpinLabel("2J must satisfy 0 <= 2J <= n and 2J = n mod 2");
  const std::int64_t n = q.n, mm = n - twoJ;
  const std::int64_t dim = std::int64_t(1) << n;
  // Basis vectors |D_{2J}^k> on the first 2J qubits, singlet pairs on the rest.
  Eigen::MatrixXd V = Eigen::MatrixXd::Zero(dim, twoJ + 1);
  for (std::int64_t k = 0; k <= twoJ; ++k) {
    const double dicke_norm = std::sqrt(binomial(twoJ, k).get_d());
    const double singlet_norm = std::pow(std::sqrt(2.0), mm / 2);
    for (std::int64_t s = 0; s < dim; ++s) {
      const std::uint64_t head = std::uint64_t(s) & ((std::uint64_t(1) << twoJ) - 1);
      const std::uint64_t tail = std::uint64_t(s) >> twoJ;
      if (pop(head) != k) continue;
      double singlet = 1.0;
      for (std::int64_t p = 0; p < mm / 2; ++p) {
        const int b0 = (tail >> (2 * p)) & 1, b1 = (tail >> (2 * p + 1)) & 1;
        if (b0 == b1) { singlet = 0; break; }
        if (b1 == 1) singlet = -singlet;  // |10> enters the singlet with a minus
      }
      if (singlet == 0) continue;
      V(s, k) = singlet / (dicke_norm * singlet_norm);
    }
  }
  const Eigen::MatrixXd proj = V.transpose() * dense_bell_operator(q, m) * V;
  const BellBlock blk = build_block(q, m, twoJ);
  double diff = 0;
  for (std::int64_t r = 0; r <= twoJ; ++r)
    for (std::int64_t c = 0; c <= twoJ; ++c) {
      double expect = 0;
      if (r == c) expect = blk.d[r];
      else if (std::abs(r - c) == 1) expect = blk.u[std::min(r, c)];
      else if (std::abs(r - c) == 2) expect = blk.v[std::min(r, c)];
      diff = std::max(diff, std::abs(proj(r, c) - expect));
    }
  return diff;
}

namespace {

// Exact phase-1 simplex: is there lambda >= 0 with A lambda = b?  Bland's rule.
bool rational_feasible(std::vector<std::vector<mpq_class>> A, std::vector<mpq_class> b) {
  const std::size_t rows = A.size();
  const std::size_t cols = rows ? A[0].size() : 0;
  for (std::size_t r = 0; r < rows; ++r)
    if (b[r] < 0) {
      for (auto& x : A[r]) x = -x;
      b[r] = -b[r];
    }
  // Tableau with one artificial variable per row; minimize their sum.
  const std::size_t total = cols + rows;
  std::vector<std::vector<mpq_class>> T(rows, std::vector<mpq_class>(total + 1));
  std::vector<std::size_t> basis(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) T[r][c] = A[r][c];
    T[r][cols + r] = 1;
    T[r][total] = b[r];
    basis[r] = cols + r;
  }
  std::vector<mpq_class> obj(total + 1);  // reduced costs of sum of artificials
  for (std::size_t c = 0; c <= total; ++c)
    for (std::size_t r = 0; r < rows; ++r) obj[c] += T[r][c];
  while (true) {
    std::size_t enter = total;
    for (std::size_t c = 0; c < cols; ++c)  // artificials never re-enter
      if (obj[c] > 0) { enter = c; break; }
    if (enter == total) break;
    std::size_t leave = rows;
    mpq_class best;
    for (std::size_t r = 0; r < rows; ++r) {
      if (T[r][enter] <= 0) continue;
      mpq_class ratio = T[r][total] / T[r][enter];
      if (leave == rows || ratio < best ||
          (ratio == best && basis[r] < basis[leave]))
        { leave = r; best = ratio; }
    }
    if (leave == rows) break;  // unbounded direction: cannot reduce further
    const mpq_class piv = T[leave][enter];
    for (auto& x : T[leave]) x /= piv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == leave || T[r][enter] == 0) continue;
      const mpq_class f = T[r][enter];
      for (std::size_t c = 0; c <= total; ++c) T[r][c] -= f * T[leave][c];
    }
    const mpq_class fo = obj[enter];
    for (std::size_t c = 0; c <= total; ++c) obj[c] -= fo * T[leave][c];
    basis[leave] = enter;
  }
  return obj[total] == 0;  // artificials driven to zero means feasible
}

} // namespace

std::vector<SymmetricCorrelators> hull_extreme_points(std::int64_t n) {
  if (n > 8) throw TooLarge("exact hull check capped at n = 8");
  std::vector<SymmetricCorrelators> pts;
  for (const StrategyTuple& t : enumerate_all_tuples(n)) pts.push_back(phi(t));
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  std::vector<SymmetricCorrelators> extreme;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    // p is extreme iff it is NOT a convex combination of the other points.
    std::vector<std::vector<mpq_class>> A(6);
    std::vector<mpq_class> b{mpq_class(pts[i].S0), mpq_class(pts[i].S1),
                             mpq_class(pts[i].S00), mpq_class(pts[i].S01),
                             mpq_class(pts[i].S11), mpq_class(1)};
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (j == i) continue;
      A[0].push_back(pts[j].S0);
      A[1].push_back(pts[j].S1);
      A[2].push_back(pts[j].S00);
      A[3].push_back(pts[j].S01);
      A[4].push_back(pts[j].S11);
      A[5].push_back(1);
    }
    if (!rational_feasible(std::move(A), std::move(b))) extreme.push_back(pts[i]);
  }
  return extreme;
}

std::pair<double, double> ghz_vs_mixture(const BellInequality& q, const MeasurementPair& m) {
  const Eigen::MatrixXd B = dense_bell_operator(q, m);
  const std::int64_t last = (std::int64_t(1) << q.n) - 1;
  const double ghz = (B(0, 0) + B(last, last)) / 2 + B(0, last);
  const double mix = (B(0, 0) + B(last, last)) / 2;
  return {ghz, mix};
}

} // namespace oracle
} // namespace pibell
