#pragma once

// Spectral statistics of dense real symmetric matrices: sorted spectrum,
// spectral norm, empirical spectral distribution, trace moments and the
// Kolmogorov-Smirnov distance to a limit law.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "pseudospec/error.hpp"

namespace pseudospec {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
struct SpectralSummary {
  Vector<Scalar> eigenvalues;  // ascending
  Scalar norm = 0;             // max(|lambda_1|, |lambda_N|)
  std::optional<Matrix<Scalar>> eigenvectors;

  Eigen::Index size() const noexcept { return eigenvalues.size(); }
};

/// Builds a summary from an unsorted spectrum.
template <typename Scalar>
SpectralSummary<Scalar> summarize_spectrum(Vector<Scalar> eigenvalues) {
  if (eigenvalues.size() == 0) fail(Errc::invalid_input, "empty spectrum");
  std::sort(eigenvalues.data(), eigenvalues.data() + eigenvalues.size());
  SpectralSummary<Scalar> out;
  out.norm = std::max(std::abs(eigenvalues(0)), std::abs(eigenvalues(eigenvalues.size() - 1)));
  out.eigenvalues = std::move(eigenvalues);
  return out;
}

/// Throws invalid_input unless ||M - M^T||_F <= 1e-12 ||M||_F.
template <typename Derived>
void require_symmetric(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) fail(Errc::invalid_input, "matrix is not square");
  if (m.rows() == 0) fail(Errc::invalid_input, "empty matrix");
  const Scalar asym = (m - m.transpose()).norm();
  if (asym > Scalar(1e-12) * m.norm()) fail(Errc::invalid_input, "matrix is not symmetric within 1e-12 relative");
}

/// Householder tridiagonalisation + implicit symmetric QR (Eigen's solver).
template <typename Derived>
SpectralSummary<typename Derived::Scalar> symmetric_eigen(const Eigen::MatrixBase<Derived>& m,
                                                          bool want_vectors = false) {
  using Scalar = typename Derived::Scalar;
  require_symmetric(m);
  const Matrix<Scalar> dense = m;
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(
      dense, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) fail(Errc::numerical_failure, "symmetric eigensolver did not converge");

  SpectralSummary<Scalar> out;
  out.eigenvalues = solver.eigenvalues();  // already ascending
  const Eigen::Index n = out.eigenvalues.size();
  out.norm = std::max(std::abs(out.eigenvalues(0)), std::abs(out.eigenvalues(n - 1)));
  if (want_vectors) out.eigenvectors = solver.eigenvectors();
  return out;
}

template <typename Derived>
typename Derived::Scalar spectral_norm(const Eigen::MatrixBase<Derived>& m) {
  return symmetric_eigen(m).norm;
}

namespace detail {

// Number of eigenvalues of the symmetric tridiagonal (diag, off) below x.
template <typename Scalar>
Eigen::Index sturm_count(const std::vector<Scalar>& diag, const std::vector<Scalar>& off, Scalar x) {
  Eigen::Index count = 0;
  Scalar q = 1;
  const Scalar tiny = std::numeric_limits<Scalar>::min();
  for (std::size_t i = 0; i < diag.size(); ++i) {
    q = diag[i] - x - (i == 0 ? Scalar(0) : off[i - 1] * off[i - 1] / q);
    if (q == 0) q = -tiny;
    if (q < 0) ++count;
  }
  return count;
}

// The `index`-th smallest eigenvalue (0-based) of a symmetric tridiagonal by bisection.
template <typename Scalar>
Scalar tridiagonal_eigenvalue(const std::vector<Scalar>& diag, const std::vector<Scalar>& off, Eigen::Index index) {
  Scalar lo = std::numeric_limits<Scalar>::max();
  Scalar hi = std::numeric_limits<Scalar>::lowest();
  for (std::size_t i = 0; i < diag.size(); ++i) {
    const Scalar radius = (i > 0 ? std::abs(off[i - 1]) : Scalar(0)) + (i + 1 < diag.size() ? std::abs(off[i]) : Scalar(0));
    lo = std::min(lo, diag[i] - radius);
    hi = std::max(hi, diag[i] + radius);
  }
  for (int it = 0; it < 200; ++it) {
    const Scalar mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(diag, off, mid) > index) hi = mid;
    else lo = mid;
  }
  return lo + (hi - lo) / 2;
}

// Last component of the unit eigenvector of the tridiagonal for eigenvalue
// `theta`, by two steps of inverse iteration.
template <typename Scalar>
Scalar ritz_tail(const std::vector<Scalar>& diag, const std::vector<Scalar>& off, Scalar theta) {
  const std::size_t n = diag.size();
  const Scalar eps = std::numeric_limits<Scalar>::epsilon() * (std::abs(theta) + 1);
  std::vector<Scalar> y(n, 1), c(n), d(n);
  for (int pass = 0; pass < 2; ++pass) {
    // Thomas algorithm on (T - theta I) z = y with pivot guarding.
    for (std::size_t i = 0; i < n; ++i) {
      Scalar pivot = diag[i] - theta - (i > 0 ? off[i - 1] * c[i - 1] : Scalar(0));
      if (std::abs(pivot) < eps) pivot = pivot < 0 ? -eps : eps;
      c[i] = i + 1 < n ? off[i] / pivot : Scalar(0);
      d[i] = (y[i] - (i > 0 ? off[i - 1] * d[i - 1] : Scalar(0))) / pivot;
    }
    for (std::size_t i = n; i-- > 0;) y[i] = d[i] - (i + 1 < n ? c[i] * y[i + 1] : Scalar(0));
    Scalar norm = 0;
    for (auto v : y) norm += v * v;
    norm = std::sqrt(norm);
    for (auto& v : y) v /= norm;
  }
  return y.back();
}

}  // namespace detail

/// Spectral norm by Lanczos with full reorthogonalisation. Both extreme Ritz
/// values are refined until their residual bound falls below tol * |theta|.
/// Independent of the dense eigensolver path.
template <typename Derived>
typename Derived::Scalar spectral_norm_lanczos(const Eigen::MatrixBase<Derived>& m,
                                               typename Derived::Scalar tol = 1e-12,
                                               std::uint64_t seed = 0) {
  using Scalar = typename Derived::Scalar;
  require_symmetric(m);
  const Eigen::Index n = m.rows();
  const Matrix<Scalar> a = m;

  std::mt19937_64 gen(seed);
  Vector<Scalar> q(n);
  for (Eigen::Index i = 0; i < n; ++i) q(i) = static_cast<Scalar>(static_cast<double>(gen() >> 11) * 0x1.0p-53 - 0.5);
  q.normalize();

  Matrix<Scalar> basis(n, std::min<Eigen::Index>(n, 2 * n));
  std::vector<Scalar> diag, off;
  basis.col(0) = q;
  Scalar estimate = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    Vector<Scalar> w = a * basis.col(j);
    diag.push_back(basis.col(j).dot(w));
    for (int pass = 0; pass < 2; ++pass) {
      w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).transpose() * w);
    }
    const Scalar beta = w.norm();

    const Scalar low = detail::tridiagonal_eigenvalue(diag, off, 0);
    const Scalar high = detail::tridiagonal_eigenvalue(diag, off, static_cast<Eigen::Index>(diag.size()) - 1);
    estimate = std::max(std::abs(low), std::abs(high));

    const Scalar scale = std::max(estimate, std::numeric_limits<Scalar>::min());
    if (j + 1 == n || beta <= std::numeric_limits<Scalar>::epsilon() * scale) return estimate;
    const Scalar res_low = beta * std::abs(detail::ritz_tail(diag, off, low));
    const Scalar res_high = beta * std::abs(detail::ritz_tail(diag, off, high));
    if (res_low <= tol * scale && res_high <= tol * scale) return estimate;

    off.push_back(beta);
    basis.col(j + 1) = w / beta;
  }
  return estimate;
}

/// (1/N) #{i : lambda_i <= x}
template <typename Scalar>
Scalar esd_cdf(const SpectralSummary<Scalar>& summary, Scalar x) {
  const auto* begin = summary.eigenvalues.data();
  const auto* end = begin + summary.eigenvalues.size();
  return static_cast<Scalar>(std::upper_bound(begin, end, x) - begin) / static_cast<Scalar>(summary.size());
}

/// (1/N) sum_i lambda_i^s
template <typename Scalar>
Scalar trace_moment(const SpectralSummary<Scalar>& summary, unsigned s) {
  if (s == 0) fail(Errc::invalid_input, "moment order must be at least 1");
  Scalar sum = 0;
  for (Eigen::Index i = 0; i < summary.size(); ++i) sum += std::pow(summary.eigenvalues(i), static_cast<int>(s));
  return sum / static_cast<Scalar>(summary.size());
}

/// (1/N) Tr(M^s) by repeated multiplication; only meant for small s.
template <typename Derived>
typename Derived::Scalar trace_moment_direct(const Eigen::MatrixBase<Derived>& m, unsigned s) {
  using Scalar = typename Derived::Scalar;
  if (s == 0) fail(Errc::invalid_input, "moment order must be at least 1");
  if (s == 1) return m.trace() / static_cast<Scalar>(m.rows());
  Matrix<Scalar> half = m;
  for (unsigned i = 1; i < s / 2; ++i) half = half * m;
  // Tr(H H^T) or Tr(H M H^T) with H = M^{floor(s/2)} symmetric.
  const Scalar tr = s % 2 == 0 ? half.cwiseProduct(half).sum() : (half * m).cwiseProduct(half).sum();
  return tr / static_cast<Scalar>(m.rows());
}

/// (1/N) Tr(M^s) from the spectrum; for s <= 4 cross-checked against the
/// direct power trace to 1e-9 relative.
template <typename Derived>
typename Derived::Scalar trace_moment(const Eigen::MatrixBase<Derived>& m, unsigned s) {
  using Scalar = typename Derived::Scalar;
  const auto summary = symmetric_eigen(m);
  const Scalar value = trace_moment(summary, s);
  if (s <= 4) {
    Scalar scale = 0;
    for (Eigen::Index i = 0; i < summary.size(); ++i) scale += std::pow(std::abs(summary.eigenvalues(i)), static_cast<int>(s));
    scale /= static_cast<Scalar>(summary.size());
    if (std::abs(value - trace_moment_direct(m, s)) > Scalar(1e-9) * std::max(scale, std::numeric_limits<Scalar>::min())) {
      fail(Errc::numerical_failure, "spectral and direct trace moments disagree");
    }
  }
  return value;
}

/// sup_x |F_N(x) - law.cdf(x)|, evaluated at the jump points of the ESD.
template <typename Scalar, typename Law>
Scalar ks_distance(const SpectralSummary<Scalar>& summary, const Law& law) {
  const Eigen::Index n = summary.size();
  Scalar worst = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar f = law.cdf(summary.eigenvalues(i));
    const Scalar after = static_cast<Scalar>(i + 1) / static_cast<Scalar>(n);
    const Scalar before = static_cast<Scalar>(i) / static_cast<Scalar>(n);
    worst = std::max({worst, std::abs(after - f), std::abs(f - before)});
  }
  return worst;
}

}  // namespace pseudospec
