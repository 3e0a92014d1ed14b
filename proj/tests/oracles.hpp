#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace oracle {

/// GF(2^m) antilog/log tables from repeated multiplication by x on plain ints.
struct LogTables {
  int m;
  std::uint32_t n;
  std::vector<std::uint32_t> exp;
  std::vector<std::uint32_t> log;

  LogTables(int m_, std::uint32_t modulus) : m(m_), n((1u << m_) - 1), exp(n), log(n + 1, 0) {
    std::uint32_t v = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
      exp[i] = v;
      log[v] = i;
      v = v << 1;
      if (v & (1u << m)) v ^= modulus;
    }
  }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp[(log[a] + log[b]) % n];
  }
};

/// Order of x modulo a degree-m polynomial by brute-force stepping.
inline std::uint64_t order_of_x(std::uint32_t modulus, int m) {
  std::uint32_t v = 1;
  for (std::uint64_t k = 1; k <= (1ull << m); ++k) {
    v <<= 1;
    if (v & (1u << m)) v ^= modulus;
    if (v == 1) return k;
  }
  return 0;
}

/// Schoolbook product of bit vectors (lowest degree first).
inline std::vector<int> poly_mul(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<int> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] ^= a[i] & b[j];
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

/// Coefficients of det(xI - M), highest degree first, by Faddeev-LeVerrier.
inline std::vector<double> characteristic_polynomial(const Eigen::MatrixXd& a) {
  const auto n = a.rows();
  std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
  c[0] = 1.0;
  Eigen::MatrixXd mk = Eigen::MatrixXd::Zero(n, n);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    mk = a * mk + c[static_cast<std::size_t>(k - 1)] * id;
    c[static_cast<std::size_t>(k)] = -(a * mk).trace() / static_cast<double>(k);
  }
  return c;
}

/// Real roots (ascending) of a real-rooted polynomial: Newton from above the
/// largest root converges monotonically; deflate and repeat.
inline std::vector<double> real_roots(std::vector<double> c) {
  std::vector<double> roots;
  while (c.size() > 1) {
    double bound = 0;
    for (std::size_t i = 1; i < c.size(); ++i) bound = std::max(bound, std::abs(c[i] / c[0]));
    double x = 1.0 + bound;
    for (int it = 0; it < 10000; ++it) {
      double p = c[0], dp = 0;
      for (std::size_t i = 1; i < c.size(); ++i) {
        dp = dp * x + p;
        p = p * x + c[i];
      }
      if (dp == 0) break;
      const double step = p / dp;
      x -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(x))) break;
    }
    roots.push_back(x);
    std::vector<double> q(c.size() - 1);
    q[0] = c[0];
    for (std::size_t i = 1; i < q.size(); ++i) q[i] = c[i] + x * q[i - 1];
    c = q;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

/// Integral by tanh-sinh quadrature on the original variable.
inline double integrate(const std::function<double(double)>& f, double a, double b) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(f, a, b, 1e-14);
}

/// sup over a dense grid of |ESD(x) - F(x)|, including both one-sided limits at
/// every grid point.
inline double ks_on_grid(std::vector<double> eigs, const std::function<double(double)>& cdf, double lo, double hi,
                         int points) {
  std::sort(eigs.begin(), eigs.end());
  const double n = static_cast<double>(eigs.size());
  double worst = 0;
  for (int i = 0; i <= points; ++i) {
    const double x = lo + (hi - lo) * i / points;
    const double below = static_cast<double>(std::lower_bound(eigs.begin(), eigs.end(), x) - eigs.begin()) / n;
    const double upto = static_cast<double>(std::upper_bound(eigs.begin(), eigs.end(), x) - eigs.begin()) / n;
    const double f = cdf(x);
    worst = std::max({worst, std::abs(upto - f), std::abs(below - f)});
  }
  return worst;
}

inline Eigen::MatrixXd random_symmetric(int n, std::mt19937_64& gen) {
  std::normal_distribution<double> dist;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) a(i, j) = a(j, i) = dist(gen);
  }
  return a;
}

}  // namespace oracle
