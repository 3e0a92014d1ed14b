#include "pseudospec/laws.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "pseudospec/error.hpp"

namespace pseudospec {

namespace {

constexpr int kPanels = 64;
constexpr double kCdfTolerance = 1e-10;

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt acc = 1;
  for (unsigned i = 1; i <= k; ++i) {
    acc *= n - k + i;
    acc /= i;
  }
  return acc;
}

void check_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) fail(Errc::invalid_input, "Marchenko-Pastur ratio gamma must lie in (0, 1]");
}

// Angle parametrisation x = a + (b - a) sin^2(theta / 2), theta in [0, pi],
// which absorbs the square-root behaviour of the density at both edges.
struct MpIntegrand {
  double a, b, gamma;

  double x_of(double theta) const {
    const double s = std::sin(0.5 * theta);
    return a + (b - a) * s * s;
  }
  double theta_of(double x) const { return 2.0 * std::asin(std::sqrt(std::clamp((x - a) / (b - a), 0.0, 1.0))); }

  // pdf(x(theta)) * dx/dtheta
  double operator()(double theta) const {
    const double half = 0.5 * (b - a);
    const double s = std::sin(theta);
    return half * half * s * s / (2.0 * std::numbers::pi * gamma * x_of(theta));
  }
};

double integrate(const MpIntegrand& f, double lo, double hi) {
  if (hi <= lo) return 0.0;
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 8, 1e-12, &error);
  if (!std::isfinite(value) || error > kCdfTolerance) {
    fail(Errc::numerical_failure, "Marchenko-Pastur cdf quadrature did not converge");
  }
  return value;
}

}  // namespace

BigInt catalan(unsigned k) { return binomial(2 * k, k) / (k + 1); }

BigInt narayana(unsigned s, unsigned k) {
  if (s == 0 || k == 0 || k > s) fail(Errc::invalid_input, "Narayana number needs 1 <= k <= s");
  return binomial(s, k) * binomial(s, k - 1) / s;
}

Rational exact_rational(double x) {
  if (!std::isfinite(x)) fail(Errc::invalid_input, "cannot convert a non-finite value to a rational");
  if (x == 0.0) return 0;
  int exponent = 0;
  const double mantissa = std::frexp(x, &exponent);
  // mantissa * 2^53 is an integer for every finite double.
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Rational out(scaled);
  if (exponent >= 0) out *= Rational(BigInt(1) << exponent);
  else out /= Rational(BigInt(1) << -exponent);
  return out;
}

double semicircle_pdf(double x) {
  if (x < -1.0 || x > 1.0) return 0.0;
  return 2.0 / std::numbers::pi * std::sqrt(1.0 - x * x);
}

double semicircle_cdf(double x) {
  if (x <= -1.0) return 0.0;
  if (x >= 1.0) return 1.0;
  if (x == 0.0) return 0.5;
  return 0.5 + (x * std::sqrt(1.0 - x * x) + std::asin(x)) / std::numbers::pi;
}

Rational semicircle_moment(unsigned s) {
  if (s % 2 == 1) return 0;
  return Rational(catalan(s / 2)) / Rational(BigInt(1) << s);
}

MpSupport mp_support(double gamma) {
  check_gamma(gamma);
  const double r = std::sqrt(gamma);
  return {(1.0 - r) * (1.0 - r), (1.0 + r) * (1.0 + r)};
}

double mp_pdf(double x, double gamma) {
  const auto [a, b] = mp_support(gamma);
  if (x < a || x > b) return 0.0;
  if (x == 0.0) return std::numeric_limits<double>::infinity();
  return std::sqrt((b - x) * (x - a)) / (2.0 * std::numbers::pi * gamma * x);
}

double mp_cdf(double x, double gamma) { return LimitLaw::marchenko_pastur(gamma).cdf(x); }

Rational mp_moment(unsigned s, const Rational& gamma) {
  if (s == 0) fail(Errc::invalid_input, "moment order must be at least 1");
  Rational sum = 0;
  Rational power = 1;
  for (unsigned k = 1; k <= s; ++k) {
    sum += power * Rational(narayana(s, k));
    power *= gamma;
  }
  return sum;
}

double mp_moment(unsigned s, double gamma) {
  check_gamma(gamma);
  return static_cast<double>(mp_moment(s, exact_rational(gamma)));
}

// ---------------------------------------------------------------------------
// LimitLaw

struct LimitLaw::MpTable {
  MpIntegrand integrand;
  double step;
  std::vector<double> cumulative;  // kPanels + 1 entries
};

LimitLaw::LimitLaw(Kind kind, double gamma, double lower, double upper)
    : kind_(kind), gamma_(gamma), lower_(lower), upper_(upper) {}

LimitLaw LimitLaw::semicircle() { return LimitLaw(Kind::semicircle, 0.0, -1.0, 1.0); }

LimitLaw LimitLaw::marchenko_pastur(double gamma) {
  const auto [a, b] = mp_support(gamma);
  LimitLaw law(Kind::marchenko_pastur, gamma, a, b);
  auto table = std::make_shared<MpTable>();
  table->integrand = MpIntegrand{a, b, gamma};
  table->step = std::numbers::pi / kPanels;
  table->cumulative.assign(kPanels + 1, 0.0);
  for (int j = 0; j < kPanels; ++j) {
    table->cumulative[static_cast<std::size_t>(j) + 1] =
        table->cumulative[static_cast<std::size_t>(j)] + integrate(table->integrand, j * table->step, (j + 1) * table->step);
  }
  if (std::abs(table->cumulative.back() - 1.0) > kCdfTolerance) {
    fail(Errc::numerical_failure, "Marchenko-Pastur density does not integrate to 1");
  }
  law.table_ = std::move(table);
  return law;
}

double LimitLaw::pdf(double x) const {
  return kind_ == Kind::semicircle ? semicircle_pdf(x) : mp_pdf(x, gamma_);
}

double LimitLaw::cdf(double x) const {
  if (kind_ == Kind::semicircle) return semicircle_cdf(x);
  if (x <= lower_) return 0.0;
  if (x >= upper_) return 1.0;
  const auto& t = *table_;
  const double theta = t.integrand.theta_of(x);
  const int j = std::min(static_cast<int>(theta / t.step), kPanels - 1);
  const double lo = t.cumulative[static_cast<std::size_t>(j)];
  const double hi = t.cumulative[static_cast<std::size_t>(j) + 1];
  const double value = lo + integrate(t.integrand, j * t.step, theta);
  // Clamping to the panel bounds keeps the output monotone across panels.
  return std::clamp(std::clamp(value, lo, hi), 0.0, 1.0);
}

double LimitLaw::moment(unsigned s) const {
  if (kind_ == Kind::semicircle) return static_cast<double>(semicircle_moment(s));
  return mp_moment(s, gamma_);
}

}  // namespace pseudospec
