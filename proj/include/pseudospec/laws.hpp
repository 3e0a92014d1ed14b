#pragma once

// Limiting spectral laws: the semicircle on [-1, 1] and Marchenko-Pastur with
// ratio gamma in (0, 1].

#include <memory>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace pseudospec {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// C_k = (2k)! / (k! (k+1)!)
BigInt catalan(unsigned k);
/// N(s, k) = C(s, k) C(s, k-1) / s, for 1 <= k <= s.
BigInt narayana(unsigned s, unsigned k);
/// Exact value of a finite double.
Rational exact_rational(double x);

double semicircle_pdf(double x);
double semicircle_cdf(double x);
/// C_{s/2} / 2^s for even s, 0 for odd s.
Rational semicircle_moment(unsigned s);

struct MpSupport {
  double lower;
  double upper;
};
MpSupport mp_support(double gamma);

double mp_pdf(double x, double gamma);
/// Adaptive quadrature from the lower edge, absolute tolerance 1e-10.
/// Builds a fresh panel table on every call; prefer LimitLaw for repeated use.
double mp_cdf(double x, double gamma);
/// sum_{k=1}^{s} gamma^{k-1} N(s, k)
Rational mp_moment(unsigned s, const Rational& gamma);
double mp_moment(unsigned s, double gamma);

/// Semicircle or Marchenko-Pastur law with pdf/cdf/moment evaluators. Copies
/// share the precomputed cdf panel table.
class LimitLaw {
 public:
  enum class Kind { semicircle, marchenko_pastur };

  static LimitLaw semicircle();
  static LimitLaw marchenko_pastur(double gamma);

  Kind kind() const noexcept { return kind_; }
  double gamma() const noexcept { return gamma_; }
  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }

  double pdf(double x) const;
  double cdf(double x) const;
  double moment(unsigned s) const;

 private:
  struct MpTable;

  LimitLaw(Kind kind, double gamma, double lower, double upper);

  Kind kind_;
  double gamma_;
  double lower_;
  double upper_;
  std::shared_ptr<const MpTable> table_;
};

}  // namespace pseudospec
