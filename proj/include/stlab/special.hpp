#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace stlab::special {

/// Real number stored as sign and natural log of magnitude.
///
/// Zero is encoded as sign 0 with magnitude_log = -inf. Used wherever
/// products of many terms or determinants would over- or underflow.
struct LogValue {
  int sign = 0;
  double magnitude_log = -std::numeric_limits<double>::infinity();

  LogValue() = default;
  LogValue(int s, double mag_log);

  static LogValue from_real(double x);
  static LogValue zero() { return {}; }
  static LogValue one() { return {1, 0.0}; }

  double to_real() const;
  bool is_zero() const { return sign == 0; }

  LogValue operator*(const LogValue& other) const;
  LogValue operator/(const LogValue& other) const;
  LogValue operator-() const { return {-sign, magnitude_log}; }
};

double log_gamma(double x);
double digamma(double x);

enum class LambertBranch { principal, minus_one };

/// Solves w * exp(w) = x on the requested real branch.
double lambert_w(double x, LambertBranch branch = LambertBranch::principal);

/// Signed sum of log-encoded terms.
LogValue log_sum_exp(std::span<const LogValue> terms);
LogValue log_add(const LogValue& a, const LogValue& b);

/// log(exp(a) + exp(b)) for reals.
inline double log_add_exp(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -std::numeric_limits<double>::infinity()) return a;
  return a + std::log1p(std::exp(b - a));
}

/// ln C(n + k - 1, k) evaluated through log_gamma.
double log_multiset_count(double n, double k);

}  // namespace stlab::special
