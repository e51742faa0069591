#include "stlab/special.hpp"

#include <algorithm>
#include <array>
#include <numbers>
#include <string>

#include "stlab/errors.hpp"

namespace stlab::special {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(what) + ": argument must be positive and finite, got " +
                      std::to_string(x));
  }
}

// Lanczos approximation, g = 7, nine terms.
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_log_gamma(double x) {
  // valid for x >= 0.5
  x -= 1.0;
  double sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) sum += kLanczos[i] / (x + static_cast<double>(i));
  const double t = x + 7.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (x + 0.5) * std::log(t) - t + std::log(sum);
}

double stirling_log_gamma(double x) {
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  const double series =
      inv * (1.0 / 12.0 +
             inv2 * (-1.0 / 360.0 + inv2 * (1.0 / 1260.0 + inv2 * (-1.0 / 1680.0 + inv2 / 1188.0))));
  return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

}  // namespace

LogValue::LogValue(int s, double mag_log) : sign(s), magnitude_log(mag_log) {
  if (sign > 0) sign = 1;
  if (sign < 0) sign = -1;
  if (sign == 0 || magnitude_log == -kInf) {
    sign = 0;
    magnitude_log = -kInf;
  }
}

LogValue LogValue::from_real(double x) {
  if (x == 0.0) return zero();
  return {x > 0.0 ? 1 : -1, std::log(std::fabs(x))};
}

double LogValue::to_real() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(magnitude_log);
}

LogValue LogValue::operator*(const LogValue& other) const {
  if (sign == 0 || other.sign == 0) return zero();
  return {sign * other.sign, magnitude_log + other.magnitude_log};
}

LogValue LogValue::operator/(const LogValue& other) const {
  if (other.sign == 0) throw DomainError("LogValue: division by zero");
  if (sign == 0) return zero();
  return {sign * other.sign, magnitude_log - other.magnitude_log};
}

double log_gamma(double x) {
  require_positive(x, "log_gamma");
  if (x >= 15.0) return stirling_log_gamma(x);
  if (x >= 0.5) return lanczos_log_gamma(x);
  // reflection; sin(pi x) > 0 on (0, 0.5)
  return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - lanczos_log_gamma(1.0 - x);
}

double digamma(double x) {
  require_positive(x, "digamma");
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  // Bernoulli tail B_{2n} / (2n x^{2n}), n = 1..6
  const double tail =
      inv2 * (1.0 / 12.0 -
              inv2 * (1.0 / 120.0 -
                      inv2 * (1.0 / 252.0 -
                              inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0 - inv2 * 691.0 / 32760.0)))));
  return acc + std::log(x) - 0.5 / x - tail;
}

namespace {

constexpr double kInvE = 0.36787944117144233;

double lambert_bisect(double x, double lo, double hi) {
  // f(w) = w e^w - x, root bracketed by [lo, hi] with sign change
  const auto f = [x](double w) { return w * std::exp(w) - x; };
  double flo = f(lo);
  for (int i = 0; i < 300 && hi - lo > 1e-17 * std::max(1.0, std::fabs(lo)); ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double lambert_w(double x, LambertBranch branch) {
  if (std::isnan(x)) throw DomainError("lambert_w: NaN argument");
  if (x < -kInvE) {
    // tolerate rounding of arguments computed as -(1+z) e^{-(1+z)} at z = 0
    if (x < -kInvE * (1.0 + 4e-16)) throw DomainError("lambert_w: argument below -1/e");
    return -1.0;
  }
  if (branch == LambertBranch::minus_one && x >= 0.0) {
    throw DomainError("lambert_w: minus_one branch requires -1/e <= x < 0");
  }
  if (x == 0.0) return 0.0;

  const bool principal = branch == LambertBranch::principal;
  double w;
  const double p2 = 2.0 * (std::numbers::e * x + 1.0);
  if (x < -0.25) {
    const double p = std::sqrt(std::max(p2, 0.0));
    const double sp = principal ? p : -p;
    w = -1.0 + sp - p * p / 3.0 + 11.0 / 72.0 * sp * p * p;
  } else if (principal) {
    if (x < 3.0) {
      w = std::log1p(x);
      w = w * (1.0 - std::log1p(w) / (2.0 + w));
    } else {
      const double l1 = std::log(x);
      const double l2 = std::log(l1);
      w = l1 - l2 + l2 / l1;
    }
  } else {
    const double l1 = std::log(-x);
    const double l2 = std::log(-l1);
    w = l1 - l2 + l2 / l1;
  }

  bool converged = false;
  for (int it = 0; it < 60; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    if (denom == 0.0 || !std::isfinite(denom)) break;
    const double step = f / denom;
    w -= step;
    if (!std::isfinite(w)) break;
    if (std::fabs(step) <= 4e-16 * std::max(1.0, std::fabs(w))) {
      converged = true;
      break;
    }
  }
  const bool on_branch = principal ? (w >= -1.0) : (w <= -1.0);
  if (converged && on_branch) return w;

  // stalled near the branch point or left the branch
  if (principal) {
    const double hi = x > std::numbers::e ? std::log(x) : 1.0;
    return lambert_bisect(x, -1.0, hi);
  }
  double lo = -2.0;
  while (lo * std::exp(lo) < x) lo *= 2.0;
  return lambert_bisect(x, lo, -1.0);
}

LogValue log_add(const LogValue& a, const LogValue& b) {
  const std::array<LogValue, 2> terms{a, b};
  return log_sum_exp(terms);
}

LogValue log_sum_exp(std::span<const LogValue> terms) {
  double peak = -kInf;
  for (const auto& t : terms) {
    if (t.sign != 0) peak = std::max(peak, t.magnitude_log);
  }
  if (peak == -kInf) return LogValue::zero();

  std::vector<double> scaled;
  scaled.reserve(terms.size());
  for (const auto& t : terms) {
    if (t.sign != 0) scaled.push_back(t.sign * std::exp(t.magnitude_log - peak));
  }
  // fixed summation order makes the result independent of input order
  std::sort(scaled.begin(), scaled.end());
  double sum = 0.0;
  double comp = 0.0;
  for (double v : scaled) {
    const double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  sum += comp;
  if (sum == 0.0) return LogValue::zero();
  return {sum > 0.0 ? 1 : -1, peak + std::log(std::fabs(sum))};
}

double log_multiset_count(double n, double k) {
  if (k == 0.0) return 0.0;
  return log_gamma(n + k) - log_gamma(k + 1.0) - log_gamma(n);
}

}  // namespace stlab::special
