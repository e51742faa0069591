#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/lambert_w.hpp>

#include "stlab/errors.hpp"
#include "stlab/special.hpp"

using namespace stlab::special;

TEST_CASE("log_gamma reference values") {
  CHECK(std::fabs(log_gamma(1.0)) < 1e-15);
  CHECK(std::fabs(log_gamma(2.0)) < 1e-15);
  CHECK(std::fabs(log_gamma(0.5) - 0.57236494292470008707) < 1e-15);
  CHECK(std::fabs(log_gamma(10.0) - 12.801827480081469611) < 1e-13);
  CHECK_THROWS_AS(log_gamma(0.0), stlab::DomainError);
  CHECK_THROWS_AS(log_gamma(-1.0), stlab::DomainError);
}

TEST_CASE("log_gamma against boost on random arguments") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> logx(-8.0, 12.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = std::exp(logx(gen));
    const double want = boost::math::lgamma(x);
    CHECK(std::fabs(log_gamma(x) - want) <= 4e-15 * std::max(1.0, std::fabs(want)) + 2e-15);
  }
}

TEST_CASE("digamma values, recurrence and asymptotics") {
  CHECK(std::fabs(digamma(1.0) + 0.57721566490153286061) < 1e-14);
  CHECK(std::fabs(digamma(2.0) - 0.42278433509846713939) < 1e-14);
  const double x = 1000.0;
  CHECK(std::fabs(digamma(x) - std::log(x)) < 1.0 / (2 * x) + 1.0 / (x * x));
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.1, 100.0);
  for (int i = 0; i < 1000; ++i) {
    const double y = u(gen);
    CHECK(std::fabs(digamma(y + 1) - digamma(y) - 1 / y) < 1e-10);
    CHECK(std::fabs(digamma(y) - boost::math::digamma(y)) < 1e-13 * std::max(1.0, std::fabs(digamma(y))));
  }
}

TEST_CASE("lambert_w branches") {
  CHECK(lambert_w(0.0) == 0.0);
  CHECK(std::fabs(lambert_w(std::exp(1.0)) - 1.0) < 1e-15);
  CHECK(std::fabs(lambert_w(-2.0 * std::exp(-2.0)) + 0.40637573995995990768) < 1e-15);
  CHECK(std::fabs(lambert_w(-2.0 * std::exp(-2.0), LambertBranch::minus_one) + 2.0) < 1e-14);
  CHECK(std::fabs(lambert_w(-std::exp(-1.0)) + 1.0) < 1e-7);
  CHECK_THROWS_AS(lambert_w(-0.5), stlab::DomainError);
  CHECK_THROWS_AS(lambert_w(0.5, LambertBranch::minus_one), stlab::DomainError);

  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = -std::exp(-1.0) + u(gen) * 50.0;
    const double w = lambert_w(x);
    CHECK(std::fabs(w * std::exp(w) - x) <= 1e-12 * std::max(1.0, std::fabs(x)));
    CHECK(std::fabs(w - boost::math::lambert_w0(x)) < 1e-7 + 1e-13 * std::fabs(w));
    if (x < 0.0) {
      const double wm = lambert_w(x, LambertBranch::minus_one);
      CHECK(wm <= -1.0);
      CHECK(std::fabs(wm * std::exp(wm) - x) <= 1e-12);
    }
  }
}

TEST_CASE("LogValue canonical form and arithmetic") {
  const LogValue z(0, 5.0);
  CHECK(z.is_zero());
  CHECK(std::isinf(z.magnitude_log));
  CHECK(LogValue::from_real(0.0).is_zero());
  const LogValue m = LogValue::from_real(-3.5);
  CHECK(m.sign == -1);
  CHECK(std::fabs(m.to_real() + 3.5) < 1e-15);
  CHECK(std::fabs((m * m).to_real() - 12.25) < 1e-14);
  CHECK(std::fabs((m / LogValue::from_real(7.0)).to_real() + 0.5) < 1e-15);
  CHECK((-m).sign == 1);

  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(-300.0, 300.0);
  for (int i = 0; i < 500; ++i) {
    const double x = std::copysign(std::exp(u(gen)), u(gen));
    const LogValue v = LogValue::from_real(x);
    CHECK(std::fabs(v.to_real() - x) <= 4e-16 * std::fabs(x));
  }
}

TEST_CASE("log_sum_exp") {
  std::vector<LogValue> two{LogValue(1, 0.0), LogValue(1, 0.0)};
  auto s = log_sum_exp(two);
  CHECK(s.sign == 1);
  CHECK(std::fabs(s.magnitude_log - std::log(2.0)) < 1e-15);

  std::vector<LogValue> cancel{LogValue(1, std::log(5.0)), LogValue(-1, std::log(5.0))};
  CHECK(log_sum_exp(cancel).is_zero());

  std::vector<LogValue> big{LogValue(1, 1000.0), LogValue(1, 1000.0)};
  CHECK(std::fabs(log_sum_exp(big).magnitude_log - 1000.0 - std::log(2.0)) < 1e-12);

  CHECK(log_sum_exp(std::vector<LogValue>{}).is_zero());

  // permutation invariance, and a zero term changes nothing
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<LogValue> t;
    for (int i = 0; i < 12; ++i) t.emplace_back(u(gen) > -2.0 ? 1 : -1, u(gen));
    const auto base = log_sum_exp(t);
    std::shuffle(t.begin(), t.end(), gen);
    const auto shuffled = log_sum_exp(t);
    t.push_back(LogValue::zero());
    const auto padded = log_sum_exp(t);
    CHECK(base.sign == shuffled.sign);
    CHECK(std::fabs(base.magnitude_log - shuffled.magnitude_log) < 1e-13);
    CHECK(std::fabs(base.magnitude_log - padded.magnitude_log) < 1e-13);
  }
}

TEST_CASE("log_add and log_multiset_count") {
  const auto s = log_add(LogValue::from_real(3.0), LogValue::from_real(-1.0));
  CHECK(std::fabs(s.to_real() - 2.0) < 1e-15);
  CHECK(std::fabs(log_add_exp(std::log(2.0), std::log(3.0)) - std::log(5.0)) < 1e-15);
  // C(4, 2) = 6 multisets of size 2 from 3 items
  CHECK(std::fabs(log_multiset_count(3, 2) - std::log(6.0)) < 1e-14);
  CHECK(std::fabs(log_multiset_count(5, 0)) < 1e-14);
}
