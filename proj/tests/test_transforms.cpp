#include <doctest.h>

#include <cmath>
#include <random>

#include "stlab/errors.hpp"
#include "stlab/measures.hpp"
#include "stlab/special.hpp"
#include "stlab/transforms.hpp"

using namespace stlab::transforms;
using stlab::DomainError;
using stlab::measures::SpectralMeasure;

namespace {

bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

const SpectralMeasure kUniform = SpectralMeasure::uniform(0.0, 2.0);

}  // namespace

TEST_CASE("inverse_t examples") {
  CHECK(close(inverse_t(SpectralMeasure::delta(2.0), 1.0), 4.0, 1e-12));
  CHECK(close(inverse_t(kUniform, 1.0), 2.51000194983195053155, 1e-12));
  CHECK(close(inverse_t(SpectralMeasure::empirical({1.0, 2.0}), 2.0 / 3.0), 4.0, 1e-12));
  CHECK(close(inverse_t(kUniform, 0.64791843300216453709), 3.0, 1e-11));
  CHECK_THROWS_AS(inverse_t(kUniform, 0.0), DomainError);
  CHECK_THROWS_AS(inverse_t(kUniform, -1.0), DomainError);
  CHECK_THROWS_AS(inverse_t(SpectralMeasure::linear_taper(0.5, 1.5), 2.5), DomainError);
  InversionConfig bad;
  bad.bracket_growth = 1.0;
  CHECK_THROWS_AS(inverse_t(kUniform, 1.0, bad), DomainError);
}

TEST_CASE("s_tilde and r_transform examples") {
  for (double z : {0.01, 0.5, 3.0, 100.0}) {
    CHECK(close(s_tilde(SpectralMeasure::delta(1.7), z), 1.7, 1e-12));
    CHECK(close(r_transform(SpectralMeasure::delta(1.7), z), 1.7, 1e-10));
  }
  CHECK(close(s_tilde(kUniform, 1.0), 1.25500097491597526577, 1e-12));
  CHECK(close(s_tilde(SpectralMeasure::empirical({1.0, 1.0, 1.0}), 0.5), 1.0, 1e-12));
  CHECK(close(r_transform(SpectralMeasure::empirical({1.0, 2.0}), 5.0 / 12.0), 1.6, 1e-11));
  CHECK(close(r_transform(SpectralMeasure::delta(0.0), 0.7), 0.0, 1e-10));
  CHECK(close(log_s_tilde(kUniform, 0.0), 0.0, 1e-15));
  CHECK(close(log_s_tilde(SpectralMeasure::empirical({1.0, 2.0}), 0.0), std::log(1.5), 1e-15));
}

TEST_CASE("T round trip on random targets") {
  std::mt19937_64 gen(2024);
  for (const auto& mu : {kUniform, SpectralMeasure::linear_taper(0.5, 1.5),
                         SpectralMeasure::atomic({1.0, 3.0}, {0.5, 0.5}), SpectralMeasure::empirical({1.0, 2.0, 3.0})}) {
    const double cap = stlab::measures::t_transform(mu, stlab::measures::support_edges(mu).second * (1.0 + 1e-6));
    std::uniform_real_distribution<double> logy(-8.0, std::min(6.0, std::log(cap)));
    for (int i = 0; i < 200; ++i) {
      const double y = std::exp(logy(gen));
      const double w = inverse_t(mu, y);
      CHECK(std::fabs(stlab::measures::t_transform(mu, w) - y) <= 1e-10 * std::max(1.0, y));
    }
  }
}

TEST_CASE("inverse_t deep in the log singularity") {
  // w - 2 ~ 1e-13 is below the resolution of w; the best double is accepted
  const double w = inverse_t(kUniform, 30.0);
  CHECK(w > 2.0);
  CHECK(w - 2.0 < 1e-11);
}

TEST_CASE("h_s examples and closed form") {
  CHECK(close(h_s(SpectralMeasure::delta(1.0), 2.0), 0.0, 1e-14));
  CHECK(close(h_s(SpectralMeasure::delta(2.0), 1.0), std::log(2.0), 1e-12));
  CHECK(close(h_s(kUniform, 1.0), 0.127613428889018562, 1e-10));
  CHECK(close(h_s(kUniform, 0.0), 0.0, 0.0));
  CHECK(close(h_s_uniform_closed_form(0.0), 0.0, 1e-15));
  CHECK(close(h_s_uniform_closed_form(0.1), 0.001613508419748973, 1e-14));
  CHECK(close(h_s_uniform_closed_form(0.5), 0.035965416477055764, 1e-14));
  CHECK(close(h_s_uniform_closed_form(1.0), 0.127613428889018562, 1e-14));
  CHECK(close(h_s_uniform_closed_form(2.0), 0.420921464936966805, 1e-14));
  for (int i = 0; i < 50; ++i) {
    const double z = 0.02 + 3.98 * i / 49.0;
    CHECK(close(h_s(kUniform, z), h_s_uniform_closed_form(z), 1e-8));
  }
  CHECK_THROWS_AS(h_s(kUniform, -0.1), DomainError);
  CHECK_THROWS_AS(h_s(SpectralMeasure::delta(0.0), 1.0), DomainError);
}

TEST_CASE("h_s derivative is ln S~") {
  const double h = 1e-3;
  for (const auto& mu : {kUniform, SpectralMeasure::empirical({1.0, 2.0, 3.0}), SpectralMeasure::linear_taper(0.5, 1.5)}) {
    for (double z : {0.05, 0.3, 1.0, 1.7}) {
      const double d = (h_s(mu, z + h) - h_s(mu, z - h)) / (2 * h);
      CHECK(close(d, log_s_tilde(mu, z), 1e-6));
    }
  }
}

TEST_CASE("h_s past z* on a measure with finite T at the edge") {
  const auto mu = SpectralMeasure::linear_taper(0.5, 1.5);
  const double zstar = 2.0;
  const double eps = 1e-9;
  CHECK(close(h_s(mu, zstar - eps), h_s(mu, zstar + eps), 1e-8));
  // slope ln a_max + ln(z/(z+1)) on the second branch
  const double z = 3.0;
  const double d = (h_s(mu, z + 1e-3) - h_s(mu, z - 1e-3)) / 2e-3;
  CHECK(close(d, std::log(1.5) + std::log(z / (z + 1)), 1e-6));
  const auto curve = rate_curve(mu, RateKind::hs, {0.0, 0.5, 1.0, 2.0, 3.0, 4.0});
  CHECK(curve.values[0] == 0.0);
  CHECK(curve.regime_boundary == zstar);
  for (std::size_t i = 0; i < curve.grid.size(); ++i) CHECK(close(curve.values[i], h_s(mu, curve.grid[i]), 1e-10));
}

TEST_CASE("h_s small-z limit and scaling covariance") {
  for (const auto& mu : {kUniform, SpectralMeasure::empirical({1.0, 2.0, 3.0})}) {
    const double m1 = stlab::measures::moments(mu, 1)[0];
    CHECK(close(h_s(mu, 1e-4) / 1e-4, std::log(m1), 1e-3));
  }
  const double c = 3.5;
  const auto scaled = SpectralMeasure::uniform(0.0, 2.0 * c);
  for (double z : {0.2, 1.0, 2.5}) CHECK(close(h_s(scaled, z), h_s(kUniform, z) + z * std::log(c), 1e-9));
}

TEST_CASE("moment series") {
  auto c = h_s_series({2.0, 4.0, 8.0});
  CHECK(close(c.c1, std::log(2.0), 1e-15));
  CHECK(close(c.c2, 0.0, 1e-15));
  CHECK(close(c.c3, 0.0, 1e-15));
  c = h_s_series({1.0, 1.0, 1.0});
  CHECK((c.c1 == 0.0 && c.c2 == 0.0 && c.c3 == 0.0));
  c = h_s_series({1.0, 4.0 / 3.0, 2.0});
  CHECK(close(c.c1, 0.0, 1e-15));
  CHECK(close(c.c2, 1.0 / 6.0, 1e-15));
  CHECK(close(c.c3, -1.0 / 18.0, 1e-15));
  const double z = 0.1;
  CHECK(std::fabs(h_s_uniform_closed_form(z) - (c.c2 * z * z + c.c3 * z * z * z)) <= 5 * std::pow(z, 4));
  for (const auto& mu : {SpectralMeasure::delta(2.0), kUniform, SpectralMeasure::empirical({1.0, 2.0, 3.0})}) {
    const auto s = h_s_series(stlab::measures::moments(mu, 3));
    for (double zz : {0.02, 0.1, 0.2}) {
      CHECK(std::fabs(h_s(mu, zz) - zz * (s.c1 + zz * (s.c2 + zz * s.c3))) <= 10 * std::pow(zz, 4));
    }
  }
  CHECK_THROWS_AS(h_s_series({1.0, 2.0}), DomainError);
}

TEST_CASE("h_r examples") {
  CHECK(close(h_r(SpectralMeasure::delta(1.3), 0.8), 1.3 * 0.8, 1e-10));
  CHECK(close(h_r(SpectralMeasure::delta(0.0), 0.8), 0.0, 1e-10));
  const auto mu = SpectralMeasure::empirical({1.0, 2.0});
  const double z = 0.2;
  const double h = 1e-4;
  CHECK(close((h_r(mu, z + h) - h_r(mu, z - h)) / (2 * h), r_transform(mu, z), 1e-6));
  // taper: G finite at the edge, continuation slope a_max - 1/z
  const auto taper = SpectralMeasure::linear_taper(0.5, 1.5);
  const double gstar = 2.0;
  CHECK(close(h_r(taper, gstar - 1e-9), h_r(taper, gstar + 1e-9), 1e-8));
  const double z2 = 3.0;
  CHECK(close((h_r(taper, z2 + 1e-3) - h_r(taper, z2 - 1e-3)) / 2e-3, 1.5 - 1.0 / z2, 1e-6));
}
