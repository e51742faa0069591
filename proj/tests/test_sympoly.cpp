#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "stlab/errors.hpp"
#include "stlab/special.hpp"
#include "stlab/sympoly.hpp"
#include "stlab/transforms.hpp"

using namespace stlab::sympoly;
using stlab::DegeneracyError;
using stlab::DomainError;
using stlab::ResourceError;

namespace {

bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

// sum over nondecreasing index tuples of prod a_i
double enumerate_h(const std::vector<double>& a, int k) {
  double total = 0.0;
  std::function<void(int, int, double)> rec = [&](int start, int left, double prod) {
    if (left == 0) {
      total += prod;
      return;
    }
    for (int i = start; i < static_cast<int>(a.size()); ++i) rec(i, left - 1, prod * a[i]);
  };
  rec(0, k, 1.0);
  return total;
}

double divided_difference_hciz(const std::vector<double>& a, double z) {
  const int n = static_cast<int>(a.size());
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    double den = 1.0;
    for (int j = 0; j < n; ++j) {
      if (j != i) den *= a[i] - a[j];
    }
    sum += std::exp(z * a[i]) / den;
  }
  return std::tgamma(n) * std::pow(z, -(n - 1)) * sum;
}

}  // namespace

TEST_CASE("complete homogeneous examples") {
  CHECK(close(complete_homogeneous_log(std::vector<double>{1.0, 2.0}, 2).magnitude_log, std::log(7.0), 1e-15));
  for (int n : {1, 3, 10}) {
    for (int k : {0, 1, 5, 40}) {
      const std::vector<double> ones(static_cast<std::size_t>(n), 1.0);
      CHECK(close(complete_homogeneous_log(ones, k).magnitude_log, stlab::special::log_multiset_count(n, k), 1e-12));
      CHECK(close(normalized_h_log(ones, k), 0.0, 1e-13));
    }
  }
  CHECK(close(complete_homogeneous_log(std::vector<double>{2.5}, 3).magnitude_log, 3 * std::log(2.5), 1e-15));
  CHECK(close(normalized_h_log(std::vector<double>{1.0, 2.0}, 2), 0.42364893019360180686, 1e-15));
  CHECK_THROWS_AS(complete_homogeneous_log(std::vector<double>{1.0, 0.0}, 2), DomainError);
  CHECK_THROWS_AS(complete_homogeneous_log(std::vector<double>{}, 2), DomainError);
  CHECK_THROWS_AS(complete_homogeneous_log(std::vector<double>{1.0}, -1), DomainError);
  CHECK_THROWS_AS(complete_homogeneous_log(std::vector<double>(2000, 1.0), 1'000'000), ResourceError);
}

TEST_CASE("DP matches multiset enumeration") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(0.05, 4.0);
  for (int trial = 0; trial < 20; ++trial) {
    for (int n = 1; n <= 6; ++n) {
      std::vector<double> a(static_cast<std::size_t>(n));
      for (double& x : a) x = u(gen);
      for (int k = 0; k <= 6; ++k) {
        CHECK(close(complete_homogeneous_log(a, k).magnitude_log, std::log(enumerate_h(a, k)), 1e-12));
      }
    }
  }
}

TEST_CASE("homogeneity and overflow safety") {
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  std::vector<double> a(7);
  for (double& x : a) x = u(gen);
  for (double c : {0.01, 3.0, 1e5}) {
    std::vector<double> ca(a);
    for (double& x : ca) x *= c;
    for (int k : {1, 9, 30}) {
      const double diff = complete_homogeneous_log(ca, k).magnitude_log - complete_homogeneous_log(a, k).magnitude_log;
      CHECK(close(diff, k * std::log(c), 1e-10));
    }
  }
  std::uniform_real_distribution<double> logu(std::log(1e-3), std::log(1e3));
  std::vector<double> wide(200);
  for (double& x : wide) x = std::exp(logu(gen));
  const auto h = complete_homogeneous_log(wide, 200);
  CHECK(h.sign == 1);
  CHECK(std::isfinite(h.magnitude_log));
}

TEST_CASE("normalized h at N = 512 is near the limit") {
  std::vector<double> a(512);
  for (int i = 0; i < 512; ++i) a[i] = (2 * i + 1) / 512.0;
  const double v = normalized_h_log(a, 512);
  CHECK(std::isfinite(v));
  CHECK(std::fabs(v - 0.127613428889018562) < 0.02);
}

TEST_CASE("schur_direct") {
  for (int k = 0; k <= 5; ++k) {
    const std::vector<double> a{0.7, 1.3, 2.0};
    const int lam[] = {k, 0};
    CHECK(close(schur_direct(a, lam).magnitude_log, complete_homogeneous_log(a, k).magnitude_log, 1e-13));
  }
  const int e2[] = {1, 1};
  CHECK(close(schur_direct(std::vector<double>{1.0, 2.0}, e2).magnitude_log, std::log(2.0), 1e-15));
  const int l21[] = {2, 1};
  CHECK(close(schur_direct(std::vector<double>{1.0, 1.0, 1.0}, l21).magnitude_log, std::log(8.0), 1e-15));
  const int l111[] = {1, 1, 1};
  CHECK(schur_direct(std::vector<double>{1.0, 2.0}, l111).is_zero());
  const int bad[] = {1, 2};
  CHECK_THROWS_AS(schur_direct(std::vector<double>{1.0, 2.0}, bad), DomainError);
  const int big[] = {13};
  CHECK_THROWS_AS(schur_direct(std::vector<double>{1.0, 2.0}, big), ResourceError);
  CHECK_THROWS_AS(schur_direct(std::vector<double>(7, 1.0), l21), ResourceError);
}

TEST_CASE("Gelfand-Naimark ratio") {
  CHECK(close(gelfand_naimark_ratio(std::vector<double>{0.3}, std::vector<double>{2.5}).magnitude_log, 0.75, 1e-15));
  const std::vector<double> a{0.0, std::log(2.0)};
  const int lam[] = {2, 0};
  const auto z = partition_index(lam);
  CHECK(z == std::vector<double>{2.0, -1.0});
  const auto v = gelfand_naimark_ratio(a, z);
  CHECK(v.sign == 1);
  CHECK(close(v.to_real(), 7.0 / 3.0, 1e-14));
  const std::vector<double> swapped{-1.0, 2.0};
  CHECK(close(gelfand_naimark_ratio(a, swapped).to_real(), 7.0 / 3.0, 1e-14));
  const std::vector<double> a_swapped{std::log(2.0), 0.0};
  CHECK(close(gelfand_naimark_ratio(a_swapped, z).to_real(), 7.0 / 3.0, 1e-14));
  CHECK_THROWS_AS(gelfand_naimark_ratio(std::vector<double>{0.1, 0.1}, z), DegeneracyError);
  CHECK_THROWS_AS(gelfand_naimark_ratio(a, std::vector<double>{1.0, 1.0 + 1e-12}), DegeneracyError);
  CHECK_THROWS_AS(gelfand_naimark_ratio(a, std::vector<double>{1.0}), DomainError);
}

TEST_CASE("Gelfand-Naimark agrees with tableau enumeration") {
  std::function<void(int, int, std::vector<int>&, const std::function<void(const std::vector<int>&)>&)> parts =
      [&](int total, int max_part, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& visit) {
        if (total == 0) {
          visit(cur);
          return;
        }
        for (int p = std::min(total, max_part); p >= 1; --p) {
          cur.push_back(p);
          parts(total - p, p, cur, visit);
          cur.pop_back();
        }
      };
  for (int n = 1; n <= 4; ++n) {
    std::vector<double> x(static_cast<std::size_t>(n));
    std::vector<double> a_log(x.size());
    for (int i = 0; i < n; ++i) {
      x[i] = 0.5 + 0.6 * i;
      a_log[i] = std::log(x[i]);
    }
    const std::vector<double> ones(x.size(), 1.0);
    for (int total = 0; total <= 8; ++total) {
      std::vector<int> cur;
      parts(total, total, cur, [&](const std::vector<int>& lam) {
        if (static_cast<int>(lam.size()) > n) return;
        std::vector<int> full(lam);
        full.resize(static_cast<std::size_t>(n), 0);
        const double want = schur_direct(x, full).magnitude_log - schur_direct(ones, full).magnitude_log;
        const auto got = gelfand_naimark_ratio(a_log, partition_index(full));
        CHECK(got.sign == 1);
        CHECK(std::fabs(std::expm1(got.magnitude_log - want)) < 1e-9);
      });
    }
  }
}

TEST_CASE("rank-one HCIZ") {
  CHECK(close(hciz_rank_one_beta2(std::vector<double>{0.0, 1.0}, 1.0).to_real(), std::exp(1.0) - 1.0, 1e-14));
  CHECK(close(hciz_rank_one_beta2(std::vector<double>{0.0, 1.0}, 1e-8).to_real(), 1.0, 1e-6));
  CHECK(close(hciz_rank_one_beta2(std::vector<double>{0.0, 1.0}, -1.0).to_real(), 1.0 - std::exp(-1.0), 1e-14));
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int n = 2; n <= 5; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> a(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) a[i] = i + 0.3 * u(gen);
      const double z = 2.0 * u(gen);
      if (std::fabs(z) < 0.05) continue;
      const double want = divided_difference_hciz(a, z);
      CHECK(std::fabs(hciz_rank_one_beta2(a, z).to_real() / want - 1.0) < 1e-9);
    }
  }
  // shift covariance at a nearly confluent point
  const double c = 0.8;
  const double z = 1.7;
  const std::vector<double> near{c, c + 1e-4, c + 2e-4, c + 3e-4};
  CHECK(std::fabs(hciz_rank_one_beta2(near, z).magnitude_log - z * c) < 1e-3);
  CHECK_THROWS_AS(hciz_rank_one_beta2(std::vector<double>{1.0, 1.0}, 1.0), DegeneracyError);
  CHECK_THROWS_AS(hciz_rank_one_beta2(std::vector<double>{0.0, 1.0}, 0.0), DomainError);
}

TEST_CASE("rank-one HCIZ derivative approaches the R-transform") {
  const int n = 256;
  std::vector<double> a(n);
  for (int i = 0; i < n; ++i) a[i] = 2.0 * i / (n - 1);
  const auto mu = stlab::measures::SpectralMeasure::uniform(0.0, 2.0);
  const double h = 1e-4;
  for (double z : {0.05, 0.1}) {
    const double d = (hciz_rank_one_beta2(a, n * (z + h)).magnitude_log - hciz_rank_one_beta2(a, n * (z - h)).magnitude_log) /
                     (2 * h * n);
    CHECK(std::fabs(d - stlab::transforms::r_transform(mu, z)) < 0.05);
  }
}

TEST_CASE("two-row Schur ratio") {
  const std::vector<double> x{0.6, 1.1, 1.9};
  const std::vector<double> ones(3, 1.0);
  std::vector<double> a_log;
  for (double v : x) a_log.push_back(std::log(v));
  for (int k1 = 0; k1 <= 5; ++k1) {
    for (int k2 = 0; k2 <= k1 && k1 + k2 <= 12; ++k2) {
      const int lam[] = {k1, k2, 0};
      const double want = schur_direct(x, lam).magnitude_log - schur_direct(ones, lam).magnitude_log;
      CHECK(close(normalized_schur_two_row(x, k1, k2).magnitude_log, want, 1e-11));
      CHECK(close(gelfand_naimark_ratio(a_log, partition_index(lam)).magnitude_log, want, 1e-9));
    }
  }
  CHECK(normalized_schur_two_row(std::vector<double>{2.0}, 3, 1).is_zero());
  CHECK_THROWS_AS(normalized_schur_two_row(x, 1, 2), DomainError);
}
