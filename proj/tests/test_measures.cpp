#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "stlab/errors.hpp"
#include "stlab/measures.hpp"

using namespace stlab::measures;
using stlab::DomainError;

namespace {

bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

}  // namespace

TEST_CASE("factories validate input") {
  CHECK_THROWS_AS(SpectralMeasure::empirical({}), DomainError);
  CHECK_THROWS_AS(SpectralMeasure::empirical({1.0, -2.0}), DomainError);
  CHECK_THROWS_AS(SpectralMeasure::empirical({0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(SpectralMeasure::uniform(2.0, 1.0), DomainError);
  CHECK_THROWS_AS(SpectralMeasure::uniform(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(SpectralMeasure::atomic({1.0, 2.0}, {0.5, 0.6}), DomainError);
  CHECK_THROWS_AS(SpectralMeasure::atomic({1.0}, {1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(SpectralMeasure::atomic({1.0, 2.0}, {1.0, 0.0}), DomainError);
  const auto e = SpectralMeasure::empirical({1.0, 3.0, 2.0});
  const auto& ev = std::get<Empirical>(e.variant()).eigenvalues;
  CHECK(ev == std::vector<double>{3.0, 2.0, 1.0});
  CHECK(e.is_discrete());
  CHECK_FALSE(SpectralMeasure::uniform(0, 2).is_discrete());
}

TEST_CASE("moments") {
  auto m = moments(SpectralMeasure::delta(2.0), 3);
  CHECK(m == std::vector<double>{2.0, 4.0, 8.0});
  m = moments(SpectralMeasure::uniform(0.0, 2.0), 3);
  CHECK(close(m[0], 1.0, 1e-15));
  CHECK(close(m[1], 4.0 / 3.0, 1e-15));
  CHECK(close(m[2], 2.0, 1e-15));
  m = moments(SpectralMeasure::empirical({1.0, 2.0}), 2);
  CHECK(close(m[0], 1.5, 1e-15));
  CHECK(close(m[1], 2.5, 1e-15));
  // taper on [0,1]: density 2(1-x), m_k = 2/((k+1)(k+2))
  m = moments(SpectralMeasure::linear_taper(0.0, 1.0), 2);
  CHECK(close(m[0], 1.0 / 3.0, 1e-15));
  CHECK(close(m[1], 1.0 / 6.0, 1e-15));
  CHECK_THROWS_AS(moments(SpectralMeasure::delta(1.0), 0), DomainError);
}

TEST_CASE("stieltjes and T examples") {
  CHECK(close(stieltjes(SpectralMeasure::delta(2.0), 3.0), 1.0, 1e-15));
  CHECK(close(stieltjes(SpectralMeasure::uniform(0, 2), 3.0), 0.5 * std::log(3.0), 1e-15));
  CHECK(close(stieltjes(SpectralMeasure::empirical({1.0, 2.0}), 4.0), 5.0 / 12.0, 1e-15));
  CHECK(close(t_transform(SpectralMeasure::delta(2.0), 4.0), 1.0, 1e-15));
  CHECK(close(t_transform(SpectralMeasure::uniform(0, 2), 3.0), 0.64791843300216453709, 1e-15));
  CHECK(close(t_transform(SpectralMeasure::empirical({1.0, 2.0}), 4.0), 2.0 / 3.0, 1e-15));
  CHECK_THROWS_AS(t_transform(SpectralMeasure::uniform(0, 2), 2.0), DomainError);
  CHECK_THROWS_AS(stieltjes(SpectralMeasure::uniform(0, 2), 1.0), DomainError);
}

TEST_CASE("support edges and edge limits") {
  CHECK(support_edges(SpectralMeasure::uniform(0, 2)) == std::pair{0.0, 2.0});
  CHECK(support_edges(SpectralMeasure::empirical({1.0, 2.0})) == std::pair{1.0, 2.0});
  CHECK(support_edges(SpectralMeasure::atomic({1.0, 3.0}, {0.5, 0.5})) == std::pair{1.0, 3.0});
  CHECK(std::isinf(t_limit_at_edge(SpectralMeasure::delta(2.0))));
  CHECK(std::isinf(t_limit_at_edge(SpectralMeasure::uniform(0, 2))));
  CHECK(std::isinf(t_limit_at_edge(SpectralMeasure::empirical({1.0, 2.0}))));
  // taper [lo,hi]: T(hi) = 2 hi / L - 1, G(hi) = 2 / L
  CHECK(close(t_limit_at_edge(SpectralMeasure::linear_taper(0.5, 1.5)), 2.0, 1e-15));
  CHECK(close(g_limit_at_edge(SpectralMeasure::linear_taper(0.5, 1.5)), 2.0, 1e-15));
  CHECK(close(t_transform(SpectralMeasure::linear_taper(0.5, 1.5), 1.5 + 1e-9), 2.0, 1e-6));
}

TEST_CASE("T = wG - 1, monotonicity and tail bound") {
  std::mt19937_64 gen(1);
  const std::vector<SpectralMeasure> mus{SpectralMeasure::uniform(0, 2), SpectralMeasure::linear_taper(0.5, 1.5),
                                         SpectralMeasure::atomic({1.0, 3.0}, {0.5, 0.5}),
                                         SpectralMeasure::empirical({1.0, 2.0, 3.0})};
  std::uniform_real_distribution<double> logd(-10.0, 8.0);
  for (const auto& mu : mus) {
    const double top = support_edges(mu).second;
    const auto m = moments(mu, 2);
    for (int i = 0; i < 300; ++i) {
      const double w1 = top + std::exp(logd(gen));
      const double w2 = w1 + std::exp(logd(gen));
      const double t1 = t_transform(mu, w1);
      CHECK(std::fabs(t1 - (w1 * stieltjes(mu, w1) - 1.0)) <= 1e-13 * std::max(1.0, std::fabs(t1)) * 10);
      if (w2 > w1) CHECK(t_transform(mu, w2) < t1);
      if (w1 >= 4 * top) CHECK(std::fabs(w1 * stieltjes(mu, w1) - 1.0 - m[0] / w1) <= 2 * m[1] / (w1 * w1));
    }
  }
}

TEST_CASE("empirical discretization tracks the continuous transform") {
  const auto mu = SpectralMeasure::uniform(0, 2);
  double prev = 1.0;
  for (int n : {16, 64, 256}) {
    const auto pts = discretize(mu, n);
    CHECK(pts.size() == static_cast<std::size_t>(n));
    CHECK(close(pts.front(), 2.0 - 1.0 / n, 1e-14));
    CHECK(close(pts.back(), 1.0 / n, 1e-14));
    const double err = std::fabs(t_transform(SpectralMeasure::empirical(pts), 3.0) - t_transform(mu, 3.0));
    CHECK(err < 2.0 / n);
    CHECK(err < prev);
    prev = err;
  }
  const auto at = discretize(SpectralMeasure::atomic({1.0, 3.0}, {0.5, 0.5}), 4);
  CHECK(at == std::vector<double>{3.0, 3.0, 1.0, 1.0});
  CHECK_THROWS_AS(discretize(mu, 0), DomainError);
}

TEST_CASE("load_empirical") {
  const auto path = std::filesystem::temp_directory_path() / "stlab_eigs_test.txt";
  {
    std::ofstream f(path);
    f << "# eigenvalues\n1.5\n\n0.5\n2\n";
  }
  const auto mu = load_empirical(path);
  CHECK(std::get<Empirical>(mu.variant()).eigenvalues == std::vector<double>{2.0, 1.5, 0.5});
  {
    std::ofstream f(path);
    f << "1.0\nabc\n";
  }
  CHECK_THROWS_AS(load_empirical(path), DomainError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_empirical(path), DomainError);
}
