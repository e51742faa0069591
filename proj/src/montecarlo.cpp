#include "stlab/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "stlab/errors.hpp"
#include "stlab/parallel.hpp"

namespace stlab::montecarlo {

namespace {

constexpr long kChunk = 1024;
constexpr long kMaxAttempts = 5'000'000;

struct Accumulator {
  long n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }

  void merge(const Accumulator& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double total = static_cast<double>(n + o.n);
    const double d = o.mean - mean;
    mean += d * static_cast<double>(o.n) / total;
    m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) / total;
    n += o.n;
  }
};

// Fixed-size chunks with their own engines, merged in chunk order, so the
// estimate does not depend on the number of workers.
McEstimate run_chunks(long n_samples, RngSpec rng, const std::function<double(std::mt19937_64&)>& draw) {
  const long chunks = (n_samples + kChunk - 1) / kChunk;
  std::vector<Accumulator> parts(static_cast<std::size_t>(chunks));
  parallel_for(parts.size(), [&](std::size_t i) {
    auto gen = rng.chunk_engine(i);
    const long count = std::min<long>(kChunk, n_samples - static_cast<long>(i) * kChunk);
    for (long s = 0; s < count; ++s) parts[i].add(draw(gen));
  });
  Accumulator total;
  for (const auto& p : parts) total.merge(p);
  McEstimate out;
  out.mean = total.mean;
  out.n_samples = total.n;
  const double var = total.n > 1 ? total.m2 / static_cast<double>(total.n - 1) : 0.0;
  out.std_error = std::sqrt(var / static_cast<double>(total.n));
  return out;
}

std::vector<double> sorted_distinct_desc(std::span<const double> a, const char* what) {
  std::vector<double> s(a.begin(), a.end());
  for (double x : s) {
    if (!std::isfinite(x)) throw DomainError(std::string(what) + ": non-finite entry");
  }
  std::sort(s.begin(), s.end(), std::greater<>());
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const double scale = std::max({1.0, std::fabs(s[i]), std::fabs(s[i + 1])});
    if (s[i] - s[i + 1] <= 1e-12 * scale) {
      throw DegeneracyError(std::string(what) + ": entries must be distinct");
    }
  }
  return s;
}

double beta_draw(double alpha, std::mt19937_64& gen) {
  std::gamma_distribution<double> g(alpha, 1.0);
  for (;;) {
    const double x = g(gen);
    const double y = g(gen);
    if (x + y > 0.0) return x / (x + y);
  }
}

void require_samples(long n, long minimum, const char* what) {
  if (n < minimum) throw DomainError(std::string(what) + ": need at least " + std::to_string(minimum) + " samples");
}

}  // namespace

std::mt19937_64 RngSpec::engine() const {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

std::mt19937_64 RngSpec::chunk_engine(std::uint64_t chunk) const {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),   static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(chunk),  static_cast<std::uint32_t>(chunk >> 32),
                    0x9e3779b9u};
  return std::mt19937_64(seq);
}

bool CornerArray::interlaced() const {
  for (std::size_t k = 1; k < levels.size(); ++k) {
    const auto& up = levels[k];
    const auto& down = levels[k - 1];
    if (up.size() != k + 1 || down.size() != k) return false;
    for (std::size_t i = 0; i < k; ++i) {
      if (!(up[i] >= down[i] && down[i] >= up[i + 1])) return false;
    }
  }
  return true;
}

std::vector<double> dirichlet_weights(int n, double alpha, std::mt19937_64& gen) {
  if (n < 1) throw DomainError("dirichlet_weights: n must be positive");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("dirichlet_weights: alpha must be positive");
  std::gamma_distribution<double> g(alpha, 1.0);
  std::vector<double> w(static_cast<std::size_t>(n));
  for (;;) {
    double s = 0.0;
    for (double& x : w) s += (x = g(gen));
    if (s > 0.0) {
      for (double& x : w) x /= s;
      return w;
    }
  }
}

std::vector<double> dirichlet_weights(int n, double alpha, RngSpec rng) {
  auto gen = rng.engine();
  return dirichlet_weights(n, alpha, gen);
}

McEstimate mc_rank_one(std::span<const double> a, double z, BetaParameter beta, long n_samples, RngSpec rng) {
  if (a.empty()) throw DomainError("mc_rank_one: empty eigenvalue vector");
  for (double x : a) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("mc_rank_one: eigenvalues must be positive");
  }
  if (!(z > -1.0) || !std::isfinite(z)) throw DomainError("mc_rank_one: need z > -1");
  require_samples(n_samples, 100, "mc_rank_one");
  const double base = *std::min_element(a.begin(), a.end());
  const int n = static_cast<int>(a.size());
  const double alpha = 0.5 * beta.beta;
  return run_chunks(n_samples, rng, [&](std::mt19937_64& gen) {
    const auto w = dirichlet_weights(n, alpha, gen);
    // base + sum (a_i - base) w_i is exact when all a_i agree
    double x = base;
    for (int i = 0; i < n; ++i) x += (a[i] - base) * w[i];
    return std::pow(x, z);
  });
}

std::vector<double> dixon_anderson_sample(std::span<const double> a, BetaParameter beta, std::mt19937_64& gen) {
  const auto s = sorted_distinct_desc(a, "dixon_anderson_sample");
  const std::size_t n = s.size();
  if (n < 2 || n > 8) throw DomainError("dixon_anderson_sample: need 2 <= N <= 8");
  const double alpha = 0.5 * beta.beta;
  const double e = alpha - 1.0;
  std::vector<double> lam(n - 1);
  if (n == 2) {
    lam[0] = s[1] + (s[0] - s[1]) * beta_draw(alpha, gen);
    return lam;
  }

  // log of the largest possible acceptance ratio
  double log_bound = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j + 1 < n; ++j) log_bound += std::log(s[i] - s[j + 1]);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || j == i + 1 || e == 0.0) continue;
      double far = 0.0;
      double near = 0.0;
      if (j < i) {
        far = s[j] - s[i + 1];
        near = s[j] - s[i];
      } else {
        far = s[i] - s[j];
        near = s[i + 1] - s[j];
      }
      log_bound += e * std::log(e > 0.0 ? far : near);
    }
  }

  for (long attempt = 0; attempt < kMaxAttempts; ++attempt) {
    for (std::size_t i = 0; i + 1 < n; ++i) lam[i] = s[i + 1] + (s[i] - s[i + 1]) * beta_draw(alpha, gen);
    double log_ratio = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i + 1 < n && ok; ++i) {
      for (std::size_t j = i + 1; j + 1 < n; ++j) {
        const double d = lam[i] - lam[j];
        if (!(d > 0.0)) {
          ok = false;
          break;
        }
        log_ratio += std::log(d);
      }
      if (e == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == i + 1) continue;
        log_ratio += e * std::log(std::fabs(lam[i] - s[j]));
      }
    }
    if (!ok) continue;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    if (std::log(u(gen)) <= log_ratio - log_bound) return lam;
  }
  throw NumericError("dixon_anderson_sample: acceptance below 1e-6; use smaller N or beta closer to 2");
}

std::vector<double> dixon_anderson_sample(std::span<const double> a, BetaParameter beta, RngSpec rng) {
  auto gen = rng.engine();
  return dixon_anderson_sample(a, beta, gen);
}

CornerArray corner_process_sample(std::span<const double> a, BetaParameter beta, std::mt19937_64& gen) {
  const auto top = sorted_distinct_desc(a, "corner_process_sample");
  if (top.empty() || top.size() > 8) throw DomainError("corner_process_sample: need 1 <= N <= 8");
  CornerArray out;
  out.levels.resize(top.size());
  out.levels.back() = top;
  for (std::size_t k = top.size() - 1; k >= 1; --k) {
    out.levels[k - 1] = dixon_anderson_sample(out.levels[k], beta, gen);
  }
  if (!out.interlaced()) throw NumericError("corner_process_sample: interlacing violated");
  return out;
}

CornerArray corner_process_sample(std::span<const double> a, BetaParameter beta, RngSpec rng) {
  auto gen = rng.engine();
  return corner_process_sample(a, beta, gen);
}

McEstimate mc_heckman_opdam(std::span<const double> a, std::span<const double> z, BetaParameter beta,
                            long n_samples, RngSpec rng) {
  const std::size_t n = a.size();
  if (n == 0 || n > 6 || z.size() != n) throw DomainError("mc_heckman_opdam: need 1 <= N <= 6, |z| = |a|");
  require_samples(n_samples, 1000, "mc_heckman_opdam");
  std::vector<double> top(n);
  for (std::size_t i = 0; i < n; ++i) top[i] = std::exp(-a[i]);
  sorted_distinct_desc(top, "mc_heckman_opdam");
  std::vector<double> shifted(n);
  bool trivial = true;
  for (std::size_t k = 0; k < n; ++k) {
    shifted[k] = z[k] + 0.5 * beta.beta * static_cast<double>(n - 1 - k);
    if (shifted[k] != 0.0) trivial = false;
  }
  return run_chunks(n_samples, rng, [&](std::mt19937_64& gen) {
    if (trivial) return 1.0;
    const auto corners = corner_process_sample(top, beta, gen);
    double exponent = 0.0;
    double prev = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      double level = 0.0;
      for (double x : corners.levels[k]) level -= std::log(x);
      exponent += shifted[k] * (level - prev);
      prev = level;
    }
    return std::exp(exponent);
  });
}

ComplexMatrix haar_unitary(int n, std::mt19937_64& gen) {
  if (n < 1) throw DomainError("haar_unitary: n must be positive");
  std::normal_distribution<double> g(0.0, 1.0);
  const auto un = static_cast<std::size_t>(n);
  ComplexMatrix q(un * un);
  for (auto& x : q) {
    const double re = g(gen);
    x = {re, g(gen)};
  }
  // modified Gram-Schmidt on columns; the implied R has a positive diagonal
  for (std::size_t j = 0; j < un; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      std::complex<double> dot = 0.0;
      for (std::size_t i = 0; i < un; ++i) dot += std::conj(q[i * un + k]) * q[i * un + j];
      for (std::size_t i = 0; i < un; ++i) q[i * un + j] -= dot * q[i * un + k];
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < un; ++i) norm += std::norm(q[i * un + j]);
    norm = std::sqrt(norm);
    if (!(norm > 0.0)) throw NumericError("haar_unitary: rank-deficient Gaussian draw");
    for (std::size_t i = 0; i < un; ++i) q[i * un + j] /= norm;
  }
  return q;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, int n) {
  if (n < 1 || n > 8 || m.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw DomainError("hermitian_eigenvalues: need an n x n matrix with n <= 8");
  }
  const std::size_t un = static_cast<std::size_t>(n);
  const std::size_t dim = 2 * un;
  std::vector<double> s(dim * dim);
  for (std::size_t i = 0; i < un; ++i) {
    for (std::size_t j = 0; j < un; ++j) {
      const auto v = m[i * un + j];
      s[i * dim + j] = v.real();
      s[(i + un) * dim + (j + un)] = v.real();
      s[i * dim + (j + un)] = -v.imag();
      s[(i + un) * dim + j] = v.imag();
    }
  }
  double total = 0.0;
  for (double x : s) total += x * x;
  const double target = 1e-24 * std::max(total, 1e-300);

  for (int sweep = 0;; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < dim; ++p) {
      for (std::size_t q = p + 1; q < dim; ++q) off += 2.0 * s[p * dim + q] * s[p * dim + q];
    }
    if (off <= target) break;
    if (sweep == 100) throw NumericError("hermitian_eigenvalues: Jacobi sweeps did not converge");
    for (std::size_t p = 0; p < dim; ++p) {
      for (std::size_t q = p + 1; q < dim; ++q) {
        const double apq = s[p * dim + q];
        if (apq == 0.0) continue;
        const double theta = (s[q * dim + q] - s[p * dim + p]) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (std::size_t k = 0; k < dim; ++k) {
          const double skp = s[k * dim + p];
          const double skq = s[k * dim + q];
          s[k * dim + p] = c * skp - sn * skq;
          s[k * dim + q] = sn * skp + c * skq;
        }
        for (std::size_t k = 0; k < dim; ++k) {
          const double spk = s[p * dim + k];
          const double sqk = s[q * dim + k];
          s[p * dim + k] = c * spk - sn * sqk;
          s[q * dim + k] = sn * spk + c * sqk;
        }
      }
    }
  }
  std::vector<double> diag(dim);
  for (std::size_t i = 0; i < dim; ++i) diag[i] = s[i * dim + i];
  std::sort(diag.begin(), diag.end());
  // the embedding doubles every eigenvalue
  std::vector<double> out(un);
  for (std::size_t i = 0; i < un; ++i) out[i] = 0.5 * (diag[2 * i] + diag[2 * i + 1]);
  return out;
}

MultiplicativityResult multiplicativity_check_beta2(std::span<const double> a, std::span<const double> b,
                                                    double z, long n_samples, RngSpec rng) {
  const std::size_t n = a.size();
  if (n == 0 || n > 6 || b.size() != n) throw DomainError("multiplicativity_check_beta2: need 1 <= N <= 6, |a| = |b|");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(a[i] > 0.0) || !(b[i] > 0.0)) throw DomainError("multiplicativity_check_beta2: entries must be positive");
  }
  require_samples(n_samples, 2, "multiplicativity_check_beta2");
  const BetaParameter two(2.0);
  const int ni = static_cast<int>(n);

  MultiplicativityResult out;
  out.rhs = spherical::rank_one_spherical(a, z, two).to_real() * spherical::rank_one_spherical(b, z, two).to_real();
  out.lhs = run_chunks(n_samples, rng, [&](std::mt19937_64& gen) {
    const auto u = haar_unitary(ni, gen);
    ComplexMatrix m(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        std::complex<double> acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) acc += u[i * n + k] * b[k] * std::conj(u[j * n + k]);
        m[i * n + j] = std::sqrt(a[i] * a[j]) * acc;
      }
    }
    auto c = hermitian_eigenvalues(m, ni);
    const double floor = 1e-300;
    for (double& x : c) x = std::max(x, floor);
    return spherical::rank_one_spherical(c, z, two).to_real();
  });
  return out;
}

}  // namespace stlab::montecarlo
