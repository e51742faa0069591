#include "stlab/sympoly.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "stlab/errors.hpp"

namespace stlab::sympoly {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDegenerateGap = 1e-10;

void require_positive_entries(std::span<const double> a, const char* what) {
  if (a.empty()) throw DomainError(std::string(what) + ": empty argument vector");
  for (double x : a) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw DomainError(std::string(what) + ": entries must be positive and finite");
    }
  }
}

void guard_size(std::size_t n, long long k) {
  if (k < 0) throw DomainError("complete homogeneous: degree must be nonnegative");
  if (k > 1'000'000 || static_cast<double>(n) * static_cast<double>(k) > 1e9) {
    throw ResourceError("complete homogeneous: N*k exceeds 1e9");
  }
}

void require_distinct(std::span<const double> v, const char* what) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (std::fabs(v[i] - v[j]) < kDegenerateGap) {
        throw DegeneracyError(std::string(what) + ": entries " + std::to_string(i) + " and " +
                              std::to_string(j) + " coincide");
      }
    }
  }
}

// log|det| and sign of a dense matrix by LU with partial pivoting.
LogValue log_det(std::vector<double> m, std::size_t n) {
  int sign = 1;
  double acc = 0.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::fabs(m[r * n + col]) > std::fabs(m[piv * n + col])) piv = r;
    }
    const double p = m[piv * n + col];
    if (p == 0.0) return LogValue::zero();
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m[piv * n + c], m[col * n + c]);
      sign = -sign;
    }
    if (p < 0.0) sign = -sign;
    acc += std::log(std::fabs(p));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = m[r * n + col] / p;
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) m[r * n + c] -= f * m[col * n + c];
    }
  }
  return {sign, acc};
}

}  // namespace

std::vector<double> complete_homogeneous_log_table(std::span<const double> a, int kmax) {
  guard_size(a.size(), kmax);
  std::vector<double> lh(static_cast<std::size_t>(kmax) + 1, -kInf);
  lh[0] = 0.0;
  for (double x : a) {
    if (x < 0.0 || !std::isfinite(x)) throw DomainError("complete homogeneous: negative entry");
    if (x == 0.0) continue;
    const double lx = std::log(x);
    for (int j = 1; j <= kmax; ++j) lh[j] = special::log_add_exp(lh[j], lx + lh[j - 1]);
  }
  return lh;
}

LogValue complete_homogeneous_log(std::span<const double> a, int k) {
  require_positive_entries(a, "complete_homogeneous_log");
  guard_size(a.size(), k);
  return {1, complete_homogeneous_log_table(a, k).back()};
}

double normalized_h_log(std::span<const double> a, int k) {
  const double n = static_cast<double>(a.size());
  const LogValue h = complete_homogeneous_log(a, k);
  return (h.magnitude_log - special::log_multiset_count(n, k)) / n;
}

LogValue schur_direct(std::span<const double> a, std::span<const int> lambda) {
  require_positive_entries(a, "schur_direct");
  const int n = static_cast<int>(a.size());
  int total = 0;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i] < 0 || (i > 0 && lambda[i] > lambda[i - 1])) {
      throw DomainError("schur_direct: lambda must be a partition");
    }
    total += lambda[i];
  }
  if (n > 6 || total > 12) throw ResourceError("schur_direct: oracle limited to N <= 6, |lambda| <= 12");

  std::vector<int> rows;
  for (int r : lambda) {
    if (r > 0) rows.push_back(r);
  }
  if (static_cast<int>(rows.size()) > n) return LogValue::zero();
  if (rows.empty()) return LogValue::one();

  // tableau[r][c] holds entries in 0..n-1
  std::vector<std::vector<int>> tab(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) tab[r].assign(rows[r], 0);

  double sum = 0.0;
  std::function<void(std::size_t, int, double)> fill = [&](std::size_t r, int c, double weight) {
    if (r == rows.size()) {
      sum += weight;
      return;
    }
    if (c == rows[r]) {
      fill(r + 1, 0, weight);
      return;
    }
    int lo = c > 0 ? tab[r][c - 1] : 0;
    if (r > 0) lo = std::max(lo, tab[r - 1][c] + 1);
    for (int v = lo; v < n; ++v) {
      tab[r][c] = v;
      fill(r, c + 1, weight * a[v]);
    }
  };
  fill(0, 0, 1.0);
  return LogValue::from_real(sum);
}

std::vector<double> partition_index(std::span<const int> lambda) {
  std::vector<double> z(lambda.size());
  for (std::size_t k = 0; k < lambda.size(); ++k) z[k] = lambda[k] - static_cast<double>(k);
  return z;
}

LogValue gelfand_naimark_ratio(std::span<const double> a_log, std::span<const double> z) {
  const std::size_t n = a_log.size();
  if (n == 0 || z.size() != n) throw DomainError("gelfand_naimark_ratio: need equal nonzero lengths");
  require_distinct(a_log, "gelfand_naimark_ratio(a)");
  require_distinct(z, "gelfand_naimark_ratio(z)");

  std::vector<double> m(n * n);
  double row_scale = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double peak = -kInf;
    for (std::size_t k = 0; k < n; ++k) peak = std::max(peak, a_log[j] * z[k]);
    for (std::size_t k = 0; k < n; ++k) m[j * n + k] = std::exp(a_log[j] * z[k] - peak);
    row_scale += peak;
  }
  LogValue det = log_det(std::move(m), n);
  if (det.is_zero()) return det;
  det.magnitude_log += row_scale;

  // V(x) = prod_{i<j} (x_i - x_j)
  int sign = det.sign;
  double mag = det.magnitude_log;
  for (std::size_t j = 1; j < n; ++j) mag += special::log_gamma(static_cast<double>(j) + 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // e^{-a_i} - e^{-a_j}
      const double d = a_log[j] - a_log[i];
      if (d < 0.0) sign = -sign;
      mag -= -std::min(a_log[i], a_log[j]) + std::log(-std::expm1(-std::fabs(d)));
      // (-z_i) - (-z_j)
      const double dz = z[j] - z[i];
      if (dz < 0.0) sign = -sign;
      mag -= std::log(std::fabs(dz));
    }
  }
  return {sign, mag};
}

LogValue hciz_rank_one_beta2(std::span<const double> a, double z) {
  if (a.empty()) throw DomainError("hciz_rank_one_beta2: empty eigenvalue vector");
  if (!(z != 0.0) || !std::isfinite(z)) throw DomainError("hciz_rank_one_beta2: z must be nonzero");
  for (double x : a) {
    if (!std::isfinite(x)) throw DomainError("hciz_rank_one_beta2: non-finite eigenvalue");
  }
  require_distinct(a, "hciz_rank_one_beta2");

  // Same value as the divided-difference sum, written as the positive series
  // sum_k z^k h_k(b) (N-1)!/(k+N-1)! with b = a - min(a) >= 0 (z > 0). Uses
  // I_a(z) = I_{-a}(-z) and I_{a+c}(z) = e^{zc} I_a(z).
  std::vector<double> b(a.begin(), a.end());
  if (z < 0.0) {
    for (double& x : b) x = -x;
    z = -z;
  }
  const double shift = *std::min_element(b.begin(), b.end());
  double spread = 0.0;
  for (double& x : b) {
    x -= shift;
    spread = std::max(spread, x);
  }
  const double n = static_cast<double>(b.size());
  const double lambda = z * spread;
  const int kmax = static_cast<int>(std::ceil(std::numbers::e * lambda)) + 60;
  const auto lh = complete_homogeneous_log_table(b, kmax);

  std::vector<LogValue> terms;
  terms.reserve(lh.size());
  const double lz = std::log(z);
  const double lg_n = special::log_gamma(n);
  for (int k = 0; k <= kmax; ++k) {
    if (lh[k] == -kInf) continue;
    terms.emplace_back(1, k * lz + lh[k] + lg_n - special::log_gamma(k + n));
  }
  LogValue sum = special::log_sum_exp(terms);
  if (!terms.empty() && terms.back().magnitude_log > sum.magnitude_log + std::log(1e-17)) {
    throw NumericError("hciz_rank_one_beta2: series not converged at k = " + std::to_string(kmax));
  }
  sum.magnitude_log += z * shift;
  return sum;
}

LogValue normalized_schur_two_row(std::span<const double> a, int k1, int k2) {
  require_positive_entries(a, "normalized_schur_two_row");
  if (k2 < 0 || k1 < k2) throw DomainError("normalized_schur_two_row: need k1 >= k2 >= 0");
  const double n = static_cast<double>(a.size());
  if (k2 > 0 && a.size() < 2) return LogValue::zero();
  const auto lh = complete_homogeneous_log_table(a, k1 + 1);

  // Jacobi-Trudi: s = h_{k1} h_{k2} - h_{k1+1} h_{k2-1}
  LogValue s{1, lh[k1] + lh[k2]};
  if (k2 > 0) s = special::log_add(s, LogValue{-1, lh[k1 + 1] + lh[k2 - 1]});
  if (s.sign <= 0) throw NumericError("normalized_schur_two_row: Jacobi-Trudi cancellation lost sign");

  // hook-content formula for s_(k1,k2)(1^N)
  double dim = 0.0;
  for (int j = 1; j <= k1; ++j) {
    const int leg = j <= k2 ? 1 : 0;
    dim += std::log(n + j - 1) - std::log(static_cast<double>(k1 - j + leg + 1));
  }
  for (int j = 1; j <= k2; ++j) dim += std::log(n + j - 2) - std::log(static_cast<double>(k2 - j + 1));
  s.magnitude_log -= dim;
  return s;
}

}  // namespace stlab::sympoly
