#pragma once

#include <span>
#include <vector>

#include "stlab/special.hpp"

namespace stlab::sympoly {

using special::LogValue;

/// ln h_0(a), ..., ln h_kmax(a), by the variable-at-a-time recurrence
/// h_k(a_1..a_n) = h_k(a_1..a_{n-1}) + a_n h_{k-1}(a_1..a_n).
/// Zero entries are allowed here (their log is -inf).
std::vector<double> complete_homogeneous_log_table(std::span<const double> a, int kmax);

LogValue complete_homogeneous_log(std::span<const double> a, int k);

/// (1/N) ln[ h_k(a) / h_k(1, ..., 1) ].
double normalized_h_log(std::span<const double> a, int k);

/// ln s_lambda(a) by enumerating semistandard tableaux. Oracle only:
/// N <= 6 and |lambda| <= 12.
LogValue schur_direct(std::span<const double> a, std::span<const int> lambda);

/// Index vector z with F(z) = s_lambda(e^a) / s_lambda(1, ..., 1) at beta = 2,
/// i.e. z_k = lambda_k - (k - 1).
std::vector<double> partition_index(std::span<const int> lambda);

/// Gelfand-Naimark determinant for the beta = 2 Heckman-Opdam function:
/// (prod_{j<N} j!) det[e^{a_j z_k}] / (V(e^{-a}) V(-z)).
LogValue gelfand_naimark_ratio(std::span<const double> a_log, std::span<const double> z);

/// Rank-one Itzykson-Zuber integral at beta = 2,
/// (N-1)! z^{-(N-1)} sum_i e^{z a_i} / prod_{j != i} (a_i - a_j).
LogValue hciz_rank_one_beta2(std::span<const double> a, double z);

/// s_(k1,k2)(a) / s_(k1,k2)(1, ..., 1) for k1 >= k2 >= 0, via Jacobi-Trudi.
LogValue normalized_schur_two_row(std::span<const double> a, int k1, int k2);

}  // namespace stlab::sympoly
