#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "stlab/spherical.hpp"

namespace stlab::montecarlo {

using spherical::BetaParameter;

struct RngSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  std::mt19937_64 engine() const;
  /// Engine for one work chunk of this stream; chunks are independent.
  std::mt19937_64 chunk_engine(std::uint64_t chunk) const;
};

/// levels[k - 1] holds the k eigenvalues of the k-th corner, nonincreasing.
struct CornerArray {
  std::vector<std::vector<double>> levels;

  bool interlaced() const;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long n_samples = 0;
};

std::vector<double> dirichlet_weights(int n, double alpha, std::mt19937_64& gen);
std::vector<double> dirichlet_weights(int n, double alpha, RngSpec rng);

/// Estimates E[(sum a_i w_i)^z], w ~ Dirichlet(beta/2).
McEstimate mc_rank_one(std::span<const double> a, double z, BetaParameter beta, long n_samples,
                       RngSpec rng);

/// One draw of the N-1 eigenvalues of a corner, given the N eigenvalues a
/// (any order, distinct). Output is nonincreasing and interlaces sorted a.
std::vector<double> dixon_anderson_sample(std::span<const double> a, BetaParameter beta,
                                          std::mt19937_64& gen);
std::vector<double> dixon_anderson_sample(std::span<const double> a, BetaParameter beta, RngSpec rng);

CornerArray corner_process_sample(std::span<const double> a, BetaParameter beta, std::mt19937_64& gen);
CornerArray corner_process_sample(std::span<const double> a, BetaParameter beta, RngSpec rng);

/// Corner-process estimate of the Heckman-Opdam function F_a(z): the average of
/// exp(sum_k (z_k + rho_k)(L_k - L_{k-1})), L_k = -sum_i ln lambda_i^{(k)},
/// rho_k = (beta/2)(N - k), for the corner process with top level e^{-a}.
McEstimate mc_heckman_opdam(std::span<const double> a, std::span<const double> z, BetaParameter beta,
                            long n_samples, RngSpec rng);

struct MultiplicativityResult {
  McEstimate lhs;
  double rhs = 0.0;
};

/// Average over Haar unitaries G of J_{c(G)}(z), c(G) = spectrum of
/// sqrt(a) G b G* sqrt(a), against J_a(z) J_b(z). beta = 2.
MultiplicativityResult multiplicativity_check_beta2(std::span<const double> a, std::span<const double> b,
                                                    double z, long n_samples, RngSpec rng);

using ComplexMatrix = std::vector<std::complex<double>>;  // row-major n x n

ComplexMatrix haar_unitary(int n, std::mt19937_64& gen);

/// Eigenvalues of a Hermitian matrix, nondecreasing. Cyclic Jacobi on the real
/// symmetric embedding [[Re, -Im], [Im, Re]]; n <= 8.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, int n);

}  // namespace stlab::montecarlo
