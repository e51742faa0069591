#pragma once

#include <span>

#include "stlab/measures.hpp"
#include "stlab/special.hpp"

namespace stlab::spherical {

using special::LogValue;

struct BetaParameter {
  double beta = 2.0;

  BetaParameter() = default;
  explicit BetaParameter(double b);

  bool classical() const { return beta == 1.0 || beta == 2.0 || beta == 4.0; }
};

enum class Regime { interior, edge };

struct SaddleResult {
  double p_star = 0.0;
  double rate_value = 0.0;
  double curvature = 0.0;
  Regime regime = Regime::interior;
};

struct ContourConfig {
  int nodes_per_unit = 64;
  double truncation_decay = 1e-16;
  // Bound on the sinh-mapped contour parameter u, y = sigma sinh(u).
  double max_half_length = 600.0;
  // Moves the contour from the saddle: Re p = p* + contour_offset.
  double contour_offset = 0.0;

  void validate() const;
};

/// zp - (1/N) sum ln(1 - a_i e^{-p}), for p > ln max(a).
double rate_function(std::span<const double> a, double z, double p);

/// Root of z = (1/N) sum a_i e^{-p} / (1 - a_i e^{-p}).
SaddleResult discrete_saddle(std::span<const double> a, double z, BetaParameter beta);

/// ln J(z) where J(z) = E[(sum_i a_i w_i)^z], w ~ Dirichlet(beta/2, ..., beta/2).
/// Laplace inversion along a vertical line through the saddle, for z > -1.
LogValue rank_one_spherical(std::span<const double> a, double z, BetaParameter beta,
                            const ContourConfig& cfg = {});

/// Maps a raw argument to the scale of the large-N limit: 2 z / (N beta).
double rescaled_argument(std::size_t n, BetaParameter beta, double z_raw);
double raw_argument(std::size_t n, BetaParameter beta, double z_rescaled);

/// Large-N limit of (2/(N beta)) ln J((N beta / 2) z), i.e. H^S(z).
double asymptotic_log_rank_one(const measures::SpectralMeasure& mu, double z, BetaParameter beta);

struct FiniteNComparison {
  double finite_n = 0.0;
  double limit = 0.0;
  double gap = 0.0;
};

FiniteNComparison finite_n_vs_asymptotic(std::span<const double> a, double z, BetaParameter beta);

struct ConjectureProbe {
  int k1 = 0;
  int k2 = 0;
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Two-row test at beta = 2: lhs = (1/N) ln of the normalized Schur function with
/// row lengths round(N z1), round(N z2); rhs = H^S(z1) + H^S(z2) of the
/// empirical measure of a.
ConjectureProbe low_rank_conjecture_probe(std::span<const double> a, double z1, double z2);

}  // namespace stlab::spherical
