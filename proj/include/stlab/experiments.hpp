#pragma once

#include <string>
#include <vector>

#include "stlab/measures.hpp"

namespace stlab::experiments {

using measures::SpectralMeasure;

/// Parses uniform:lo:hi, taper:lo:hi, delta:c, ones:N, points:x1,x2,...,
/// atoms:x1@w1,x2@w2,... and file:path. Throws DomainError on bad input.
SpectralMeasure parse_measure_spec(const std::string& spec);

/// Comma-separated lists, e.g. "0.25,0.5,1"; "lo:hi:step" also accepted for reals.
std::vector<double> parse_real_list(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);

struct TransformRow {
  double z = 0.0;
  double t_inv = 0.0;
  double s_tilde = 0.0;
  double ln_s_tilde = 0.0;
  double h_s = 0.0;
  double h_r = 0.0;
};

/// One row per z. Past z* = T(a_max+) the inverse sticks at a_max.
std::vector<TransformRow> transform_table(const SpectralMeasure& mu, const std::vector<double>& z_grid);

struct Fig1Row {
  int n = 0;
  double z = 0.0;
  int k = 0;
  double normalized_h = 0.0;
  double h_s = 0.0;
  double gap = 0.0;  // |normalized_h - h_s|
};

struct Fig1Result {
  std::vector<Fig1Row> rows;   // ordered by (n, z)
  std::vector<Fig1Row> inset;  // z = 1, one per n
};

/// Normalized h_k of the N-point quantile discretization of mu against H^S(z),
/// with k = round(N z).
Fig1Result run_fig1(const SpectralMeasure& mu, const std::vector<int>& n_list,
                    const std::vector<double>& z_grid);

struct ConjectureRow {
  int n = 0;
  double z1 = 0.0;
  double z2 = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
};

std::vector<ConjectureRow> run_conjecture(const SpectralMeasure& mu, const std::vector<int>& n_list,
                                          double z1, double z2);

}  // namespace stlab::experiments
