#pragma once

#include <vector>

#include "stlab/measures.hpp"

namespace stlab::transforms {

using measures::MomentVector;
using measures::SpectralMeasure;

struct InversionConfig {
  double abs_tol = 1e-12;  // residual tolerance, scaled by max(1, |target|)
  int max_iter = 200;
  double bracket_growth = 2.0;

  void validate() const;
};

/// Solves T(w) = y for w above the support. T is strictly decreasing there.
double inverse_t(const SpectralMeasure& mu, double y, const InversionConfig& cfg = {});

/// Solves G(w) = y for w above the support.
double inverse_g(const SpectralMeasure& mu, double y, const InversionConfig& cfg = {});

/// Modified S-transform z/(z+1) T^{-1}(z), for 0 < z < T(a_max+).
double s_tilde(const SpectralMeasure& mu, double z, const InversionConfig& cfg = {});

/// ln S~(z), extended to z = 0 by its limit ln m1.
double log_s_tilde(const SpectralMeasure& mu, double z, const InversionConfig& cfg = {});

/// R(z) = G^{-1}(z) - 1/z, for 0 < z < G(a_max+).
double r_transform(const SpectralMeasure& mu, double z, const InversionConfig& cfg = {});

/// Multiplicative rate function: antiderivative of ln S~ with H(0) = 0,
/// continued past z* = T(a_max+) with slope ln a_max + ln(z/(z+1)).
double h_s(const SpectralMeasure& mu, double z, const InversionConfig& cfg = {});

/// Additive rate function: antiderivative of R with H(0) = 0, continued past
/// z* = G(a_max+) with slope a_max - 1/z.
double h_r(const SpectralMeasure& mu, double z, const InversionConfig& cfg = {});

enum class RateKind { hs, hr };

struct RateCurve {
  RateKind kind = RateKind::hs;
  std::vector<double> grid;  // increasing, starts at 0
  std::vector<double> values;
  double regime_boundary = 0.0;  // may be +inf
};

RateCurve rate_curve(const SpectralMeasure& mu, RateKind kind, std::vector<double> grid,
                     const InversionConfig& cfg = {});

struct SeriesCoefficients {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
};

/// First three Taylor coefficients of H^S at 0 from the first three moments.
SeriesCoefficients h_s_series(const MomentVector& m);

/// Closed form of H^S for the uniform law on [0, 2], via the principal
/// Lambert W branch.
double h_s_uniform_closed_form(double z);

}  // namespace stlab::transforms
