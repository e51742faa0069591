#include "stlab/spherical.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "stlab/errors.hpp"
#include "stlab/sympoly.hpp"
#include "stlab/transforms.hpp"

namespace stlab::spherical {

namespace {

void require_eigenvalues(std::span<const double> a, const char* what) {
  if (a.empty()) throw DomainError(std::string(what) + ": empty eigenvalue vector");
  for (double x : a) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw DomainError(std::string(what) + ": eigenvalues must be positive and finite");
    }
  }
}

// Eigenvalues divided by their maximum, so the largest is exactly 1.
struct Normalized {
  std::vector<double> b;
  double a_max = 0.0;
  bool all_equal = true;
};

Normalized normalize(std::span<const double> a) {
  Normalized out;
  out.a_max = *std::max_element(a.begin(), a.end());
  out.b.reserve(a.size());
  for (double x : a) {
    out.b.push_back(x / out.a_max);
    if (x != a[0]) out.all_equal = false;
  }
  return out;
}

// Point c in (0, 1) on the normalized axis, carried with d = 1 - c.
struct ContourPoint {
  double c = 0.0;
  double d = 1.0;

  double one_minus(double b) const { return (1.0 - b) + b * d; }  // 1 - c b
};

ContourPoint from_logit(double v) {
  if (v >= 0.0) {
    const double e = std::exp(-v);
    return {1.0 / (1.0 + e), e / (1.0 + e)};
  }
  const double e = std::exp(v);
  return {e / (1.0 + e), 1.0 / (1.0 + e)};
}

double mean_t(const std::vector<double>& b, const ContourPoint& p) {
  double s = 0.0;
  for (double x : b) s += p.c * x / p.one_minus(x);
  return s / static_cast<double>(b.size());
}

// Solves mean_i c b_i / (1 - c b_i) = target for c in (0, 1).
ContourPoint solve_contour_point(const std::vector<double>& b, double target) {
  auto f = [&](double v) { return mean_t(b, from_logit(v)) - target; };
  double lo = -1.0;
  double hi = 1.0;
  while (f(lo) > 0.0) {
    lo *= 2.0;
    if (lo < -1400.0) throw NumericError("discrete saddle: bracket search failed (target too small)");
  }
  while (f(hi) < 0.0) {
    hi *= 2.0;
    if (hi > 1400.0) throw NumericError("discrete saddle: bracket search failed (target too large)");
  }
  std::uintmax_t iters = 200;
  auto tol = [](double x, double y) { return std::fabs(x - y) <= 4e-16 * std::max(1.0, std::fabs(x)); };
  const auto [l, r] = boost::math::tools::toms748_solve(f, lo, hi, tol, iters);
  const ContourPoint p = from_logit(0.5 * (l + r));
  const double residual = std::fabs(mean_t(b, p) - target);
  if (residual > 1e-10 * std::max(1.0, target)) {
    throw NumericError("discrete saddle: residual " + std::to_string(residual) + " after root finding");
  }
  return p;
}

}  // namespace

BetaParameter::BetaParameter(double b) : beta(b) {
  if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("beta must be positive and finite");
}

void ContourConfig::validate() const {
  if (nodes_per_unit <= 0 || !(truncation_decay > 0.0) || !(max_half_length > 0.0) ||
      !std::isfinite(contour_offset)) {
    throw DomainError("ContourConfig: fields must be positive");
  }
}

double rate_function(std::span<const double> a, double z, double p) {
  require_eigenvalues(a, "rate_function");
  const double a_max = *std::max_element(a.begin(), a.end());
  if (!(p > std::log(a_max))) throw DomainError("rate_function: need p > ln max(a)");
  double s = 0.0;
  for (double x : a) s += std::log1p(-x * std::exp(-p));
  return z * p - s / static_cast<double>(a.size());
}

SaddleResult discrete_saddle(std::span<const double> a, double z, BetaParameter) {
  require_eigenvalues(a, "discrete_saddle");
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("discrete_saddle: z must be positive");
  const Normalized nm = normalize(a);
  const ContourPoint pt = solve_contour_point(nm.b, z);
  const double n = static_cast<double>(a.size());

  SaddleResult out;
  out.p_star = std::log(nm.a_max) - std::log(pt.c);
  double logs = 0.0;
  double curv = 0.0;
  for (double x : nm.b) {
    const double den = pt.one_minus(x);
    logs += std::log(den);
    curv += pt.c * x / (den * den);
  }
  out.rate_value = z * out.p_star - logs / n;
  out.curvature = curv / n;
  out.regime = Regime::interior;
  return out;
}

LogValue rank_one_spherical(std::span<const double> a, double z, BetaParameter beta,
                            const ContourConfig& cfg) {
  require_eigenvalues(a, "rank_one_spherical");
  cfg.validate();
  if (!std::isfinite(z) || !(z > -1.0)) throw DomainError("rank_one_spherical: need z > -1");
  const double n = static_cast<double>(a.size());
  const double half_beta = 0.5 * beta.beta;
  const double m = n * half_beta;
  if (a.size() > 1 && !(z + m > 0.0)) {
    throw DomainError("rank_one_spherical: need z > -N beta / 2 for an absolutely convergent contour");
  }
  if (z == 0.0) return LogValue::one();

  const Normalized nm = normalize(a);
  if (nm.all_equal) return {1, z * std::log(nm.a_max)};

  // J = Gamma(M) Gamma(z+1) / Gamma(M+z) (1/2 pi i) int s^{-z-1} prod (1 - s b_i)^{-beta/2} ds
  // on Re s = c, where the integrand is stationary at c.
  const double zp1 = z + 1.0;
  ContourPoint pt = solve_contour_point(nm.b, zp1 / m);
  if (cfg.contour_offset != 0.0) {
    const double c = pt.c * std::exp(-cfg.contour_offset);
    if (!(c < 1.0)) throw DomainError("rank_one_spherical: contour shifted onto the spectrum");
    pt = {c, 1.0 - c};
  }
  const double c = pt.c;

  std::vector<double> q(nm.b.size());
  double log_f = -zp1 * std::log(c);
  double phi2 = zp1 / (c * c);
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double den = pt.one_minus(nm.b[i]);
    q[i] = nm.b[i] / den;
    log_f -= half_beta * std::log(den);
    phi2 += half_beta * q[i] * q[i];
  }
  const double sigma = 1.0 / std::sqrt(phi2);

  // g(y) = integrand on s = c + iy divided by its value at y = 0; |g| <= 1.
  auto log_g = [&](double y) {
    std::complex<double> acc = -zp1 * std::log(std::complex<double>(1.0, y / c));
    for (double qi : q) acc -= half_beta * std::log(std::complex<double>(1.0, -y * qi));
    return acc;
  };

  // y = sigma sinh(u), trapezoid in u
  const double h = 1.0 / cfg.nodes_per_unit;
  double re_sum = 1.0;
  double im_sum = 0.0;
  double re_comp = 0.0;
  for (long k = 1;; ++k) {
    const double u = k * h;
    if (u > cfg.max_half_length) {
      throw NumericError("rank_one_spherical: contour integrand not decayed at max_half_length");
    }
    const double y = sigma * std::sinh(u);
    const double jac = std::cosh(u);
    const std::complex<double> gp = std::exp(log_g(y)) * jac;
    const std::complex<double> gm = std::exp(log_g(-y)) * jac;
    // Neumaier summation for the real part
    const double term = gp.real() + gm.real();
    const double t = re_sum + term;
    re_comp += std::fabs(re_sum) >= std::fabs(term) ? (re_sum - t) + term : (term - t) + re_sum;
    re_sum = t;
    im_sum += gp.imag() + gm.imag();
    if (std::abs(gp) < cfg.truncation_decay && std::abs(gm) < cfg.truncation_decay) break;
  }
  re_sum += re_comp;
  if (!(re_sum > 0.0)) throw NumericError("rank_one_spherical: nonpositive contour integral");
  if (std::fabs(im_sum) > 1e-10 * re_sum) {
    throw NumericError("rank_one_spherical: imaginary residual " + std::to_string(im_sum / re_sum));
  }

  const double log_integral = log_f + std::log(re_sum * h * sigma) - std::log(2.0 * std::numbers::pi);
  const double log_prefactor = special::log_gamma(m) + special::log_gamma(zp1) - special::log_gamma(m + z);
  return {1, z * std::log(nm.a_max) + log_prefactor + log_integral};
}

double rescaled_argument(std::size_t n, BetaParameter beta, double z_raw) {
  return 2.0 * z_raw / (static_cast<double>(n) * beta.beta);
}

double raw_argument(std::size_t n, BetaParameter beta, double z_rescaled) {
  return 0.5 * static_cast<double>(n) * beta.beta * z_rescaled;
}

double asymptotic_log_rank_one(const measures::SpectralMeasure& mu, double z, BetaParameter) {
  if (!(z > 0.0)) throw DomainError("asymptotic_log_rank_one: z must be positive");
  return transforms::h_s(mu, z);
}

FiniteNComparison finite_n_vs_asymptotic(std::span<const double> a, double z, BetaParameter beta) {
  require_eigenvalues(a, "finite_n_vs_asymptotic");
  const LogValue j = rank_one_spherical(a, raw_argument(a.size(), beta, z), beta);
  FiniteNComparison out;
  out.finite_n = j.magnitude_log / raw_argument(a.size(), beta, 1.0);
  out.limit = asymptotic_log_rank_one(measures::SpectralMeasure::empirical({a.begin(), a.end()}), z, beta);
  out.gap = out.finite_n - out.limit;
  return out;
}

ConjectureProbe low_rank_conjecture_probe(std::span<const double> a, double z1, double z2) {
  require_eigenvalues(a, "low_rank_conjecture_probe");
  if (!(z1 > 0.0) || !(z2 > 0.0) || z1 == z2) {
    throw DomainError("low_rank_conjecture_probe: need distinct positive z1, z2");
  }
  const double n = static_cast<double>(a.size());
  ConjectureProbe out;
  out.k1 = static_cast<int>(std::llround(n * std::max(z1, z2)));
  out.k2 = static_cast<int>(std::llround(n * std::min(z1, z2)));
  out.lhs = sympoly::normalized_schur_two_row(a, out.k1, out.k2).magnitude_log / n;
  const auto mu = measures::SpectralMeasure::empirical({a.begin(), a.end()});
  out.rhs = transforms::h_s(mu, z1) + transforms::h_s(mu, z2);
  return out;
}

}  // namespace stlab::spherical
