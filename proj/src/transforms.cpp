#include "stlab/transforms.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <array>
#include <cmath>
#include <tuple>
#include <vector>
#include <functional>
#include <limits>
#include <sstream>

#include "stlab/errors.hpp"
#include "stlab/special.hpp"

namespace stlab::transforms {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kQuadTol = 1e-13;
constexpr double kQuadAbsTol = 1e-10;
constexpr unsigned kQuadDepth = 16;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Solves f(w) = y for w in (edge, inf), f strictly decreasing. The search
// runs in x = ln(w - edge) so that both the pole at the edge and the 1/w
// tail stay well scaled.
double solve_decreasing(const std::function<double(double)>& f, double edge, double y,
                        const InversionConfig& cfg, const char* what) {
  const double scale = edge > 0.0 ? edge : 1.0;
  const auto g = [&](double x) { return f(edge + std::exp(x)) - y; };

  double x_lo;
  double x_hi;
  const double x0 = std::log(scale);
  const double step = std::log(cfg.bracket_growth);
  if (g(x0) >= 0.0) {
    x_lo = x0;
    x_hi = x0 + step;
    int guard = 0;
    while (g(x_hi) > 0.0) {
      x_lo = x_hi;
      x_hi += step * (1 + guard / 8);
      if (++guard > 4000 || x_hi > 700.0) {
        throw NumericError(std::string(what) + ": no upper bracket for target " + fmt(y));
      }
    }
  } else {
    x_hi = x0;
    x_lo = x0 - 4.0 * step;
    int guard = 0;
    while (g(x_lo) < 0.0) {
      x_hi = x_lo;
      x_lo -= 4.0 * step * (1 + guard / 8);
      if (++guard > 4000 || x_lo < x0 - 36.0 * std::log(10.0)) {
        throw NumericError(std::string(what) + ": no lower bracket for target " + fmt(y) +
                           " (edge " + fmt(edge) + ")");
      }
    }
  }

  const auto tol = [edge](double a, double b) {
    const double ea = std::exp(a);
    const double eb = std::exp(b);
    return std::fabs(ea - eb) <= 4e-16 * (edge + std::max(ea, eb));
  };
  std::uintmax_t iters = static_cast<std::uintmax_t>(cfg.max_iter);
  const auto [a, b] = boost::math::tools::toms748_solve(g, x_lo, x_hi, tol, iters);
  const double xa = std::fabs(g(a)) <= std::fabs(g(b)) ? a : b;
  const double w = edge + std::exp(xa);
  const double resid = std::fabs(f(w) - y);
  // near a log singularity the neighbouring doubles of w can straddle y
  const double prev = std::nextafter(w, edge);
  const double below = prev > edge ? f(prev) : kInf;
  const double above = f(std::nextafter(w, kInf));
  const bool bracketed = std::min(below, above) <= y && y <= std::max(below, above);
  if (!(resid <= cfg.abs_tol * std::max(1.0, std::fabs(y))) && !bracketed) {
    throw NumericError(std::string(what) + ": residual " + fmt(resid) + " at target " + fmt(y) +
                       " after " + std::to_string(iters) + " iterations");
  }
  return w;
}

double log_step_antiderivative(double u) {
  // antiderivative of ln(u / (u + 1))
  return (u > 0.0 ? u * std::log(u) : 0.0) - (u + 1.0) * std::log1p(u);
}

double top_edge(const SpectralMeasure& mu) { return measures::support_edges(mu).second; }

// Bisection on Kronrod panels against an absolute budget: the integrand can
// be close to zero everywhere, where a relative target never converges.
double integrate(const std::function<double(double)>& f, double a, double b) {
  if (b <= a) return 0.0;
  const double budget = kQuadTol * std::max(1.0, b - a);
  double total = 0.0;
  double total_err = 0.0;
  std::vector<std::tuple<double, double, unsigned>> stack{{a, b, 0u}};
  while (!stack.empty()) {
    const auto [lo, hi, depth] = stack.back();
    stack.pop_back();
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, lo, hi, 0, 0.0, &err);
    const double local = std::max(budget * (hi - lo) / (b - a), 1e-15 * std::fabs(v));
    if (err <= local || depth >= kQuadDepth) {
      total += v;
      total_err += err;
      continue;
    }
    const double mid = 0.5 * (lo + hi);
    stack.emplace_back(mid, hi, depth + 1);
    stack.emplace_back(lo, mid, depth + 1);
  }
  if (!(total_err <= kQuadAbsTol)) {
    throw NumericError("rate quadrature on [" + fmt(a) + ", " + fmt(b) + "] error estimate " + fmt(total_err));
  }
  return total;
}

// Free cumulants kappa_1..3, the Taylor coefficients of R at 0.
std::array<double, 3> free_cumulants(const SpectralMeasure& mu) {
  const auto m = measures::moments(mu, 3);
  return {m[0], m[1] - m[0] * m[0], m[2] - 3.0 * m[0] * m[1] + 2.0 * m[0] * m[0] * m[0]};
}

double r_integrand(const SpectralMeasure& mu, double u, const InversionConfig& cfg,
                   const std::array<double, 3>& kappa) {
  // G^{-1}(u) ~ 1/u swamps R for tiny u; the cumulant series is exact to O(u^3)
  if (u * top_edge(mu) < 1e-4 || u == 0.0) return kappa[0] + u * (kappa[1] + u * kappa[2]);
  return r_transform(mu, u, cfg);
}

double integrate_hs(const SpectralMeasure& mu, double z0, double z1, const InversionConfig& cfg) {
  const double edge = top_edge(mu);
  if (!(edge > 0.0)) throw DomainError("h_s: measure concentrated at 0 has no S-transform");
  // point mass: S is constant and the integrand is pure rounding noise
  if (measures::support_edges(mu).first == edge) return (z1 - z0) * std::log(edge);
  const double zstar = measures::t_limit_at_edge(mu);
  double total = 0.0;
  const double a = std::min(z0, zstar);
  const double b = std::min(z1, zstar);
  total += integrate([&](double u) { return log_s_tilde(mu, u, cfg); }, a, b);
  const double c = std::max(z0, zstar);
  if (z1 > c) {
    total += (z1 - c) * std::log(edge) + log_step_antiderivative(z1) - log_step_antiderivative(c);
  }
  return total;
}

double integrate_hr(const SpectralMeasure& mu, double z0, double z1, const InversionConfig& cfg) {
  const double edge = top_edge(mu);
  if (measures::support_edges(mu).first == edge) return edge * (z1 - z0);
  const double zstar = measures::g_limit_at_edge(mu);
  const auto kappa = free_cumulants(mu);
  double total = 0.0;
  const double a = std::min(z0, zstar);
  const double b = std::min(z1, zstar);
  total += integrate([&](double u) { return r_integrand(mu, u, cfg, kappa); }, a, b);
  const double c = std::max(z0, zstar);
  if (z1 > c) total += edge * (z1 - c) - std::log(z1 / c);
  return total;
}

void require_nonnegative(double z, const char* what) {
  if (!(z >= 0.0) || !std::isfinite(z)) {
    throw DomainError(std::string(what) + ": z = " + fmt(z) + " must be finite and >= 0");
  }
}

}  // namespace

void InversionConfig::validate() const {
  if (!(abs_tol > 0.0)) throw DomainError("InversionConfig: abs_tol must be positive");
  if (max_iter < 8) throw DomainError("InversionConfig: max_iter must be >= 8");
  if (!(bracket_growth > 1.0)) throw DomainError("InversionConfig: bracket_growth must exceed 1");
}

double inverse_t(const SpectralMeasure& mu, double y, const InversionConfig& cfg) {
  cfg.validate();
  const double limit = measures::t_limit_at_edge(mu);
  if (!(y > 0.0) || !(y < limit)) {
    throw DomainError("inverse_t: target " + fmt(y) + " outside (0, " + fmt(limit) + ")");
  }
  return solve_decreasing([&](double w) { return measures::t_transform(mu, w); }, top_edge(mu), y,
                          cfg, "inverse_t");
}

double inverse_g(const SpectralMeasure& mu, double y, const InversionConfig& cfg) {
  cfg.validate();
  const double limit = measures::g_limit_at_edge(mu);
  if (!(y > 0.0) || !(y < limit)) {
    throw DomainError("inverse_g: target " + fmt(y) + " outside (0, " + fmt(limit) + ")");
  }
  return solve_decreasing([&](double w) { return measures::stieltjes(mu, w); }, top_edge(mu), y,
                          cfg, "inverse_g");
}

double s_tilde(const SpectralMeasure& mu, double z, const InversionConfig& cfg) {
  return z / (z + 1.0) * inverse_t(mu, z, cfg);
}

double log_s_tilde(const SpectralMeasure& mu, double z, const InversionConfig& cfg) {
  if (z == 0.0) return std::log(measures::moments(mu, 1)[0]);
  return std::log(s_tilde(mu, z, cfg));
}

double r_transform(const SpectralMeasure& mu, double z, const InversionConfig& cfg) {
  return inverse_g(mu, z, cfg) - 1.0 / z;
}

double h_s(const SpectralMeasure& mu, double z, const InversionConfig& cfg) {
  require_nonnegative(z, "h_s");
  return integrate_hs(mu, 0.0, z, cfg);
}

double h_r(const SpectralMeasure& mu, double z, const InversionConfig& cfg) {
  require_nonnegative(z, "h_r");
  return integrate_hr(mu, 0.0, z, cfg);
}

RateCurve rate_curve(const SpectralMeasure& mu, RateKind kind, std::vector<double> grid,
                     const InversionConfig& cfg) {
  if (grid.empty() || grid.front() != 0.0) throw DomainError("rate_curve: grid must start at 0");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw DomainError("rate_curve: grid must be increasing");
  }
  RateCurve curve;
  curve.kind = kind;
  curve.regime_boundary =
      kind == RateKind::hs ? measures::t_limit_at_edge(mu) : measures::g_limit_at_edge(mu);
  curve.values.assign(grid.size(), 0.0);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double piece = kind == RateKind::hs ? integrate_hs(mu, grid[i - 1], grid[i], cfg)
                                              : integrate_hr(mu, grid[i - 1], grid[i], cfg);
    curve.values[i] = curve.values[i - 1] + piece;
  }
  curve.grid = std::move(grid);
  return curve;
}

SeriesCoefficients h_s_series(const MomentVector& m) {
  if (m.size() < 3 || !(m[0] > 0.0)) throw DomainError("h_s_series: need three moments with m1 > 0");
  const double m1 = m[0];
  const double m2 = m[1];
  const double m3 = m[2];
  SeriesCoefficients c;
  c.c1 = std::log(m1);
  c.c2 = (m2 / (m1 * m1) - 1.0) / 2.0;
  c.c3 = ((2.0 * m3 * m1 - 3.0 * m2 * m2) / (m1 * m1 * m1 * m1) + 1.0) / 6.0;
  return c;
}

double h_s_uniform_closed_form(double z) {
  require_nonnegative(z, "h_s_uniform_closed_form");
  if (z == 0.0) return 0.0;
  const double zp1 = z + 1.0;
  const double w = special::lambert_w(-zp1 * std::exp(-zp1), special::LambertBranch::principal);
  return z * (std::log(2.0 * z / std::fabs(zp1 + w)) - 1.0) - std::log(std::fabs(w));
}

}  // namespace stlab::transforms
