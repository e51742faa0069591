#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace stlab::measures {

/// Finite list of eigenvalues, each carrying mass 1/N.
struct Empirical {
  std::vector<double> eigenvalues;  // strictly positive, nonincreasing
};

/// Uniform density on [lo, hi].
struct UniformInterval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Density 2 (hi - x) / (hi - lo)^2 on [lo, hi]. It vanishes linearly at the
/// top edge, so the T-transform stays finite there.
struct LinearTaper {
  double lo = 0.0;
  double hi = 1.0;
};

/// Finitely many atoms with positive weights summing to one.
struct Atomic {
  std::vector<double> atoms;  // nonnegative, nonincreasing
  std::vector<double> weights;
};

/// Probability measure on [0, inf) with compact support.
///
/// Constructed only through the named factories, which validate and
/// canonicalize their input. Immutable afterwards.
class SpectralMeasure {
 public:
  using Variant = std::variant<Empirical, UniformInterval, LinearTaper, Atomic>;

  static SpectralMeasure empirical(std::vector<double> eigenvalues);
  static SpectralMeasure uniform(double lo, double hi);
  static SpectralMeasure linear_taper(double lo, double hi);
  static SpectralMeasure atomic(std::vector<double> atoms, std::vector<double> weights);
  static SpectralMeasure delta(double at);

  const Variant& variant() const { return variant_; }
  bool is_discrete() const;
  std::string describe() const;

 private:
  explicit SpectralMeasure(Variant v) : variant_(std::move(v)) {}
  Variant variant_;
};

using MomentVector = std::vector<double>;  // m[0] holds the first moment

MomentVector moments(const SpectralMeasure& mu, int count);

/// Stieltjes transform G(w) = int mu(dx) / (w - x), for w above the support.
double stieltjes(const SpectralMeasure& mu, double w);

/// T(w) = w G(w) - 1 = int x / (w - x) mu(dx).
double t_transform(const SpectralMeasure& mu, double w);

/// (min, max) of the support.
std::pair<double, double> support_edges(const SpectralMeasure& mu);

/// lim T(w) as w decreases to the top edge; +inf when mass sits at the edge.
double t_limit_at_edge(const SpectralMeasure& mu);

/// lim G(w) as w decreases to the top edge.
double g_limit_at_edge(const SpectralMeasure& mu);

/// One eigenvalue per line; blank lines and '#' comments are skipped.
SpectralMeasure load_empirical(const std::filesystem::path& path);

/// N quantile midpoints of mu, nonincreasing. For a uniform interval these
/// are (2i - 1)/(2N) of the way across; they never hit an endpoint.
std::vector<double> discretize(const SpectralMeasure& mu, int n);

}  // namespace stlab::measures
