#include "stlab/measures.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "stlab/errors.hpp"

namespace stlab::measures {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_interval(double lo, double hi, const char* what) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo < 0.0 || !(hi > lo)) {
    std::ostringstream os;
    os << what << ": need 0 <= lo < hi, got [" << lo << ", " << hi << "]";
    throw DomainError(os.str());
  }
}

// k-th moment of lo + L s with s distributed on [0,1] with moment sequence
// unit_moment(j). All terms are nonnegative.
template <class UnitMoment>
double shifted_moment(double lo, double len, int k, UnitMoment unit_moment) {
  double sum = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= k; ++j) {
    sum += binom * std::pow(lo, k - j) * std::pow(len, j) * unit_moment(j);
    binom = binom * (k - j) / (j + 1);
  }
  return sum;
}

double continuous_moment(const SpectralMeasure::Variant& v, int k) {
  if (const auto* u = std::get_if<UniformInterval>(&v)) {
    return shifted_moment(u->lo, u->hi - u->lo, k, [](int j) { return 1.0 / (j + 1); });
  }
  const auto& t = std::get<LinearTaper>(v);
  return shifted_moment(t.lo, t.hi - t.lo, k,
                        [](int j) { return 2.0 / ((j + 1.0) * (j + 2.0)); });
}

// Laurent expansion at infinity, used where the closed forms cancel.
// Returns sum_{k>=first} m_k w^{-k}; converges geometrically for w >= 4 a_max.
double moment_series(const SpectralMeasure::Variant& v, double w, int first) {
  double sum = first == 0 ? 1.0 : 0.0;
  for (int k = 1; k < 200; ++k) {
    const double term = continuous_moment(v, k) * std::pow(w, -k);
    if (k >= first) sum += term;
    if (term <= 1e-18 * sum) break;
  }
  return sum;
}

void require_above_support(const SpectralMeasure& mu, double w, const char* what) {
  const double top = support_edges(mu).second;
  if (!(w > top) || !std::isfinite(w)) {
    std::ostringstream os;
    os.precision(17);
    os << what << ": w = " << w << " must lie strictly above the support edge " << top;
    throw DomainError(os.str());
  }
}

}  // namespace

SpectralMeasure SpectralMeasure::empirical(std::vector<double> eigenvalues) {
  if (eigenvalues.empty()) throw DomainError("empirical measure: no eigenvalues");
  for (double x : eigenvalues) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw DomainError("empirical measure: eigenvalues must be positive and finite");
    }
  }
  std::sort(eigenvalues.begin(), eigenvalues.end(), std::greater<>());
  return SpectralMeasure(Empirical{std::move(eigenvalues)});
}

SpectralMeasure SpectralMeasure::uniform(double lo, double hi) {
  check_interval(lo, hi, "uniform measure");
  return SpectralMeasure(UniformInterval{lo, hi});
}

SpectralMeasure SpectralMeasure::linear_taper(double lo, double hi) {
  check_interval(lo, hi, "linear taper measure");
  return SpectralMeasure(LinearTaper{lo, hi});
}

SpectralMeasure SpectralMeasure::atomic(std::vector<double> atoms, std::vector<double> weights) {
  if (atoms.empty() || atoms.size() != weights.size()) {
    throw DomainError("atomic measure: atoms and weights must be nonempty and equally long");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!(atoms[i] >= 0.0) || !std::isfinite(atoms[i])) {
      throw DomainError("atomic measure: atoms must be nonnegative and finite");
    }
    if (!(weights[i] > 0.0)) throw DomainError("atomic measure: weights must be positive");
    total += weights[i];
  }
  if (std::fabs(total - 1.0) > 1e-12) throw DomainError("atomic measure: weights must sum to 1");
  std::vector<std::size_t> order(atoms.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return atoms[a] > atoms[b]; });
  Atomic out;
  for (auto i : order) {
    out.atoms.push_back(atoms[i]);
    out.weights.push_back(weights[i]);
  }
  return SpectralMeasure(std::move(out));
}

SpectralMeasure SpectralMeasure::delta(double at) { return atomic({at}, {1.0}); }

bool SpectralMeasure::is_discrete() const {
  return std::holds_alternative<Empirical>(variant_) || std::holds_alternative<Atomic>(variant_);
}

std::string SpectralMeasure::describe() const {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const Empirical& e) { os << "empirical(N=" << e.eigenvalues.size() << ")"; },
                 [&](const UniformInterval& u) { os << "uniform[" << u.lo << "," << u.hi << "]"; },
                 [&](const LinearTaper& t) { os << "taper[" << t.lo << "," << t.hi << "]"; },
                 [&](const Atomic& a) { os << "atomic(" << a.atoms.size() << " atoms)"; },
             },
             variant_);
  return os.str();
}

MomentVector moments(const SpectralMeasure& mu, int count) {
  if (count < 1 || count > 32) throw DomainError("moments: count must be in [1, 32]");
  MomentVector m(count);
  for (int k = 1; k <= count; ++k) {
    m[k - 1] = std::visit(
        Overloaded{
            [k](const Empirical& e) {
              double s = 0.0;
              for (double x : e.eigenvalues) s += std::pow(x, k);
              return s / static_cast<double>(e.eigenvalues.size());
            },
            [k](const Atomic& a) {
              double s = 0.0;
              for (std::size_t i = 0; i < a.atoms.size(); ++i) s += a.weights[i] * std::pow(a.atoms[i], k);
              return s;
            },
            [&](const auto&) { return continuous_moment(mu.variant(), k); },
        },
        mu.variant());
  }
  return m;
}

double stieltjes(const SpectralMeasure& mu, double w) {
  require_above_support(mu, w, "stieltjes");
  return std::visit(
      Overloaded{
          [w](const Empirical& e) {
            double s = 0.0;
            for (double x : e.eigenvalues) s += 1.0 / (w - x);
            return s / static_cast<double>(e.eigenvalues.size());
          },
          [w](const Atomic& a) {
            double s = 0.0;
            for (std::size_t i = 0; i < a.atoms.size(); ++i) s += a.weights[i] / (w - a.atoms[i]);
            return s;
          },
          [w](const UniformInterval& u) {
            const double len = u.hi - u.lo;
            return std::log1p(len / (w - u.hi)) / len;
          },
          [&](const LinearTaper& t) {
            if (w >= 4.0 * t.hi) return moment_series(mu.variant(), w, 0) / w;
            const double len = t.hi - t.lo;
            return 2.0 / (len * len) * (len + (t.hi - w) * std::log1p(len / (w - t.hi)));
          },
      },
      mu.variant());
}

double t_transform(const SpectralMeasure& mu, double w) {
  require_above_support(mu, w, "t_transform");
  return std::visit(
      Overloaded{
          [w](const Empirical& e) {
            double s = 0.0;
            for (double x : e.eigenvalues) s += x / (w - x);
            return s / static_cast<double>(e.eigenvalues.size());
          },
          [w](const Atomic& a) {
            double s = 0.0;
            for (std::size_t i = 0; i < a.atoms.size(); ++i) {
              s += a.weights[i] * a.atoms[i] / (w - a.atoms[i]);
            }
            return s;
          },
          [&](const auto& c) {
            // w G(w) - 1 cancels badly once w dominates the support
            if (w >= 4.0 * c.hi) return moment_series(mu.variant(), w, 1);
            return w * stieltjes(mu, w) - 1.0;
          },
      },
      mu.variant());
}

std::pair<double, double> support_edges(const SpectralMeasure& mu) {
  return std::visit(Overloaded{
                        [](const Empirical& e) {
                          return std::pair{e.eigenvalues.back(), e.eigenvalues.front()};
                        },
                        [](const Atomic& a) { return std::pair{a.atoms.back(), a.atoms.front()}; },
                        [](const auto& c) { return std::pair{c.lo, c.hi}; },
                    },
                    mu.variant());
}

double t_limit_at_edge(const SpectralMeasure& mu) {
  return std::visit(Overloaded{
                        [](const Empirical&) { return kInf; },
                        [](const Atomic& a) { return a.atoms.front() > 0.0 ? kInf : 0.0; },
                        [](const UniformInterval&) { return kInf; },
                        [](const LinearTaper& t) { return 2.0 * t.hi / (t.hi - t.lo) - 1.0; },
                    },
                    mu.variant());
}

double g_limit_at_edge(const SpectralMeasure& mu) {
  return std::visit(Overloaded{
                        [](const LinearTaper& t) { return 2.0 / (t.hi - t.lo); },
                        [](const auto&) { return kInf; },
                    },
                    mu.variant());
}

SpectralMeasure load_empirical(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open eigenvalue file: " + path.string());
  std::vector<double> values;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const char* begin = line.data() + first;
    const char* end = line.data() + last + 1;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) {
      throw DomainError(path.string() + ":" + std::to_string(lineno) + ": not a decimal number");
    }
    values.push_back(v);
  }
  return SpectralMeasure::empirical(std::move(values));
}

std::vector<double> discretize(const SpectralMeasure& mu, int n) {
  if (n < 1) throw DomainError("discretize: need at least one point");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    const double u = (i + 0.5) / n;  // quantile level, increasing
    out[i] = std::visit(
        Overloaded{
            [u](const UniformInterval& c) { return c.lo + u * (c.hi - c.lo); },
            [u](const LinearTaper& c) { return c.lo + (1.0 - std::sqrt(1.0 - u)) * (c.hi - c.lo); },
            [u](const Empirical& e) {
              const auto m = e.eigenvalues.size();
              auto idx = static_cast<std::size_t>(std::floor(u * static_cast<double>(m)));
              return e.eigenvalues[m - 1 - std::min(idx, m - 1)];
            },
            [u](const Atomic& a) {
              double cum = 0.0;
              for (std::size_t j = a.atoms.size(); j-- > 0;) {
                cum += a.weights[j];
                if (u < cum) return a.atoms[j];
              }
              return a.atoms.front();
            },
        },
        mu.variant());
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace stlab::measures
