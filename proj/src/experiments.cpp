#include "stlab/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "stlab/errors.hpp"
#include "stlab/parallel.hpp"
#include "stlab/special.hpp"
#include "stlab/spherical.hpp"
#include "stlab/sympoly.hpp"
#include "stlab/transforms.hpp"

namespace stlab::experiments {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

template <class T>
T parse_number(const std::string& text, const std::string& context) {
  T value{};
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw DomainError("cannot parse '" + text + "' in " + context);
  }
  return value;
}

}  // namespace

SpectralMeasure parse_measure_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw DomainError("measure spec '" + spec + "' has no ':'");
  const std::string kind = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);
  if (kind == "file") return measures::load_empirical(rest);
  if (kind == "uniform" || kind == "taper") {
    const auto parts = split(rest, ':');
    if (parts.size() != 2) throw DomainError("measure spec '" + spec + "' needs lo:hi");
    const double lo = parse_number<double>(parts[0], spec);
    const double hi = parse_number<double>(parts[1], spec);
    return kind == "uniform" ? SpectralMeasure::uniform(lo, hi) : SpectralMeasure::linear_taper(lo, hi);
  }
  if (kind == "delta") return SpectralMeasure::delta(parse_number<double>(rest, spec));
  if (kind == "ones") {
    const int n = parse_number<int>(rest, spec);
    if (n < 1) throw DomainError("measure spec '" + spec + "' needs N >= 1");
    return SpectralMeasure::empirical(std::vector<double>(static_cast<std::size_t>(n), 1.0));
  }
  if (kind == "points") {
    std::vector<double> pts;
    for (const auto& p : split(rest, ',')) pts.push_back(parse_number<double>(p, spec));
    return SpectralMeasure::empirical(std::move(pts));
  }
  if (kind == "atoms") {
    std::vector<double> atoms;
    std::vector<double> weights;
    for (const auto& item : split(rest, ',')) {
      const auto at = item.find('@');
      if (at == std::string::npos) throw DomainError("atom '" + item + "' needs value@weight");
      atoms.push_back(parse_number<double>(item.substr(0, at), spec));
      weights.push_back(parse_number<double>(item.substr(at + 1), spec));
    }
    return SpectralMeasure::atomic(std::move(atoms), std::move(weights));
  }
  throw DomainError("unknown measure kind '" + kind + "'");
}

std::vector<double> parse_real_list(const std::string& text) {
  const auto range = split(text, ':');
  if (range.size() == 3) {
    const double lo = parse_number<double>(range[0], text);
    const double hi = parse_number<double>(range[1], text);
    const double step = parse_number<double>(range[2], text);
    if (!(step > 0.0) || hi < lo) throw DomainError("range '" + text + "' needs lo <= hi and step > 0");
    const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    if (count > 1'000'000) throw DomainError("range '" + text + "' too long");
    std::vector<double> out;
    for (long i = 0; i <= count; ++i) out.push_back(lo + static_cast<double>(i) * step);
    return out;
  }
  std::vector<double> out;
  for (const auto& p : split(text, ',')) out.push_back(parse_number<double>(p, text));
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& p : split(text, ',')) out.push_back(parse_number<int>(p, text));
  return out;
}

std::vector<TransformRow> transform_table(const SpectralMeasure& mu, const std::vector<double>& z_grid) {
  for (double z : z_grid) {
    if (!(z >= 0.0) || !std::isfinite(z)) {
      throw DomainError("transforms: z = " + std::to_string(z) + " must be finite and >= 0");
    }
  }
  const double a_max = measures::support_edges(mu).second;
  const double zstar = measures::t_limit_at_edge(mu);
  const double m1 = measures::moments(mu, 1)[0];
  std::vector<TransformRow> rows(z_grid.size());
  parallel_for(rows.size(), [&](std::size_t i) {
    TransformRow& r = rows[i];
    const double z = z_grid[i];
    r.z = z;
    if (z == 0.0) {
      r.t_inv = std::numeric_limits<double>::infinity();
      r.s_tilde = m1;
    } else if (z >= zstar) {
      r.t_inv = a_max;
      r.s_tilde = a_max * z / (z + 1.0);
    } else {
      r.t_inv = transforms::inverse_t(mu, z);
      r.s_tilde = z / (z + 1.0) * r.t_inv;
    }
    r.ln_s_tilde = std::log(r.s_tilde);
    r.h_s = transforms::h_s(mu, z);
    r.h_r = transforms::h_r(mu, z);
  });
  return rows;
}

Fig1Result run_fig1(const SpectralMeasure& mu, const std::vector<int>& n_list,
                    const std::vector<double>& z_grid) {
  for (int n : n_list) {
    if (n < 1) throw DomainError("fig1: N must be positive");
  }
  std::vector<double> zs = z_grid;
  for (double z : zs) {
    if (!(z >= 0.0) || !std::isfinite(z)) throw DomainError("fig1: z = " + std::to_string(z) + " must be >= 0");
  }
  const bool has_one = std::find(zs.begin(), zs.end(), 1.0) != zs.end();
  if (!has_one) zs.push_back(1.0);

  std::vector<double> limit(zs.size());
  parallel_for(zs.size(), [&](std::size_t i) { limit[i] = transforms::h_s(mu, zs[i]); });

  std::vector<std::vector<Fig1Row>> per_n(n_list.size());
  parallel_for(n_list.size(), [&](std::size_t idx) {
    const int n = n_list[idx];
    const auto a = measures::discretize(mu, n);
    int kmax = 0;
    for (double z : zs) kmax = std::max(kmax, static_cast<int>(std::llround(n * z)));
    const auto lh = sympoly::complete_homogeneous_log_table(a, kmax);
    for (std::size_t i = 0; i < zs.size(); ++i) {
      Fig1Row r;
      r.n = n;
      r.z = zs[i];
      r.k = static_cast<int>(std::llround(n * zs[i]));
      r.normalized_h = (lh[r.k] - special::log_multiset_count(n, r.k)) / n;
      r.h_s = limit[i];
      r.gap = std::fabs(r.normalized_h - r.h_s);
      per_n[idx].push_back(r);
    }
  });

  Fig1Result out;
  for (const auto& rows : per_n) {
    for (const auto& r : rows) {
      if (r.z == 1.0) out.inset.push_back(r);
      if (r.z != 1.0 || has_one) out.rows.push_back(r);
    }
  }
  return out;
}

std::vector<ConjectureRow> run_conjecture(const SpectralMeasure& mu, const std::vector<int>& n_list,
                                          double z1, double z2) {
  std::vector<ConjectureRow> rows(n_list.size());
  parallel_for(rows.size(), [&](std::size_t i) {
    const auto a = measures::discretize(mu, n_list[i]);
    const auto probe = spherical::low_rank_conjecture_probe(a, z1, z2);
    rows[i] = {n_list[i], z1, z2, probe.lhs, probe.rhs, probe.lhs - probe.rhs};
  });
  return rows;
}

}  // namespace stlab::experiments
