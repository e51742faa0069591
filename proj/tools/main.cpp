#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stlab/csv.hpp"
#include "stlab/errors.hpp"
#include "stlab/experiments.hpp"
#include "stlab/measures.hpp"
#include "stlab/montecarlo.hpp"
#include "stlab/spherical.hpp"
#include "stlab/svg.hpp"
#include "stlab/verify.hpp"

namespace {

using namespace stlab;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

// Either a file or stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw DomainError("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot open '" + path.string() + "' for writing");
  f << text;
}

struct Settings {
  std::string measure = "uniform:0:2";
  double beta = 2.0;
  std::string z = "1";
  std::string z_grid;
  std::string n_list = "8,16,32,64,128,256,512";
  long samples = 100'000;
  std::uint64_t seed = 42;
  std::string out;
  bool svg = false;
  std::string level = "fast";
  double perturb = 1.0;
  std::string estimator = "rank-one";
  int n = 4;
};

std::vector<double> z_values(const Settings& s, const std::string& fallback) {
  return experiments::parse_real_list(!s.z_grid.empty() ? s.z_grid : fallback);
}

int cmd_transforms(const Settings& s) {
  const auto mu = experiments::parse_measure_spec(s.measure);
  const auto rows = experiments::transform_table(mu, z_values(s, s.z));
  Sink sink(s.out);
  CsvWriter csv(sink.stream(), {"z", "T_inv", "S_tilde", "ln_S_tilde", "H_S", "H_R"});
  for (const auto& r : rows) csv.row({r.z, r.t_inv, r.s_tilde, r.ln_s_tilde, r.h_s, r.h_r});
  return 0;
}

int cmd_fig1(const Settings& s) {
  const auto mu = experiments::parse_measure_spec(s.measure);
  const auto n_list = experiments::parse_int_list(s.n_list);
  const auto res = experiments::run_fig1(mu, n_list, z_values(s, "0:2:0.05"));
  const std::filesystem::path dir = s.out.empty() ? "." : s.out;
  std::filesystem::create_directories(dir);
  {
    std::ofstream f(dir / "fig1.csv");
    CsvWriter csv(f, {"N", "z", "k", "normalized_h", "H_S", "gap"});
    for (const auto& r : res.rows) csv.row({double(r.n), r.z, double(r.k), r.normalized_h, r.h_s, r.gap});
  }
  {
    std::ofstream f(dir / "fig1_inset.csv");
    CsvWriter csv(f, {"N", "inv_N", "normalized_h", "H_S", "gap"});
    for (const auto& r : res.inset) csv.row({double(r.n), 1.0 / r.n, r.normalized_h, r.h_s, r.gap});
  }
  if (s.svg) {
    PlotPanel main{"normalized h_k vs H^S", "z", "value", {}};
    PlotSeries limit{"H^S (limit)", {}, {}, true};
    for (int n : n_list) {
      PlotSeries curve{"N=" + std::to_string(n), {}, {}, false};
      for (const auto& r : res.rows) {
        if (r.n != n) continue;
        curve.x.push_back(r.z);
        curve.y.push_back(r.normalized_h);
        if (n == n_list.front()) {
          limit.x.push_back(r.z);
          limit.y.push_back(r.h_s);
        }
      }
      main.series.push_back(std::move(curve));
    }
    main.series.push_back(std::move(limit));
    PlotPanel inset{"gap at z = 1", "1/N", "gap", {}};
    PlotSeries g{"|normalized h - H^S|", {}, {}, false};
    for (const auto& r : res.inset) {
      g.x.push_back(1.0 / r.n);
      g.y.push_back(r.gap);
    }
    inset.series.push_back(std::move(g));
    write_text(dir / "fig1.svg", render_svg({main, inset}));
  }
  std::cout << "wrote " << (dir / "fig1.csv").string() << ", " << (dir / "fig1_inset.csv").string()
            << (s.svg ? ", " + (dir / "fig1.svg").string() : std::string()) << '\n';
  return 0;
}

int cmd_verify(const Settings& s) {
  verify::Options opts;
  if (s.level == "full") {
    opts.level = verify::Level::full;
  } else if (s.level != "fast") {
    throw DomainError("verify: level must be fast or full");
  }
  opts.seed = s.seed;
  opts.s_tilde_scale = s.perturb;
  Sink sink(s.out);
  bool ok = true;
  for (const auto& r : verify::run_checks(opts)) {
    sink.stream() << verify::to_json_line(r) << '\n';
    if (!r.passed) {
      ok = false;
      std::cerr << "FAILED: " << r.name << '\n';
    }
  }
  return ok ? 0 : kExitVerifyFailed;
}

int cmd_conjecture(const Settings& s) {
  if (s.beta != 2.0) throw DomainError("conjecture: only beta = 2 is supported");
  const auto z = experiments::parse_real_list(s.z);
  if (z.size() != 2) throw DomainError("conjecture: --z needs two values z1,z2");
  const auto mu = experiments::parse_measure_spec(s.measure);
  const auto rows = experiments::run_conjecture(mu, experiments::parse_int_list(s.n_list), z[0], z[1]);
  Sink sink(s.out);
  CsvWriter csv(sink.stream(), {"N", "z1", "z2", "lhs", "rhs", "gap"});
  for (const auto& r : rows) csv.row({double(r.n), r.z1, r.z2, r.lhs, r.rhs, r.gap});
  return 0;
}

int cmd_mc(const Settings& s) {
  const auto mu = experiments::parse_measure_spec(s.measure);
  const auto a = measures::discretize(mu, s.n);
  const spherical::BetaParameter beta(s.beta);
  const auto zs = z_values(s, s.z);
  Sink sink(s.out);
  CsvWriter csv(sink.stream(), {"estimator", "N", "beta", "z", "mean", "std_error", "n_samples", "reference"});
  std::uint64_t stream = 0;
  for (double z : zs) {
    montecarlo::McEstimate est;
    double reference = 0.0;
    const montecarlo::RngSpec rng{s.seed, stream++};
    if (s.estimator == "rank-one") {
      est = montecarlo::mc_rank_one(a, z, beta, s.samples, rng);
      reference = spherical::rank_one_spherical(a, z, beta).to_real();
    } else if (s.estimator == "heckman-opdam") {
      // rank-one index (-z - rho_1, -rho_2, ...) on exponents -ln a
      std::vector<double> expo(a.size());
      std::vector<double> index(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) {
        expo[i] = -std::log(a[i]);
        index[i] = -0.5 * s.beta * static_cast<double>(a.size() - 1 - i);
      }
      index[0] -= z;
      est = montecarlo::mc_heckman_opdam(expo, index, beta, s.samples, rng);
      reference = spherical::rank_one_spherical(a, z, beta).to_real();
    } else if (s.estimator == "multiplicativity") {
      if (s.beta != 2.0) throw DomainError("mc: multiplicativity needs beta = 2");
      const auto r = montecarlo::multiplicativity_check_beta2(a, a, z, s.samples, rng);
      est = r.lhs;
      reference = r.rhs;
    } else {
      throw DomainError("mc: unknown estimator '" + s.estimator + "'");
    }
    csv.row({s.estimator, std::to_string(s.n), format_number(s.beta), format_number(z), format_number(est.mean),
             format_number(est.std_error), std::to_string(est.n_samples), format_number(reference)});
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical S-transform and spherical-integral laboratory"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file; subcommand keys go under [fig1], [mc], ...");
  app.fallthrough();
  Settings s;

  auto add_measure = [&](CLI::App* c) { c->add_option("--measure", s.measure, "uniform:lo:hi, taper:lo:hi, delta:c, ones:N, points:..., atoms:x@w,..., file:path"); };
  auto add_out = [&](CLI::App* c, const char* help) { c->add_option("--out", s.out, help); };

  auto* transforms = app.add_subcommand("transforms", "T^{-1}, S~, H^S and H^R on a z grid");
  add_measure(transforms);
  transforms->add_option("--z", s.z, "comma list of z values");
  transforms->add_option("--z-grid", s.z_grid, "z grid, comma list or lo:hi:step");
  add_out(transforms, "CSV output file (default stdout)");

  auto* fig1 = app.add_subcommand("fig1", "normalized h_k against H^S across N");
  add_measure(fig1);
  fig1->add_option("--z-grid", s.z_grid, "z grid (default 0:2:0.05)");
  fig1->add_option("--n-list", s.n_list, "comma list of N");
  fig1->add_flag("--svg", s.svg, "also write fig1.svg");
  add_out(fig1, "output directory (default .)");

  auto* verify_cmd = app.add_subcommand("verify", "oracle cross-checks as JSON lines");
  verify_cmd->add_option("--level", s.level, "fast or full");
  verify_cmd->add_option("--seed", s.seed, "RNG seed");
  verify_cmd->add_option("--perturb-s-tilde", s.perturb)->group("");
  add_out(verify_cmd, "report file (default stdout)");

  auto* conjecture = app.add_subcommand("conjecture", "two-row Schur ratio against H^S(z1) + H^S(z2)");
  add_measure(conjecture);
  conjecture->add_option("--beta", s.beta, "must be 2");
  conjecture->add_option("--z", s.z, "z1,z2 (default 0.5,1)");
  conjecture->add_option("--n-list", s.n_list, "comma list of N");
  add_out(conjecture, "CSV output file (default stdout)");

  auto* mc = app.add_subcommand("mc", "Monte Carlo estimators against the contour formula");
  add_measure(mc);
  mc->add_option("--estimator", s.estimator, "rank-one, heckman-opdam or multiplicativity");
  mc->add_option("--n", s.n, "number of eigenvalues (quantile discretization)");
  mc->add_option("--beta", s.beta, "beta > 0");
  mc->add_option("--z", s.z, "comma list of z values");
  mc->add_option("--z-grid", s.z_grid, "z grid, comma list or lo:hi:step");
  mc->add_option("--samples", s.samples, "number of samples");
  mc->add_option("--seed", s.seed, "RNG seed");
  add_out(mc, "CSV output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*transforms) return cmd_transforms(s);
    if (*fig1) return cmd_fig1(s);
    if (*verify_cmd) return cmd_verify(s);
    if (*conjecture) {
      if (conjecture->count("--z") == 0) s.z = "0.5,1";
      return cmd_conjecture(s);
    }
    if (*mc) return cmd_mc(s);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitVerifyFailed;
  }
  return kExitUsage;
}
