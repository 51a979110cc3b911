// dlab: command-line front end for the weights / kernels / embedding /
// sampling / tauberian experiments. Exit codes: 0 ok, 1 compute error, 2 usage.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "dlab/dlab.hpp"
#include "dlab/io.hpp"

namespace {

using dlab::io::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct WeightOptions {
  std::string name;
  std::uint64_t N = 1000;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> gamma;

  void attach(CLI::App* sub) {
    sub->add_option("--name", name, "catalog weight name (required unless given in the config)");
    sub->add_option("--N", N, "truncation N")->check(CLI::PositiveNumber);
    sub->add_option("--alpha", alpha, "parameter alpha (mccarthy_log, inv_divisor_pow)");
    sub->add_option("--beta", beta, "parameter beta (bergman)");
    sub->add_option("--gamma", gamma, "parameter gamma (dgamma, besov_sobolev)");
  }

  [[nodiscard]] dlab::Params params() const {
    dlab::Params p;
    if (alpha) p["alpha"] = *alpha;
    if (beta) p["beta"] = *beta;
    if (gamma) p["gamma"] = *gamma;
    return p;
  }

  [[nodiscard]] dlab::WeightSequence build() const {
    if (name.empty()) throw UsageError("missing required option --name");
    const auto names = dlab::catalog_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) throw UsageError("unknown weight name '" + name + "'");
    const dlab::SieveTable table = dlab::build_sieve(std::max<std::uint64_t>(N, 2));
    return dlab::catalog(name, params(), N, table);
  }
};

json params_json(const dlab::WeightSequence& w) {
  json p = json::object();
  for (const auto& [k, v] : w.params()) p[k] = v;
  json j{{"name", w.name()}, {"params", p}, {"N", w.limit()}, {"sigma0", w.sigma0()}};
  j["expected_alpha"] = w.expected_alpha() ? json(*w.expected_alpha()) : json(nullptr);
  return j;
}

json complex_json(dlab::cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

std::string svg_curve(double amin, double amax, int points) {
  // Plot box in data coordinates: x in [amin, amax], y in [ylo, yhi].
  std::vector<double> xs;
  std::vector<double> ys;
  double ylo = std::min(amin, 1.0 - std::exp2(-amin));
  double yhi = std::max(amax, 1.0);
  for (int i = 0; i < points; ++i) {
    const double a = amin + (amax - amin) * i / (points - 1);
    xs.push_back(a);
    ys.push_back(1.0 - std::exp2(-a));
  }
  ylo = std::min(ylo, *std::min_element(ys.begin(), ys.end()));
  const double W = 640;
  const double H = 480;
  const double m = 40;
  auto px = [&](double x) { return m + (x - amin) / (amax - amin) * (W - 2 * m); };
  auto py = [&](double y) { return H - m - (y - ylo) / (yhi - ylo) * (H - 2 * m); };
  using dlab::io::format_double;
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" viewBox=\"0 0 640 480\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"white\"/>\n";
  s += "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ' ';
    s += format_double(px(xs[i])) + "," + format_double(py(ys[i]));
  }
  s += "\"/>\n";
  const double ia = std::max(amin, ylo);
  const double ib = std::min(amax, yhi);
  s += "<line x1=\"" + format_double(px(ia)) + "\" y1=\"" + format_double(py(ia)) + "\" x2=\"" + format_double(px(ib)) +
       "\" y2=\"" + format_double(py(ib)) + "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  for (double a : {-1.0, 0.0}) {
    if (a < amin || a > amax) continue;
    s += "<circle cx=\"" + format_double(px(a)) + "\" cy=\"" + format_double(py(a)) + "\" r=\"4\" fill=\"red\"/>\n";
  }
  s += "<text x=\"" + format_double(m) + "\" y=\"20\" font-family=\"sans-serif\" font-size=\"12\">1 - 2^(-alpha) against alpha</text>\n";
  s += "</svg>\n";
  return s;
}

std::optional<std::string> find_config(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") return std::string(argv[i + 1]);
  }
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a.rfind("--config=", 0) == 0) return a.substr(9);
  }
  return std::nullopt;
}

// Fill options that were not given on the command line from the config file.
void apply_config(CLI::App* sub, const json& cfg) {
  for (CLI::Option* opt : sub->get_options()) {
    if (opt->count() > 0) continue;
    const std::string key = opt->get_single_name();
    if (key.empty() || key == "help" || key == "config" || !cfg.contains(key)) continue;
    const json& v = cfg.at(key);
    auto as_string = [](const json& x) {
      if (x.is_string()) return x.get<std::string>();
      if (x.is_boolean()) return std::string(x.get<bool>() ? "true" : "false");
      return x.dump();
    };
    if (v.is_array()) {
      for (const auto& x : v) opt->add_result(as_string(x));
    } else {
      opt->add_result(as_string(v));
    }
    opt->run_callback();
  }
}

std::vector<double> grid_or_default(const std::vector<double>& grid, double lo, double hi) {
  return grid.empty() ? dlab::default_grid(lo, hi) : grid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dlab: Dirichlet-series weight laboratory"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file; command-line flags take precedence");
  std::string outdir = ".";
  app.add_option("--outdir", outdir, "directory for default output paths");

  // weights
  WeightOptions wo_weights;
  std::string weights_out;
  std::string sums_out;
  auto* c_weights = app.add_subcommand("weights", "write the weight sequence and its partial sums as CSV");
  wo_weights.attach(c_weights);
  c_weights->add_option("--out", weights_out, "weights CSV (n, w)");
  c_weights->add_option("--sums-out", sums_out, "partial-sum CSV (n, S)");

  // sums
  WeightOptions wo_sums;
  std::vector<double> sums_grid;
  std::vector<double> sums_sigma;
  std::optional<double> sums_ratio_alpha;
  std::string sums_csv;
  std::string sums_json;
  auto* c_sums = app.add_subcommand("sums", "Chebyshev ratios on a grid and weighted zeta sums");
  wo_sums.attach(c_sums);
  c_sums->add_option("--grid", sums_grid, "evaluation points x (default 10^{3+j/4} up to N)");
  c_sums->add_option("--ratio-alpha", sums_ratio_alpha, "exponent in S(x)(log x)^a/x (default: expected)");
  c_sums->add_option("--sigma", sums_sigma, "points sigma for sum w_n n^{-2 sigma}");
  c_sums->add_option("--csv", sums_csv, "CSV (x, S, ratio)");
  c_sums->add_option("--out", sums_json, "JSON report");

  // fit
  WeightOptions wo_fit;
  std::vector<double> fit_grid;
  double fit_lo = 1e3;
  std::optional<double> fit_hi;
  std::string fit_out;
  std::string fit_csv;
  auto* c_fit = app.add_subcommand("fit", "least-squares Chebyshev exponent");
  wo_fit.attach(c_fit);
  c_fit->add_option("--grid", fit_grid, "explicit x grid");
  c_fit->add_option("--grid-lo", fit_lo, "lower end of the default grid");
  c_fit->add_option("--grid-hi", fit_hi, "upper end of the default grid (default N)");
  c_fit->add_option("--out", fit_out, "AsymptoticFit JSON");
  c_fit->add_option("--csv", fit_csv, "CSV (x, S, ratio)");

  // zeta
  double z_sigma = 2.0;
  double z_t = 0.0;
  std::string z_function = "zeta";
  std::string z_out;
  auto* c_zeta = app.add_subcommand("zeta", "zeta, prime zeta, log zeta, or an abscissa");
  c_zeta->add_option("--sigma", z_sigma, "Re s");
  c_zeta->add_option("--t", z_t, "Im s");
  c_zeta->add_option("--function", z_function, "zeta | prime_zeta | log_zeta | abscissa_prime_zeta | abscissa_zeta_two")
      ->check(CLI::IsMember({"zeta", "prime_zeta", "log_zeta", "abscissa_prime_zeta", "abscissa_zeta_two"}));
  c_zeta->add_option("--out", z_out, "JSON output");

  // kernel
  std::string k_family = "dalpha";
  double k_param = 0.0;
  double k_xi_sigma = 1.0;
  double k_xi_t = 0.0;
  double k_sigma = 1.0;
  double k_t = 0.0;
  std::string k_out;
  auto* c_kernel = app.add_subcommand("kernel", "evaluate a reproducing kernel");
  c_kernel->add_option("--family", k_family, "dalpha | zeta_power | log_zeta | mccarthy_pick | besov");
  c_kernel->add_option("--param", k_param, "alpha or gamma");
  c_kernel->add_option("--xi-sigma", k_xi_sigma, "anchor Re");
  c_kernel->add_option("--xi-t", k_xi_t, "anchor Im");
  c_kernel->add_option("--sigma", k_sigma, "Re s");
  c_kernel->add_option("--t", k_t, "Im s");
  c_kernel->add_option("--out", k_out, "JSON output");

  // embed
  WeightOptions wo_embed;
  double e_alpha = 0.0;
  double e_a = 0.0;
  double e_b = 1.0;
  double e_cap = 1.0;
  int e_random = 8;
  std::uint64_t e_seed = 1;
  std::vector<std::uint64_t> e_Ns;
  bool e_extended = false;
  std::string e_out;
  std::string e_csv;
  auto* c_embed = app.add_subcommand("embed", "empirical local embedding constant");
  wo_embed.attach(c_embed);
  c_embed->add_option("--embed-alpha", e_alpha, "the D_alpha index");
  c_embed->add_option("--a", e_a, "left end of I");
  c_embed->add_option("--b", e_b, "right end of I");
  c_embed->add_option("--sigma-cap", e_cap, "upper sigma of Omega_I");
  c_embed->add_option("--random", e_random, "random family size per N")->check(CLI::NonNegativeNumber);
  c_embed->add_option("--seed", e_seed, "random seed");
  c_embed->add_option("--N-list", e_Ns, "truncations to sweep (default: N)");
  c_embed->add_flag("--extended", e_extended, "admit 1 < alpha < 2 (derivative form)");
  c_embed->add_option("--out", e_out, "JSON report");
  c_embed->add_option("--csv", e_csv, "CSV (N, alpha, constant_estimate)");

  // sampling
  WeightOptions wo_samp;
  int s_kadec = 0;
  double s_beta = 0.0;
  double s_r = 1.0;
  double s_delta = 0.5;
  double s_eps = 0.1;
  std::vector<double> s_rlist;
  std::optional<double> s_xi_max;
  bool s_symmetric = false;
  std::string s_out;
  std::string s_csv;
  auto* c_samp = app.add_subcommand("sampling", "Carleson, Lambda sets, Beurling density, continuity at infinity");
  wo_samp.attach(c_samp);
  c_samp->add_option("--kadec", s_kadec, "use the Kadec measure with K blocks instead of --name");
  c_samp->add_option("--measure-beta", s_beta, "exponent beta of the weight (1 + x^2)^beta on the measure side");
  c_samp->add_option("--r", s_r, "block length for Lambda sets");
  c_samp->add_option("--delta", s_delta, "Lambda-set threshold");
  c_samp->add_option("--eps", s_eps, "continuity threshold");
  c_samp->add_option("--r-list", s_rlist, "window lengths for the density report");
  c_samp->add_option("--xi-max", s_xi_max, "largest xi of the Carleson scan (default horizon - 1)");
  c_samp->add_flag("--symmetric", s_symmetric, "atoms at +-log n");
  c_samp->add_option("--out", s_out, "JSON report");
  c_samp->add_option("--csv", s_csv, "atom CSV (position, mass)");

  // tauberian
  WeightOptions wo_tau;
  std::optional<double> t_sigma0;
  std::string t_out;
  std::string t_csv;
  auto* c_tau = app.add_subcommand("tauberian", "singularity fit and partial-sum prediction");
  wo_tau.attach(c_tau);
  c_tau->add_option("--sigma0", t_sigma0, "abscissa (default: catalog value)");
  c_tau->add_option("--out", t_out, "SingularityFit JSON");
  c_tau->add_option("--csv", t_csv, "comparison CSV");

  // curves
  double cv_min = -3.0;
  double cv_max = 6.0;
  int cv_points = 181;
  std::string cv_svg;
  std::string cv_csv;
  auto* c_curves = app.add_subcommand("curves", "smoothness map alpha -> 1 - 2^{-alpha} against the identity");
  c_curves->add_option("--alpha-min", cv_min, "left end");
  c_curves->add_option("--alpha-max", cv_max, "right end");
  c_curves->add_option("--points", cv_points, "samples")->check(CLI::Range(2, 100000));
  c_curves->add_option("--svg", cv_svg, "SVG output");
  c_curves->add_option("--csv", cv_csv, "CSV output");

  // A command given only in the config file is spliced into argv.
  std::vector<std::string> args(argv, argv + argc);
  json cfg = json::object();
  try {
    if (auto path = find_config(argc, argv)) {
      std::ifstream in(*path);
      if (!in) throw UsageError("cannot read config " + *path);
      cfg = json::parse(in);
      if (!cfg.is_object()) throw UsageError("config must be a JSON object");
      bool has_command = false;
      for (int i = 1; i < argc; ++i) {
        for (const auto* sub : app.get_subcommands({})) has_command = has_command || sub->get_name() == argv[i];
      }
      if (!has_command && cfg.contains("command")) args.insert(args.begin() + 1, cfg.at("command").get<std::string>());
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::vector<char*> cargs;
  for (auto& a : args) cargs.push_back(a.data());

  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  auto path_or = [&](const std::string& given, const std::string& fallback) {
    return given.empty() ? (std::filesystem::path(outdir) / fallback).string() : given;
  };

  try {
    if (!cfg.empty()) apply_config(sub, cfg);
    if (!cfg.empty() && cfg.contains("outdir") && app.get_option("--outdir")->count() == 0) {
      outdir = cfg.at("outdir").get<std::string>();
    }

    if (sub == c_weights) {
      const auto w = wo_weights.build();
      dlab::io::CsvWriter cw({"n", "w"});
      dlab::io::CsvWriter cs({"n", "S"});
      for (std::uint64_t n = 1; n <= w.limit(); ++n) {
        cw.row({static_cast<double>(n), w[n]});
        cs.row({static_cast<double>(n), w.sums()[n]});
      }
      const std::string out = path_or(weights_out, "weights.csv");
      cw.save(out);
      cs.save(sums_out.empty() ? std::filesystem::path(out).replace_extension().string() + "_sums.csv" : sums_out);
    } else if (sub == c_sums) {
      const auto w = wo_sums.build();
      const double a = sums_ratio_alpha ? *sums_ratio_alpha : w.expected_alpha().value_or(0.0);
      const auto grid = grid_or_default(sums_grid, 1e3, static_cast<double>(w.limit()));
      if (grid.empty()) throw UsageError("empty grid (N below 1000? pass --grid)");
      const auto ratios = dlab::chebyshev_ratios(w, a, grid);
      dlab::io::CsvWriter c({"x", "S", "ratio"});
      for (std::size_t i = 0; i < grid.size(); ++i) c.row({grid[i], w.sum_upto(grid[i]), ratios[i]});
      c.save(path_or(sums_csv, "sums.csv"));
      json rep{{"weights", params_json(w)}, {"ratio_alpha", a}, {"weighted_zeta", json::array()}};
      if (!sums_sigma.empty()) {
        const auto model = dlab::fit_tail_model(w);
        for (double s : sums_sigma) {
          const auto t = dlab::weighted_zeta(w, s, model);
          rep["weighted_zeta"].push_back(
              {{"sigma", s}, {"partial", t.partial}, {"tail", t.tail}, {"tail_bound", t.tail_bound}, {"value", t.total()}});
        }
      }
      dlab::io::write_atomic(path_or(sums_json, "sums.json"), dlab::io::dump(rep));
    } else if (sub == c_fit) {
      const auto w = wo_fit.build();
      const auto grid = grid_or_default(fit_grid, fit_lo, fit_hi.value_or(static_cast<double>(w.limit())));
      const auto fit = dlab::fit_alpha(w, grid);
      const auto ratios = dlab::chebyshev_ratios(w, fit.alpha_hat, grid);
      json j = dlab::io::to_json(fit);
      j["weights"] = params_json(w);
      j["ratios"] = ratios;
      dlab::io::write_atomic(path_or(fit_out, "fit.json"), dlab::io::dump(j));
      dlab::io::CsvWriter c({"x", "S", "ratio"});
      for (std::size_t i = 0; i < grid.size(); ++i) c.row({grid[i], w.sum_upto(grid[i]), ratios[i]});
      c.save(path_or(fit_csv, "fit.csv"));
    } else if (sub == c_zeta) {
      json j{{"function", z_function}, {"s", {{"sigma", z_sigma}, {"t", z_t}}}};
      const dlab::ComplexPoint s{z_sigma, z_t};
      if (z_function == "zeta") {
        j["value"] = complex_json(dlab::zeta(s));
        j["tail_bound"] = 0.0;
      } else if (z_function == "log_zeta") {
        j["value"] = complex_json(dlab::log_zeta(s));
        j["tail_bound"] = 0.0;
      } else if (z_function == "prime_zeta") {
        const auto v = dlab::prime_zeta_series(s);
        j["value"] = complex_json(v.value);
        j["tail_bound"] = v.tail_bound;
      } else {
        const auto eq = z_function == "abscissa_prime_zeta" ? dlab::AbscissaEquation::PrimeZetaEqualsOne
                                                             : dlab::AbscissaEquation::ZetaEqualsTwo;
        const double r = dlab::solve_abscissa(eq);
        const double res = eq == dlab::AbscissaEquation::PrimeZetaEqualsOne ? dlab::prime_zeta(r) - 1.0 : dlab::zeta(r) - 2.0;
        j["s"] = {{"sigma", r}, {"t", 0.0}};
        j["value"] = complex_json({r, 0.0});
        j["tail_bound"] = std::abs(res);
      }
      dlab::io::write_atomic(path_or(z_out, "zeta.json"), dlab::io::dump(j));
    } else if (sub == c_kernel) {
      dlab::KernelSpec spec;
      try {
        spec.family = dlab::kernel_family_from_string(k_family);
      } catch (const dlab::Error& e) {
        throw UsageError(e.what());
      }
      spec.parameter = k_param;
      spec.anchor = {k_xi_sigma, k_xi_t};
      const auto v = dlab::kernel_eval(spec, {k_sigma, k_t});
      json j{{"family", k_family},
             {"parameter", k_param},
             {"xi", {{"sigma", k_xi_sigma}, {"t", k_xi_t}}},
             {"s", {{"sigma", k_sigma}, {"t", k_t}}},
             {"value", complex_json(v)},
             {"tail_bound", 0.0}};
      dlab::io::write_atomic(path_or(k_out, "kernel.json"), dlab::io::dump(j));
    } else if (sub == c_embed) {
      std::vector<std::uint64_t> Ns = e_Ns.empty() ? std::vector<std::uint64_t>{wo_embed.N} : e_Ns;
      WeightOptions wo = wo_embed;
      wo.N = *std::max_element(Ns.begin(), Ns.end());
      const auto w = wo.build();
      const dlab::LocalWindow win(e_a, e_b, e_cap);
      dlab::QuadratureOptions q;
      q.extended_range = e_extended;
      json runs = json::array();
      dlab::io::CsvWriter c({"N", "alpha", "constant_estimate"});
      for (std::uint64_t N : Ns) {
        auto fam = dlab::block_family(w, N);
        const std::size_t blocks = fam.size();
        auto rnd = dlab::random_family(w, N, e_random, e_seed);
        fam.insert(fam.end(), rnd.begin(), rnd.end());
        if (fam.empty()) throw dlab::DomainError("embed: empty test family");
        const auto est = dlab::embedding_constant(w, e_alpha, win, fam, q);
        json r = dlab::io::to_json(est);
        r["N"] = N;
        r["block_functions"] = blocks;
        runs.push_back(r);
        c.row({static_cast<double>(N), e_alpha, est.constant});
      }
      json j{{"weights", params_json(w)},
             {"alpha", e_alpha},
             {"window", {{"a", e_a}, {"b", e_b}, {"sigma_cap", e_cap}}},
             {"seed", e_seed},
             {"random_per_N", e_random},
             {"runs", runs}};
      dlab::io::write_atomic(path_or(e_out, "embed.json"), dlab::io::dump(j));
      c.save(path_or(e_csv, "embed.csv"));
    } else if (sub == c_samp) {
      dlab::AtomicMeasure nu;
      json src;
      double max_offset = 0.0;
      if (s_kadec > 0) {
        nu = dlab::kadec_measure(s_kadec);
        src = {{"kadec_blocks", s_kadec}};
        for (std::size_t i = 0; i < nu.atoms().size(); ++i) {
          max_offset = std::max(max_offset, std::abs(nu.atoms()[i].position - static_cast<double>(i + 1)));
        }
      } else {
        if (wo_samp.name.empty()) throw UsageError("sampling needs --name or --kadec");
        nu = dlab::measure_from_weights(wo_samp.build(), s_symmetric);
        src = {{"weights", wo_samp.name}, {"N", wo_samp.N}};
      }
      const double horizon = nu.domain_bound();
      const double xmax = s_xi_max.value_or(horizon - 1.0);
      const auto grid = dlab::xi_grid(std::max(0.0, nu.lower_bound()), xmax, 1.0 / 16.0);
      const auto car = dlab::carleson_check(nu, s_beta, grid);
      const auto lam = dlab::lambda_set(nu, s_beta, s_r, s_delta);
      std::vector<double> pts;
      for (const auto& a : nu.atoms()) {
        if (a.position >= 0.0) pts.push_back(a.position);
      }
      std::vector<double> rl = s_rlist;
      if (rl.empty()) {
        for (double r : {1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0}) {
          if (r <= horizon / 5.0) rl.push_back(r);
        }
      }
      const auto dens = dlab::beurling_lower_density(pts, rl, horizon);
      const auto cont = dlab::continuity_at_infinity(nu, s_beta, s_eps);
      json j{{"source", src},
             {"horizon", horizon},
             {"atoms", nu.atoms().size()},
             {"carleson", {{"beta", s_beta}, {"C_hat", car.C_hat}, {"worst_xi", car.worst_xi}}},
             {"lambda_set", {{"beta", s_beta}, {"r", s_r}, {"delta", s_delta}, {"points", lam}}},
             {"density", dlab::io::to_json(dens)},
             {"continuity",
              {{"eps", s_eps}, {"success", cont.success}, {"R", cont.R}, {"h", cont.h}, {"blocking_x", cont.blocking_x}}}};
      if (s_kadec > 0) j["max_position_offset"] = max_offset;
      dlab::io::write_atomic(path_or(s_out, "sampling.json"), dlab::io::dump(j));
      dlab::io::CsvWriter c({"position", "mass"});
      for (const auto& a : nu.atoms()) c.row({a.position, a.mass});
      c.save(path_or(s_csv, "atoms.csv"));
    } else if (sub == c_tau) {
      const auto w = wo_tau.build();
      const double s0 = t_sigma0.value_or(w.sigma0());
      const auto prof = dlab::mellin_profile(w, dlab::profile_grid(s0));
      const auto fit = dlab::fit_singularity(prof, s0);
      const double N = static_cast<double>(w.limit());
      std::vector<double> xs;
      for (int j = 0; j <= 8; ++j) xs.push_back(std::floor(N / 10.0 * std::pow(10.0, j / 8.0)));
      xs.back() = N;
      const auto rows = dlab::predict_and_compare(fit, w, xs);
      json j = dlab::io::to_json(fit);
      j["weights"] = params_json(w);
      json pj = json::array();
      for (const auto& p : prof) {
        pj.push_back({{"sigma", p.sigma}, {"value", p.value}, {"tail", p.tail}, {"tail_bound", p.tail_uncertainty}});
      }
      j["profile"] = pj;
      dlab::io::write_atomic(path_or(t_out, "tauberian.json"), dlab::io::dump(j));
      dlab::io::CsvWriter c({"x", "predicted", "measured", "ratio"});
      for (const auto& r : rows) c.row({r.x, r.predicted, r.measured, r.ratio});
      c.save(path_or(t_csv, "tauberian.csv"));
    } else if (sub == c_curves) {
      if (!(std::isfinite(cv_min) && std::isfinite(cv_max) && cv_min < cv_max)) throw UsageError("need a finite alpha range");
      dlab::io::CsvWriter c({"alpha", "smoothness", "identity", "intersection"});
      for (int i = 0; i < cv_points; ++i) {
        const double a = cv_min + (cv_max - cv_min) * i / (cv_points - 1);
        const double v = 1.0 - std::exp2(-a);
        c.row({a, v, a, (a == -1.0 || a == 0.0) ? 1.0 : 0.0});
      }
      c.save(path_or(cv_csv, "curves.csv"));
      dlab::io::write_atomic(path_or(cv_svg, "curves.svg"), svg_curve(cv_min, cv_max, cv_points));
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const dlab::InvalidArgument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
