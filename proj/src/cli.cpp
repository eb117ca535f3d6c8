#include "stablevar/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <vector>

#include "stablevar/batch.hpp"
#include "stablevar/config.hpp"
#include "stablevar/estimator.hpp"
#include "stablevar/limit_law.hpp"
#include "stablevar/series_io.hpp"
#include "stablevar/verify.hpp"

namespace stablevar::cli {

namespace {

struct Flags {
  RunConfig config;
  std::string mode = "levels";
  std::string drift = "cos";
  double slice_c = 0.0;
  // options whose presence on the command line overrides a file header
  CLI::Option* n_option = nullptr;
  CLI::Option* mode_option = nullptr;
  CLI::Option* slice_option = nullptr;
  std::vector<CLI::Option*> law_options;
};

void add_law(CLI::App& app, Flags& f) {
  f.law_options.push_back(app.add_option("--alpha", f.config.alpha, "stability index alpha in (0, 2]")
                              ->capture_default_str());
  f.law_options.push_back(app.add_option("--scale", f.config.scale, "scale C > 0")->capture_default_str());
  f.law_options.push_back(app.add_option("--beta", f.config.beta, "skewness in [-1, 1]")->capture_default_str());
}

void add_grid(CLI::App& app, Flags& f) {
  SearchGrid& g = f.config.grid;
  app.add_option("--p-min", g.p_min, "smallest p of the search grid")->capture_default_str();
  app.add_option("--p-max", g.p_max, "largest p of the search grid (< 4)")->capture_default_str();
  app.add_option("--p-step", g.p_step, "p grid step")->capture_default_str();
  app.add_option("--c-min", g.c_min, "smallest C of the search grid")->capture_default_str();
  app.add_option("--c-max", g.c_max, "largest C of the search grid")->capture_default_str();
  app.add_option("--c-step", g.c_step, "C grid step")->capture_default_str();
}

void add_input(CLI::App& app, Flags& f) {
  app.add_option("--input", f.config.input, "input CSV (levels or index,value rows)")->required();
  f.n_option = app.add_option("--n", f.config.n, "points per block (default: from the file header, else 200)");
  f.mode_option = app.add_option("--mode", f.mode, "levels | increments (default: from the file header)")
                      ->check(CLI::IsMember({"levels", "increments"}));
  app.add_flag("--demean", f.config.demean, "remove each block's mean increment first");
}

// Header fields fill in block length and mode unless given on the command line.
BlockedSeries load_blocks(Flags& f) {
  const SeriesFile file = read_series(f.config.input);
  RunConfig& c = f.config;
  if (file.header) {
    const RunConfig stored = config_from_json(*file.header);
    if (f.n_option->count() == 0) c.n = stored.n;
    if (f.mode_option->count() == 0) c.mode = stored.mode;
  }
  if (f.mode_option->count() > 0) c.mode = parse_mode(f.mode);
  if (f.mode_option->count() == 0 && !file.header && file.indexed) c.mode = InputMode::increments;
  return block_split(file.values, c.n, c.mode, c.demean);
}

std::string surface_csv(const KSSurface& s) {
  std::string out = "C,p,D\n";
  for (std::size_t ip = 0; ip < s.p_grid.size(); ++ip) {
    for (std::size_t ic = 0; ic < s.c_grid.size(); ++ic) {
      out += format_double(s.c_grid[ic]) + ',' + format_double(s.p_grid[ip]) + ',' +
             format_double(s.at(ip, ic)) + '\n';
    }
  }
  return out;
}

std::string profile_csv(const std::vector<ProfileEntry>& profile) {
  std::string out = "p,alpha,best_C,D\n";
  for (const auto& e : profile) {
    out += format_double(e.p) + ',' + format_double(e.p / 2.0) + ',' + format_double(e.best_c) + ',' +
           format_double(e.d) + '\n';
  }
  return out;
}

std::string slice_csv(const std::vector<SurfacePoint>& slice) {
  const auto minima = slice_minima(slice);
  std::string out = "C,p,alpha,D,local_min\n";
  for (const auto& pt : slice) {
    const bool is_min = std::any_of(minima.begin(), minima.end(), [&](const SurfacePoint& q) { return q.p == pt.p; });
    out += format_double(pt.c) + ',' + format_double(pt.p) + ',' + format_double(pt.p / 2.0) + ',' +
           format_double(pt.d) + ',' + (is_min ? "1" : "0") + '\n';
  }
  return out;
}

std::string gnuplot_script(const std::string& surface, const std::string& profile) {
  std::ostringstream gp;
  gp << "set datafile separator ','\n"
     << "set xlabel 'C'\nset ylabel 'p'\nset zlabel 'D'\n"
     << "splot '" << surface << "' every ::1 using 1:2:3 with points palette title 'D_n(C, p)'\n"
     << "pause -1\n"
     << "set xlabel 'alpha = p/2'\nset ylabel 'min_C D'\n"
     << "plot '" << profile << "' every ::1 using 2:4 with linespoints title 'profile'\n"
     << "pause -1\n";
  return gp.str();
}

nlohmann::json point_json(const SurfacePoint& p) {
  return {{"C", p.c}, {"p", p.p}, {"alpha", p.p / 2.0}, {"D", p.d}};
}

int cmd_simulate(Flags& f, std::ostream& out) {
  RunConfig& c = f.config;
  c.command = "simulate";
  c.mode = parse_mode(f.mode);
  c.drift = f.drift;
  const StableParams params(c.alpha, c.scale, c.beta);
  if (c.n == 0 || c.m == 0 || c.fine_multiplier == 0 || !(c.horizon > 0.0)) {
    throw std::invalid_argument("n, m, fine multiplier and T must be positive");
  }
  const Drift drift = c.drift == "zero" ? Drift::zero() : Drift::cosine();
  std::vector<double> series = simulate_blocks(c.x0, drift, params, c.n, c.horizon, c.m, c.fine_multiplier, c.seed);
  if (c.mode == InputMode::increments) {
    // per-block differences; the first increment of each block starts from x0
    const std::size_t len = grid_steps(c.n, c.horizon);
    for (std::size_t i = 0; i < c.m; ++i) {
      for (std::size_t k = len; k-- > 0;) {
        const std::size_t at = i * len + k;
        series[at] -= k == 0 ? c.x0 : series[at - 1];
      }
    }
  }
  const std::string text = render_series(to_json(c), series, c.mode);
  if (c.output.empty() || c.output == "-") {
    out << text;
  } else {
    write_text(c.output, text);
    out << "wrote " << series.size() << " values (" << c.m << " blocks) to " << c.output << '\n';
  }
  return kOk;
}

int cmd_analyze(Flags& f, std::ostream& out) {
  RunConfig& c = f.config;
  c.command = "analyze";
  const BlockedSeries blocks = load_blocks(f);
  const std::vector<double> stats = block_statistics(blocks, c.p);
  const double c_prime = reference_scale(c.scale, c.p);
  std::vector<double> sorted = stats;
  std::sort(sorted.begin(), sorted.end());
  const double d = ks_distance_sorted(sorted, c_prime);
  nlohmann::json record{{"m", blocks.m()},
                        {"n", blocks.n()},
                        {"mode", mode_name(blocks.mode())},
                        {"p", c.p},
                        {"reference_C", c.scale},
                        {"reference_C_prime", c_prime},
                        {"D", d},
                        {"median", sorted[sorted.size() / 2]},
                        {"min", sorted.front()},
                        {"max", sorted.back()}};
  if (!c.output.empty()) {
    std::string csv = "block,statistic\n";
    for (std::size_t i = 0; i < stats.size(); ++i) csv += std::to_string(i) + ',' + format_double(stats[i]) + '\n';
    write_text(c.output, csv);
  }
  out << record.dump(2) << '\n';
  return kOk;
}

int cmd_estimate(Flags& f, std::ostream& out) {
  RunConfig& c = f.config;
  c.command = "estimate";
  if (f.slice_option->count() > 0) c.slice_c = f.slice_c;
  const BlockedSeries blocks = load_blocks(f);
  EstimationConfig ec;
  ec.grid = c.grid;
  const EstimationResult r = estimate(blocks, ec);

  nlohmann::json minima = nlohmann::json::array();
  for (const auto& pt : r.surface.local_minima) minima.push_back(point_json(pt));
  nlohmann::json record{{"alpha_star", r.alpha_star},
                        {"C_star", r.c_star},
                        {"p_star", r.p_star},
                        {"D_min", r.d_min},
                        {"grid_best", point_json(r.grid_best)},
                        {"tie_count", r.tie_count},
                        {"at_boundary", r.at_boundary},
                        {"m", blocks.m()},
                        {"n", blocks.n()},
                        {"mode", mode_name(blocks.mode())},
                        {"local_minima", minima},
                        {"config", to_json(c)}};

  std::vector<SurfacePoint> slice;
  if (c.slice_c) {
    slice = fixed_c_slice(blocks, c.grid, *c.slice_c);
    nlohmann::json sm = nlohmann::json::array();
    for (const auto& pt : slice_minima(slice)) sm.push_back(point_json(pt));
    record["slice"] = {{"C", *c.slice_c}, {"local_minima", sm}};
  }
  if (!c.output.empty()) {
    write_text(c.output, surface_csv(r.surface));
    write_text(c.output + ".profile.csv", profile_csv(r.profile));
    write_text(c.output + ".result.json", record.dump(2) + '\n');
    if (c.slice_c) write_text(c.output + ".slice.csv", slice_csv(slice));
    if (c.gnuplot) write_text(c.output + ".gp", gnuplot_script(c.output, c.output + ".profile.csv"));
  }
  out << record.dump(2) << '\n';
  if (c.slice_c && c.output.empty()) out << slice_csv(slice);
  return kOk;
}

int cmd_verify(Flags& f, std::ostream& out, std::ostream& err, CLI::App& app) {
  RunConfig& c = f.config;
  const auto found = find_scenario(c.scenario);
  if (!found) {
    err << "unknown scenario '" << c.scenario << "'; known:";
    for (const auto& s : scenarios()) err << ' ' << s.name;
    err << '\n';
    return kUnknownScenario;
  }
  Scenario sc = *found;
  if (app.get_option("--alpha")->count()) sc.alpha = c.alpha;
  if (app.get_option("--scale")->count()) sc.scale = c.scale;
  if (app.get_option("--beta")->count()) sc.beta = c.beta;
  if (app.get_option("--p")->count()) sc.p = c.p;
  if (app.get_option("--n")->count()) sc.n = c.n;
  if (app.get_option("--m")->count()) sc.m = c.m;
  VerifyOptions opt;
  opt.seed = c.seed;
  opt.fine_multiplier = c.fine_multiplier;
  const VerifyReport r = run_scenario(sc, opt);
  out << "scenario " << r.scenario << ": alpha=" << sc.alpha << " C=" << sc.scale << " beta=" << sc.beta
      << " p=" << sc.p << " n=" << sc.n << " m=" << sc.m << '\n'
      << "KS statistic " << format_double(r.statistic) << ", threshold " << format_double(r.threshold) << ": "
      << (r.passed ? "PASS" : "FAIL") << '\n';
  return r.passed ? kOk : kFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stable Levy p-variation toolkit: simulate, analyze, estimate, verify.\n"
               "Environment: STABLEVAR_THREADS caps the number of worker threads.",
               "stablevar"};
  app.require_subcommand(1);
  Flags f;

  CLI::App* sim = app.add_subcommand("simulate", "simulate m independent SDE blocks and write them as CSV");
  add_law(*sim, f);
  sim->add_option("--n", f.config.n, "observations per unit time (points per block)")->capture_default_str();
  sim->add_option("--m", f.config.m, "number of blocks")->capture_default_str();
  sim->add_option("--T", f.config.horizon, "block horizon")->capture_default_str();
  sim->add_option("--seed", f.config.seed, "random seed")->capture_default_str();
  sim->add_option("--drift", f.drift, "drift f(s, x): zero | cos")
      ->check(CLI::IsMember({"zero", "cos"}))
      ->capture_default_str();
  sim->add_option("--x0", f.config.x0, "initial value of every block")->capture_default_str();
  sim->add_option("--fine-mult", f.config.fine_multiplier, "Euler steps per observation")->capture_default_str();
  sim->add_option("--mode", f.mode, "write levels | increments")
      ->check(CLI::IsMember({"levels", "increments"}))
      ->capture_default_str();
  sim->add_option("--output", f.config.output, "output CSV (default: stdout)");

  CLI::App* ana = app.add_subcommand("analyze", "per-block p-variation and KS distance at one (C, p)");
  add_input(*ana, f);
  ana->add_option("--p", f.config.p, "variation order p")->capture_default_str();
  ana->add_option("--scale", f.config.scale, "reference scale C")->capture_default_str();
  ana->add_option("--output", f.config.output, "write block statistics CSV here");

  CLI::App* est = app.add_subcommand("estimate", "fit (alpha, C) by minimizing the KS distance");
  add_input(*est, f);
  add_grid(*est, f);
  est->add_option("--output", f.config.output,
                  "surface CSV; also writes .profile.csv, .result.json, .slice.csv, .gp beside it");
  f.slice_option = est->add_option("--slice-c", f.slice_c, "also tabulate D over p at this fixed C");
  est->add_flag("--gnuplot", f.config.gnuplot, "write a gnuplot script next to the output");

  CLI::App* ver = app.add_subcommand("verify", "run a convergence scenario and report the KS test");
  ver->add_option("--scenario", f.config.scenario, "thm1-sub | thm1-centered | thm3-lipschitz | cor-sde")
      ->required();
  add_law(*ver, f);
  ver->add_option("--p", f.config.p, "variation order p (default: scenario's)");
  ver->add_option("--n", f.config.n, "observations per unit time (default: scenario's)");
  ver->add_option("--m", f.config.m, "number of paths (default: scenario's)");
  ver->add_option("--seed", f.config.seed, "random seed")->capture_default_str();
  ver->add_option("--fine-mult", f.config.fine_multiplier, "Euler steps per observation (cor-sde)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kFailed;
  }

  try {
    if (sim->parsed()) return cmd_simulate(f, out);
    if (ana->parsed()) return cmd_analyze(f, out);
    if (est->parsed()) return cmd_estimate(f, out);
    if (ver->parsed()) return cmd_verify(f, out, err, *ver);
  } catch (const SeriesWriteError& e) {
    err << "error: " << e.what() << '\n';
    return kUnwritableOutput;
  } catch (const SeriesParseError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed header: " << e.what() << '\n';
    return kBadInput;
  } catch (const EstimationError& e) {
    err << "error: " << e.what() << '\n';
    return kInfeasible;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInfeasible;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kInfeasible;
  }
  return kFailed;
}

}  // namespace stablevar::cli
