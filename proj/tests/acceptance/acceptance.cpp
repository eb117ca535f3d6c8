// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <json.hpp>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "stablevar/batch.hpp"
#include "stablevar/cli.hpp"
#include "stablevar/estimator.hpp"
#include "stablevar/limit_law.hpp"
#include "stablevar/pvariation.hpp"
#include "stablevar/stable_law.hpp"
#include "stablevar/verify.hpp"
#include "test_support.hpp"

namespace sv = stablevar;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail += (detail.empty() ? "" : "; ") + ("failed: " + what);
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int cli(std::vector<std::string> args, std::string& out) {
  args.insert(args.begin(), "stablevar");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream o, e;
  const int code = sv::cli::run(static_cast<int>(argv.size()), argv.data(), o, e);
  out = o.str() + e.str();
  return code;
}

// Simulate the default experiment (m = n = 200, cos drift, S_0.75(6.35, 0, 0))
// and estimate it through the command line, for seeds 0..9.
Outcome ac1() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / "stablevar_acceptance";
  fs::create_directories(dir);
  const std::string data = (dir / "sim.csv").string();
  int inside = 0;
  double worst_d = 0.0, slowest = 0.0;
  std::string misses;
  for (int seed = 0; seed < 10; ++seed) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string text;
    if (cli({"simulate", "--seed", std::to_string(seed), "--output", data}, text) != 0 ||
        cli({"estimate", "--input", data}, text) != 0) {
      o.require(false, "seed " + std::to_string(seed) + " did not run: " + text);
      continue;
    }
    slowest = std::max(slowest, seconds_since(t0));
    const auto r = nlohmann::json::parse(text);
    const double a = r.at("alpha_star"), c = r.at("C_star"), d = r.at("D_min");
    worst_d = std::max(worst_d, d);
    if (a >= 0.65 && a <= 0.85 && c >= 5.4 && c <= 7.3) {
      ++inside;
    } else {
      misses += fmt(" seed %.0f (%.3f, %.2f)", seed, a, c);
    }
  }
  fs::remove_all(dir);
  o.require(inside >= 8, "fewer than 8 of 10 seeds inside the box");
  o.require(worst_d < 0.15, "D_min >= 0.15");
  o.note(fmt("%.0f/10 seeds with alpha* in [0.65, 0.85] and C* in [5.4, 7.3], max D_min %.4f, slowest seed %.1f s",
             inside, worst_d, slowest) +
         (misses.empty() ? "" : "; outside:" + misses));
  return o;
}

Outcome scenario(const char* name, double time_limit) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const sv::VerifyReport r = sv::run_scenario(*sv::find_scenario(name));
  const double elapsed = seconds_since(t0);
  o.require(r.passed, "KS statistic above threshold");
  if (time_limit > 0.0) o.require(elapsed < time_limit, fmt("runtime under %.0f s", time_limit));
  o.note(std::string(name) + fmt(": KS %.4f vs threshold %.4f, %.1f s", r.statistic, r.threshold, elapsed));
  return o;
}

double symmetric_abs_moment(double alpha, double c, double p) {
  return std::pow(2.0 * c, p) * std::tgamma((1.0 + p) / 2.0) * std::tgamma(1.0 - p / alpha) /
         (std::tgamma(1.0 - p / 2.0) * std::sqrt(M_PI));
}

Outcome ac6() {
  Outcome o;
  for (double a : {0.6, 1.0, 1.5, 1.9}) {
    for (double c : {0.3, 1.0, 6.35}) {
      o.require(sv::limit_scale({a, c}, a).c_prime == c, fmt("C'(alpha = p) = C at alpha %.2f, C %.2f", a, c));
    }
  }

  double cdf_err = 0.0;
  for (double c : {0.3, 13.0568674027}) {
    for (int i = 0; i < 100; ++i) {
      const double x = c * std::pow(10.0, -1.0 + 7.0 * i / 99.0);
      cdf_err = std::max(cdf_err, std::abs(sv::ref_cdf_half_stable(c, x) - sv::testing::levy_cdf_by_quadrature(c, x)));
    }
  }
  o.require(cdf_err <= 1e-10, "reference CDF vs quadrature <= 1e-10");

  double moment_err = 0.0;
  for (double a : {0.75, 1.2, 1.5, 1.9}) {
    for (double p : {0.2, 0.5 * a, 0.9 * a}) {
      const double exact = symmetric_abs_moment(a, 1.7, p);
      const sv::StableParams params(a, 1.7, 0.0);
      moment_err = std::max({moment_err, std::abs(sv::abs_moment(params, p) / exact - 1.0),
                             std::abs(sv::abs_moment_by_quadrature(params, p) / exact - 1.0)});
    }
  }
  o.require(moment_err <= 1e-4, "E|L|^p vs symmetric closed form <= 1e-4 relative");

  constexpr std::size_t kDraws = 10'000'000;
  double worst_z = 0.0;
  {
    const sv::StableParams params(1.5, 1.0, 0.3);
    sv::StableSampler sampler(params);
    sv::StreamEngine engine({901, 0});
    std::vector<double> v(kDraws);
    for (double& x : v) x = std::pow(std::abs(sampler(engine)), 0.8);
    const auto est = sv::testing::mean_and_se(v);
    const double z = std::abs(est.mean - sv::abs_moment(params, 0.8)) / est.standard_error;
    o.require(z < 3.0, "E|L|^p vs Monte Carlo within 3 SE");
    worst_z = std::max(worst_z, z);
  }
  {
    const sv::StableParams params(1.0, 1.0, 0.0);
    sv::StreamEngine engine({902, 0});
    std::vector<double> v(kDraws);
    for (double& x : v) x = std::sin(std::abs(sv::sample_stable(params, engine)) / 10000.0);
    const auto est = sv::testing::mean_and_se(v);
    const double z = std::abs(est.mean - sv::sin_moment(params, 10000)) / est.standard_error;
    o.require(z < 3.0, "E sin(|L|^alpha / n) vs Monte Carlo within 3 SE");
    worst_z = std::max(worst_z, z);
  }
  o.note(fmt("CDF err %.2e, moment rel err %.2e, worst Monte Carlo z %.2f", cdf_err, moment_err, worst_z));
  return o;
}

Outcome ac7() {
  Outcome o;
  const sv::StableParams law(1.5, 1.0);
  const auto path = sv::simulate_levy(law, 500, 1.0, {7, 0});

  const auto base = sv::pvariation(path, 1.3);
  double scale_err = 0.0;
  for (double c : {0.5, 2.0, 3.7}) {
    auto scaled = path;
    for (double& v : scaled.values) v *= c;
    const auto s = sv::pvariation(scaled, 1.3);
    const double factor = std::pow(c, 1.3);
    for (std::size_t k = 1; k < s.raw.size(); ++k) {
      scale_err = std::max(scale_err, std::abs(s.raw[k] / (factor * base.raw[k]) - 1.0));
    }
  }
  o.require(scale_err <= 1e-12, "V(cX) = c^p V(X)");

  auto dyadic = path;
  for (double& v : dyadic.values) v = std::ldexp(std::round(std::ldexp(v, 20)), -20);
  const auto before = sv::pvariation(dyadic, 1.2).raw;
  for (double& v : dyadic.values) v += 1024.0;
  o.require(sv::pvariation(dyadic, 1.2).raw == before, "translation invariance");

  bool monotone = true;
  for (std::size_t k = 1; k < base.raw.size(); ++k) monotone = monotone && base.raw[k] >= base.raw[k - 1];
  o.require(monotone, "raw p-variation nondecreasing");

  std::mt19937_64 gen(2024);
  std::lognormal_distribution<double> lognormal(0.5, 1.5);
  double ks_err = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<double> values(40 + 30 * trial);
    for (double& v : values) v = lognormal(gen);
    const double c = 0.5 + trial;
    ks_err = std::max(ks_err, std::abs(sv::ks_distance(values, c) - sv::testing::brute_force_levy_ks(values, c)));
  }
  o.require(ks_err <= 1e-6, "KS distance vs brute-force sup <= 1e-6");

  const auto blocks = sv::block_split(
      sv::simulate_blocks(0.0, sv::Drift::zero(), {0.75, 6.35}, 200, 1.0, 200, 1, 17), 200);
  const sv::SearchGrid g;
  sv::SearchGrid g2 = g;
  g2.c_min *= 2.0;
  g2.c_max *= 2.0;
  g2.c_step *= 2.0;
  const auto surface = sv::ks_surface(blocks, g);
  std::vector<double> doubled(blocks.data().begin(), blocks.data().end());
  for (double& v : doubled) v *= 2.0;
  const auto scaled = sv::ks_surface(sv::block_split(doubled, 200), g2);
  double eq_err = 0.0;
  for (std::size_t i = 0; i < surface.d.size(); ++i) eq_err = std::max(eq_err, std::abs(scaled.d[i] - surface.d[i]));
  o.require(eq_err <= 1e-12 && scaled.argmin.c == 2.0 * surface.argmin.c && scaled.argmin.p == surface.argmin.p,
            "estimator scale equivariance at lambda = 2");

  bool deterministic = sv::ks_surface(blocks, g, sv::Execution::serial).d == surface.d &&
                       sv::reference::ks_surface(blocks, g).d == surface.d;
  const auto stats = sv::levy_statistics(law, 1000, 1.0, 1.0, 0.0, 200, 3, {}, sv::Execution::serial);
  for (const char* threads : {"1", "2", "4", "7"}) {
    setenv("STABLEVAR_THREADS", threads, 1);
    deterministic = deterministic && sv::levy_statistics(law, 1000, 1.0, 1.0, 0.0, 200, 3) == stats &&
                    sv::ks_surface(blocks, g).d == surface.d;
  }
  unsetenv("STABLEVAR_THREADS");
  o.require(deterministic, "bitwise identical results across thread counts");
  o.note(fmt("scaling err %.1e, KS err %.1e, equivariance err %.1e", scale_err, ks_err, eq_err));
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria{
      {"AC-1", ac1},
      {"AC-2", [] { return scenario("thm1-sub", 30.0); }},
      {"AC-3", [] { return scenario("thm1-centered", 0.0); }},
      {"AC-4", [] { return scenario("thm3-lipschitz", 0.0); }},
      {"AC-5", [] { return scenario("cor-sde", 0.0); }},
      {"AC-6", ac6},
      {"AC-7", ac7},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    failures += o.passed ? 0 : 1;
    std::printf("%s %s  %s\n", c.id, o.passed ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
