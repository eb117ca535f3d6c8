#include "stablevar/batch.hpp"

#include "stablevar/pvariation.hpp"

namespace stablevar {

std::vector<double> levy_statistics(const StableParams& params, std::uint64_t n, double horizon,
                                    double p, double per_step, std::size_t count, std::uint64_t seed,
                                    const std::function<double(double)>& perturbation, Execution exec) {
  std::vector<double> out(count);
  for_each_index(count, exec, [&](std::size_t i) {
    PathSample path = simulate_levy(params, n, horizon, {seed, i});
    if (perturbation) path = add_perturbation(path, perturbation);
    out[i] = terminal_pvariation(path.values, p) - static_cast<double>(path.steps()) * per_step;
  });
  return out;
}

PairedStatistics sde_statistics(double x0, const Drift& drift, const StableParams& params,
                                std::uint64_t n_fine, std::uint64_t n_obs, double horizon, double p,
                                double per_step, std::size_t count, std::uint64_t seed, Execution exec) {
  PairedStatistics out{std::vector<double>(count), std::vector<double>(count)};
  for_each_index(count, exec, [&](std::size_t i) {
    const SdePaths paths = simulate_sde_paths(x0, drift, params, n_fine, n_obs, horizon, {seed, i});
    const double centring = static_cast<double>(paths.solution.steps()) * per_step;
    out.solution[i] = terminal_pvariation(paths.solution.values, p) - centring;
    out.noise[i] = terminal_pvariation(paths.noise.values, p) - centring;
  });
  return out;
}

std::vector<double> simulate_blocks(double x0, const Drift& drift, const StableParams& params,
                                    std::uint64_t n, double horizon, std::size_t m,
                                    std::uint64_t fine_multiplier, std::uint64_t seed, Execution exec) {
  const std::size_t len = grid_steps(n, horizon);
  std::vector<double> out(m * len);
  for_each_index(m, exec, [&](std::size_t i) {
    const PathSample path = simulate_sde(x0, drift, params, n * fine_multiplier, n, horizon, {seed, i});
    std::copy(path.values.begin() + 1, path.values.end(), out.begin() + static_cast<std::ptrdiff_t>(i * len));
  });
  return out;
}

}  // namespace stablevar
