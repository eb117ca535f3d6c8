#include "stablevar/path_sim.hpp"

#include <cmath>
#include <stdexcept>

namespace stablevar {

std::size_t grid_steps(std::uint64_t n, double horizon) {
  if (!(horizon > 0.0)) throw std::invalid_argument("grid_steps: horizon must be positive");
  const double product = static_cast<double>(n) * horizon;
  const double nearest = std::round(product);
  if (std::abs(product - nearest) <= 1e-9 * std::max(1.0, product)) {
    return static_cast<std::size_t>(nearest);
  }
  return static_cast<std::size_t>(std::floor(product));
}

namespace {

StableSampler increment_sampler(const StableParams& params, std::uint64_t n) {
  return StableSampler(
      params.with_scale(params.scale() * std::pow(static_cast<double>(n), -1.0 / params.alpha())));
}

void require_grid(std::uint64_t n, double horizon) {
  if (n == 0) throw std::invalid_argument("path simulation: n must be at least 1");
  if (!(horizon > 0.0)) throw std::invalid_argument("path simulation: horizon must be positive");
}

}  // namespace

PathSample simulate_levy(const StableParams& params, std::uint64_t n, double horizon,
                         RandomStream stream) {
  require_grid(n, horizon);
  const StableSampler sampler = increment_sampler(params, n);
  StreamEngine engine(stream);
  PathSample path{n, horizon, std::vector<double>(grid_steps(n, horizon) + 1, 0.0)};
  double level = 0.0;
  for (std::size_t k = 1; k < path.values.size(); ++k) {
    level += sampler(engine);
    path.values[k] = level;
  }
  return path;
}

SdePaths simulate_sde_paths(double x0, const Drift& drift, const StableParams& params,
                            std::uint64_t n_fine, std::uint64_t n_obs, double horizon,
                            RandomStream stream) {
  require_grid(n_obs, horizon);
  if (n_fine < n_obs || n_fine % n_obs != 0) {
    throw std::invalid_argument("simulate_sde: n_fine must be a positive multiple of n_obs");
  }
  const std::uint64_t ratio = n_fine / n_obs;
  const std::size_t coarse = grid_steps(n_obs, horizon);
  const double h = 1.0 / static_cast<double>(n_fine);
  const StableSampler sampler = increment_sampler(params, n_fine);
  StreamEngine engine(stream);

  SdePaths out{{n_obs, horizon, std::vector<double>(coarse + 1)},
               {n_obs, horizon, std::vector<double>(coarse + 1)}};
  out.solution.values[0] = x0;
  out.noise.values[0] = 0.0;

  const bool has_drift = drift.kind() != Drift::Kind::zero;
  double noise = 0.0, drift_integral = 0.0, x = x0;
  std::uint64_t j = 0;
  for (std::size_t k = 1; k <= coarse; ++k) {
    for (std::uint64_t r = 0; r < ratio; ++r, ++j) {
      if (has_drift) drift_integral += drift(static_cast<double>(j) * h, x) * h;
      noise += sampler(engine);
      x = x0 + drift_integral + noise;
    }
    out.solution.values[k] = x;
    out.noise.values[k] = noise;
  }
  return out;
}

PathSample simulate_sde(double x0, const Drift& drift, const StableParams& params,
                        std::uint64_t n_fine, std::uint64_t n_obs, double horizon,
                        RandomStream stream) {
  return simulate_sde_paths(x0, drift, params, n_fine, n_obs, horizon, stream).solution;
}

PathSample add_perturbation(const PathSample& base, const std::function<double(double)>& y) {
  PathSample out = base;
  for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] += y(base.time_at(k));
  return out;
}

}  // namespace stablevar
