#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "stablevar/execution.hpp"
#include "stablevar/path_sim.hpp"
#include "stablevar/stable_law.hpp"

namespace stablevar {

// Batch drivers: path i always uses RandomStream{seed, i}, and each path is
// reduced to its statistic before the next one is drawn, so memory stays
// O(n) per thread and results do not depend on the thread count.

/// V_p^n(L)_T - floor(nT) per_step for `count` Levy paths, optionally with a
/// deterministic perturbation y(t) added to each path.
std::vector<double> levy_statistics(const StableParams& params, std::uint64_t n, double horizon,
                                    double p, double per_step, std::size_t count, std::uint64_t seed,
                                    const std::function<double(double)>& perturbation = {},
                                    Execution exec = Execution::parallel);

struct PairedStatistics {
  std::vector<double> solution;  // statistic of the SDE solution X
  std::vector<double> noise;     // statistic of its driving L (same draws)
};

/// Statistics of X and of L from the same Euler simulations.
PairedStatistics sde_statistics(double x0, const Drift& drift, const StableParams& params,
                                std::uint64_t n_fine, std::uint64_t n_obs, double horizon, double p,
                                double per_step, std::size_t count, std::uint64_t seed,
                                Execution exec = Execution::parallel);

/// m independent SDE paths on [0, T] (block i uses stream i), each observed at
/// 1/n, ..., floor(nT)/n and concatenated: m * floor(nT) levels.
std::vector<double> simulate_blocks(double x0, const Drift& drift, const StableParams& params,
                                    std::uint64_t n, double horizon, std::size_t m,
                                    std::uint64_t fine_multiplier, std::uint64_t seed,
                                    Execution exec = Execution::parallel);

}  // namespace stablevar
