#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "stablevar/execution.hpp"
#include "stablevar/path_sim.hpp"
#include "stablevar/stable_law.hpp"

namespace stablevar {

/// |x|^p as exp(p log|x|), exactly 0 at x = 0.
inline double abs_power(double x, double p) noexcept {
  return x == 0.0 ? 0.0 : std::exp(p * std::log(std::abs(x)));
}

/// V_p^n(X) at the grid times k/n, k = 0..steps.
struct VariationSeries {
  std::uint64_t n = 1;
  double p = 1.0;
  std::vector<double> raw;            // raw[k] = sum_{i<=k} |X_{i/n} - X_{(i-1)/n}|^p
  double compensator_per_step = 0.0;  // B_n(alpha, p)

  double compensated(std::size_t k) const noexcept {
    return raw[k] - static_cast<double>(k) * compensator_per_step;
  }
  double terminal() const noexcept { return raw.back(); }
};

/// Partial sums are compensated (Neumaier) and clamped to be non-decreasing.
/// Throws std::invalid_argument for p <= 0 or fewer than two points.
VariationSeries pvariation(const PathSample& path, double p);

/// sum_i |values[i] - values[i-1]|^p without storing partial sums.
double terminal_pvariation(std::span<const double> values, double p);

/// B_n(alpha, p): n^(-p/alpha) E|L_1|^p for alpha/2 < p < alpha,
/// E sin(|L_1|^alpha / n) for p = alpha, 0 for p > alpha.
/// Throws std::domain_error for p <= alpha/2.
double compensator(const StableParams& params, double p, std::uint64_t n);

/// pvariation with compensator_per_step filled in from params.
VariationSeries compensated_pvariation(const PathSample& path, double p, const StableParams& params);

/// V_p^n(X)_T - floor(nT) B_n(alpha, p).
double compensated_terminal(const PathSample& path, double p, const StableParams& params);

/// Terminal value minus steps * per_step for each path; per_step is usually
/// compensator(params, p, n), computed once by the caller.
std::vector<double> compensated_terminals(std::span<const PathSample> paths, double p,
                                          double per_step, Execution exec = Execution::parallel);

}  // namespace stablevar
