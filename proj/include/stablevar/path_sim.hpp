#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "stablevar/rng.hpp"
#include "stablevar/stable_law.hpp"

namespace stablevar {

/// A process observed on the uniform grid {k/n : k = 0..floor(n T)}.
/// values[0] is the initial condition; the spacing 1/n is implied.
struct PathSample {
  std::uint64_t n = 1;
  double horizon = 1.0;
  std::vector<double> values;

  std::size_t steps() const noexcept { return values.empty() ? 0 : values.size() - 1; }
  double time_at(std::size_t k) const noexcept { return static_cast<double>(k) / static_cast<double>(n); }
};

/// floor(n T), tolerant of representation error when n T is an integer.
std::size_t grid_steps(std::uint64_t n, double horizon);

/// Drift f(s, x) of X_t = x0 + int_0^t f(s, X_s) ds + L_t.
class Drift {
 public:
  enum class Kind { zero, cosine, custom };
  using Function = std::function<double(double, double)>;

  static Drift zero() { return Drift(Kind::zero, {}); }
  /// f(s, x) = cos x.
  static Drift cosine() { return Drift(Kind::cosine, {}); }
  /// Any locally bounded f; must be finite wherever the simulator evaluates it.
  static Drift custom(Function f) { return Drift(Kind::custom, std::move(f)); }

  Kind kind() const noexcept { return kind_; }

  double operator()(double s, double x) const {
    switch (kind_) {
      case Kind::zero:
        return 0.0;
      case Kind::cosine:
        return std::cos(x);
      case Kind::custom:
        return fn_(s, x);
    }
    return 0.0;
  }

 private:
  Drift(Kind kind, Function fn) : kind_(kind), fn_(std::move(fn)) {}

  Kind kind_;
  Function fn_;
};

inline constexpr std::uint64_t kDefaultFineMultiplier = 16;

/// L on the grid k/n: partial sums of i.i.d. S_alpha(C n^(-1/alpha), beta, 0)
/// increments, which is exact in law for every alpha and beta.
PathSample simulate_levy(const StableParams& params, std::uint64_t n, double horizon,
                         RandomStream stream);

struct SdePaths {
  PathSample solution;  // X on the coarse grid
  PathSample noise;     // L on the coarse grid, same draws
};

/// Explicit Euler for X_t = x0 + int f(s, X_s) ds + L_t on the grid of
/// spacing 1/n_fine (drift evaluated at the left endpoint), restricted to the
/// coarse grid 1/n_obs. X is accumulated as x0 + Y + L with Y the drift
/// integral, so with f == 0 the result equals x0 + simulate_levy(n_fine)
/// restricted to the coarse grid, bit for bit.
/// Throws std::invalid_argument unless n_fine is a positive multiple of n_obs.
SdePaths simulate_sde_paths(double x0, const Drift& drift, const StableParams& params,
                            std::uint64_t n_fine, std::uint64_t n_obs, double horizon,
                            RandomStream stream);

PathSample simulate_sde(double x0, const Drift& drift, const StableParams& params,
                        std::uint64_t n_fine, std::uint64_t n_obs, double horizon,
                        RandomStream stream);

/// Pointwise base + y(t) on the grid of base.
PathSample add_perturbation(const PathSample& base, const std::function<double(double)>& y);

}  // namespace stablevar
