#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "stablevar/execution.hpp"

namespace stablevar {

/// Configuration problems the estimator refuses (short series, bad grids,
/// too few blocks, non-finite surface values).
class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class InputMode { levels, increments };

/// m adjacent, non-overlapping blocks of n consecutive source points; the
/// trailing remainder of the series is dropped. Each block is read as a path
/// on [0, 1] with spacing 1/n.
class BlockedSeries {
 public:
  BlockedSeries(std::vector<double> data, std::size_t n, InputMode mode, bool demean = false);

  std::size_t m() const noexcept { return data_.size() / n_; }
  std::size_t n() const noexcept { return n_; }
  InputMode mode() const noexcept { return mode_; }
  bool demean() const noexcept { return demean_; }
  std::span<const double> block(std::size_t i) const { return {data_.data() + i * n_, n_}; }
  std::span<const double> data() const noexcept { return data_; }

 private:
  std::vector<double> data_;
  std::size_t n_;
  InputMode mode_;
  bool demean_;
};

/// Throws EstimationError when n == 0 or series.size() < 2n.
BlockedSeries block_split(std::span<const double> series, std::size_t n,
                          InputMode mode = InputMode::levels, bool demean = false);

/// Terminal p-variation of one block. Levels are differenced inside the block
/// (n - 1 increments); in increments mode the n values are the increments.
/// With demean the block's mean increment is removed first.
double block_statistic(std::span<const double> block, double p, InputMode mode, bool demean = false);

std::vector<double> block_statistics(const BlockedSeries& blocked, double p,
                                     Execution exec = Execution::parallel);

/// Right-continuous step function G(x) = #{values <= x} / m.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> values);
  double operator()(double x) const noexcept;
  std::span<const double> sorted() const noexcept { return sorted_; }

 private:
  std::vector<double> sorted_;
};

/// sup_x |G(x) - F_{1/2,c}(x)| from the sorted sample; exact. NaN if any
/// value is not finite.
double ks_distance_sorted(std::span<const double> sorted, double c_prime);
double ks_distance(std::vector<double> values, double c_prime);

/// C' for the reference law: limit_scale of S_{p/2}(C, 0, 0) at order p.
double reference_scale(double c, double p);

struct SearchGrid {
  double p_min = 0.8, p_max = 3.6, p_step = 0.05;
  double c_min = 0.5, c_max = 20.0, c_step = 0.25;

  /// min + k step for k = 0..floor((max - min)/step) (1e-9 slack).
  std::vector<double> p_values() const;
  std::vector<double> c_values() const;
  /// Throws EstimationError unless 0 < p_min <= p_max < 4, 0 < c_min <= c_max
  /// and both steps are positive.
  void validate() const;

  bool operator==(const SearchGrid&) const = default;
};

struct SurfacePoint {
  double c;
  double p;
  double d;
};

/// D_n(C, p) on a grid, stored p-major: d[ip * c_grid.size() + ic].
/// Grid order (for ties) is p outer, C inner.
struct KSSurface {
  std::vector<double> c_grid;
  std::vector<double> p_grid;
  std::vector<double> d;
  SurfacePoint argmin{};
  std::size_t argmin_index = 0;
  std::size_t tie_count = 0;               // cells sharing the minimum value
  std::vector<SurfacePoint> local_minima;  // strict 8-neighbour minima, by increasing D

  double at(std::size_t ip, std::size_t ic) const { return d[ip * c_grid.size() + ic]; }
};

/// Throws EstimationError naming the grid point if any D is not finite.
KSSurface ks_surface(const BlockedSeries& blocked, const SearchGrid& grid,
                     Execution exec = Execution::parallel);

namespace reference {
/// Cell-by-cell evaluation with no reuse of per-p statistics; kept for tests
/// and benchmarks of ks_surface.
KSSurface ks_surface(const BlockedSeries& blocked, const SearchGrid& grid);
}  // namespace reference

/// D_n(C, p) at an arbitrary point.
double ks_objective(const BlockedSeries& blocked, double c, double p,
                    Execution exec = Execution::parallel);

struct ProfileEntry {
  double p;
  double best_c;
  double d;
};

struct EstimationConfig {
  SearchGrid grid;
  std::size_t m_min = 20;
  bool refine = true;
  Execution exec = Execution::parallel;
};

struct EstimationResult {
  double alpha_star = 0.0;  // p_star / 2
  double p_star = 0.0;
  double c_star = 0.0;
  double d_min = 0.0;
  SurfacePoint grid_best{};
  std::size_t tie_count = 0;
  bool at_boundary = false;  // grid optimum on the edge of the search box
  std::size_t refine_evaluations = 0;
  KSSurface surface;
  std::vector<ProfileEntry> profile;  // per p: min over C
};

/// Grid search, then Nelder-Mead from the best cell inside the grid box.
/// Throws EstimationError for m < m_min or an invalid grid.
EstimationResult estimate(const BlockedSeries& blocked, const EstimationConfig& config = {});

/// D_n(c, p) along the p grid at fixed c.
std::vector<SurfacePoint> fixed_c_slice(const BlockedSeries& blocked, const SearchGrid& grid, double c,
                                        Execution exec = Execution::parallel);

/// Local minima of a sequence of points by D (strictly below both neighbours).
std::vector<SurfacePoint> slice_minima(const std::vector<SurfacePoint>& slice);

}  // namespace stablevar
