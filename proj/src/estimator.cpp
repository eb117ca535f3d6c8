#include "stablevar/estimator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "stablevar/limit_law.hpp"
#include "stablevar/pvariation.hpp"

namespace stablevar {

BlockedSeries::BlockedSeries(std::vector<double> data, std::size_t n, InputMode mode, bool demean)
    : data_(std::move(data)), n_(n), mode_(mode), demean_(demean) {
  if (n_ == 0) throw EstimationError("block length n must be positive");
  data_.resize(data_.size() / n_ * n_);
}

BlockedSeries block_split(std::span<const double> series, std::size_t n, InputMode mode, bool demean) {
  if (n == 0) throw EstimationError("block length n must be positive");
  if (series.size() < 2 * n) {
    std::ostringstream msg;
    msg << "series of length " << series.size() << " is shorter than 2n = " << 2 * n;
    throw EstimationError(msg.str());
  }
  return BlockedSeries(std::vector<double>(series.begin(), series.end()), n, mode, demean);
}

double block_statistic(std::span<const double> block, double p, InputMode mode, bool demean) {
  if (mode == InputMode::levels && !demean) return terminal_pvariation(block, p);
  std::vector<double> inc;
  if (mode == InputMode::levels) {
    for (std::size_t j = 1; j < block.size(); ++j) inc.push_back(block[j] - block[j - 1]);
  } else {
    inc.assign(block.begin(), block.end());
  }
  if (demean && !inc.empty()) {
    double mean = 0.0;
    for (double v : inc) mean += v;
    mean /= static_cast<double>(inc.size());
    for (double& v : inc) v -= mean;
  }
  double sum = 0.0;
  for (double v : inc) sum += abs_power(v, p);
  return sum;
}

std::vector<double> block_statistics(const BlockedSeries& blocked, double p, Execution exec) {
  std::vector<double> out(blocked.m());
  for_each_index(out.size(), exec, [&](std::size_t i) {
    out[i] = block_statistic(blocked.block(i), p, blocked.mode(), blocked.demean());
  });
  return out;
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> values) : sorted_(std::move(values)) {
  if (sorted_.empty()) throw EstimationError("empirical CDF of an empty sample");
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const noexcept {
  const auto count = std::upper_bound(sorted_.begin(), sorted_.end(), x) - sorted_.begin();
  return static_cast<double>(count) / static_cast<double>(sorted_.size());
}

double ks_distance_sorted(std::span<const double> sorted, double c_prime) {
  const double m = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (!std::isfinite(sorted[i])) return std::numeric_limits<double>::quiet_NaN();
    const double f = ref_cdf_half_stable(c_prime, sorted[i]);
    d = std::max({d, static_cast<double>(i + 1) / m - f, f - static_cast<double>(i) / m});
  }
  return d;
}

double ks_distance(std::vector<double> values, double c_prime) {
  if (!std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); })) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  std::sort(values.begin(), values.end());
  return ks_distance_sorted(values, c_prime);
}

double reference_scale(double c, double p) {
  return limit_scale(StableParams(p / 2.0, c), p).c_prime;
}

namespace {

std::vector<double> arithmetic_grid(double lo, double hi, double step) {
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = lo + static_cast<double>(k) * step;
  return out;
}

std::string describe(double c, double p) {
  std::ostringstream msg;
  msg << "(C=" << c << ", p=" << p << ")";
  return msg.str();
}

void finalize(KSSurface& s) {
  const std::size_t nc = s.c_grid.size(), np = s.p_grid.size();
  for (std::size_t ip = 0; ip < np; ++ip) {
    for (std::size_t ic = 0; ic < nc; ++ic) {
      if (!std::isfinite(s.at(ip, ic))) {
        throw EstimationError("non-finite KS distance at grid point " + describe(s.c_grid[ic], s.p_grid[ip]));
      }
    }
  }
  const auto best = std::min_element(s.d.begin(), s.d.end());
  s.argmin_index = static_cast<std::size_t>(best - s.d.begin());
  s.argmin = {s.c_grid[s.argmin_index % nc], s.p_grid[s.argmin_index / nc], *best};
  s.tie_count = static_cast<std::size_t>(std::count(s.d.begin(), s.d.end(), *best));

  s.local_minima.clear();
  for (std::size_t ip = 0; ip < np; ++ip) {
    for (std::size_t ic = 0; ic < nc; ++ic) {
      const double v = s.at(ip, ic);
      bool strict = true;
      for (int dp = -1; dp <= 1 && strict; ++dp) {
        for (int dc = -1; dc <= 1 && strict; ++dc) {
          if (dp == 0 && dc == 0) continue;
          const auto jp = static_cast<std::ptrdiff_t>(ip) + dp;
          const auto jc = static_cast<std::ptrdiff_t>(ic) + dc;
          if (jp < 0 || jc < 0 || jp >= static_cast<std::ptrdiff_t>(np) ||
              jc >= static_cast<std::ptrdiff_t>(nc)) {
            continue;
          }
          strict = v < s.at(static_cast<std::size_t>(jp), static_cast<std::size_t>(jc));
        }
      }
      if (strict) s.local_minima.push_back({s.c_grid[ic], s.p_grid[ip], v});
    }
  }
  std::stable_sort(s.local_minima.begin(), s.local_minima.end(),
                   [](const SurfacePoint& a, const SurfacePoint& b) { return a.d < b.d; });
}

KSSurface empty_surface(const SearchGrid& grid) {
  grid.validate();
  KSSurface s;
  s.c_grid = grid.c_values();
  s.p_grid = grid.p_values();
  s.d.assign(s.c_grid.size() * s.p_grid.size(), 0.0);
  return s;
}

// A non-finite statistic (from non-finite data or overflow) is reported as a
// single NaN so that every cell of the row evaluates to NaN.
std::vector<double> sorted_statistics(const BlockedSeries& blocked, double p, Execution exec) {
  auto stats = block_statistics(blocked, p, exec);
  if (!std::all_of(stats.begin(), stats.end(), [](double v) { return std::isfinite(v); })) {
    return {std::numeric_limits<double>::quiet_NaN()};
  }
  std::sort(stats.begin(), stats.end());
  return stats;
}

}  // namespace

std::vector<double> SearchGrid::p_values() const { return arithmetic_grid(p_min, p_max, p_step); }
std::vector<double> SearchGrid::c_values() const { return arithmetic_grid(c_min, c_max, c_step); }

void SearchGrid::validate() const {
  const auto bad = [](const std::string& what) { throw EstimationError("infeasible search grid: " + what); };
  if (!(p_step > 0.0) || !(c_step > 0.0)) bad("steps must be positive");
  if (!(p_min > 0.0) || !(p_min <= p_max)) bad("need 0 < p_min <= p_max");
  if (!(p_max < 4.0)) bad("p_max must be below 4 (alpha = p/2 < 2)");
  if (!(c_min > 0.0) || !(c_min <= c_max)) bad("need 0 < c_min <= c_max");
  if (!std::isfinite(p_max) || !std::isfinite(c_max)) bad("bounds must be finite");
  if (p_values().size() * c_values().size() > 50'000'000) bad("too many grid cells");
}

KSSurface ks_surface(const BlockedSeries& blocked, const SearchGrid& grid, Execution exec) {
  KSSurface s = empty_surface(grid);
  const std::size_t nc = s.c_grid.size();
  std::vector<std::vector<double>> stats(s.p_grid.size());
  for_each_index(stats.size(), exec, [&](std::size_t ip) {
    stats[ip] = sorted_statistics(blocked, s.p_grid[ip], Execution::serial);
  });
  for_each_index(s.d.size(), exec, [&](std::size_t cell) {
    const double p = s.p_grid[cell / nc];
    s.d[cell] = ks_distance_sorted(stats[cell / nc], reference_scale(s.c_grid[cell % nc], p));
  });
  finalize(s);
  return s;
}

KSSurface reference::ks_surface(const BlockedSeries& blocked, const SearchGrid& grid) {
  KSSurface s = empty_surface(grid);
  const std::size_t nc = s.c_grid.size();
  for (std::size_t cell = 0; cell < s.d.size(); ++cell) {
    const double p = s.p_grid[cell / nc];
    const auto stats = sorted_statistics(blocked, p, Execution::serial);
    s.d[cell] = ks_distance_sorted(stats, reference_scale(s.c_grid[cell % nc], p));
  }
  finalize(s);
  return s;
}

double ks_objective(const BlockedSeries& blocked, double c, double p, Execution exec) {
  return ks_distance_sorted(sorted_statistics(blocked, p, exec), reference_scale(c, p));
}

namespace {

struct Vertex {
  std::array<double, 2> x;  // (C, p)
  double f;
};

// Nelder-Mead in (C, p), points clamped to the search box.
Vertex nelder_mead(const std::function<double(double, double)>& f, std::array<double, 2> start,
                   std::array<double, 2> step, std::array<double, 2> lo, std::array<double, 2> hi,
                   std::size_t& evaluations) {
  const auto clamp = [&](std::array<double, 2> x) {
    for (int k = 0; k < 2; ++k) x[k] = std::clamp(x[k], lo[k], hi[k]);
    return x;
  };
  const auto eval = [&](std::array<double, 2> x) {
    x = clamp(x);
    ++evaluations;
    return Vertex{x, f(x[0], x[1])};
  };
  const auto toward = [](const std::array<double, 2>& a, const std::array<double, 2>& b, double t) {
    return std::array<double, 2>{a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])};
  };
  std::array<Vertex, 3> s{eval(start), eval({start[0] + step[0], start[1]}),
                          eval({start[0], start[1] + step[1]})};
  // a start on the upper edge would clamp a vertex onto the start; step inward
  for (int k = 1; k < 3; ++k) {
    if (s[k].x == s[0].x) s[k] = eval({start[0] - (k == 1) * step[0], start[1] - (k == 2) * step[1]});
  }
  const auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
  for (int iter = 0; iter < 200; ++iter) {
    std::stable_sort(s.begin(), s.end(), by_value);
    const double size = std::max({std::abs(s[1].x[0] - s[0].x[0]) / step[0], std::abs(s[2].x[0] - s[0].x[0]) / step[0],
                                  std::abs(s[1].x[1] - s[0].x[1]) / step[1], std::abs(s[2].x[1] - s[0].x[1]) / step[1]});
    if (size < 1e-4) break;
    const std::array<double, 2> centroid{(s[0].x[0] + s[1].x[0]) / 2.0, (s[0].x[1] + s[1].x[1]) / 2.0};
    const Vertex reflected = eval(toward(centroid, s[2].x, -1.0));
    if (reflected.f < s[0].f) {
      const Vertex expanded = eval(toward(centroid, s[2].x, -2.0));
      s[2] = expanded.f < reflected.f ? expanded : reflected;
    } else if (reflected.f < s[1].f) {
      s[2] = reflected;
    } else {
      const bool outside = reflected.f < s[2].f;
      const Vertex contracted = eval(toward(centroid, outside ? reflected.x : s[2].x, 0.5));
      if (contracted.f < std::min(reflected.f, s[2].f)) {
        s[2] = contracted;
      } else {
        for (int k = 1; k < 3; ++k) s[k] = eval(toward(s[0].x, s[k].x, 0.5));
      }
    }
  }
  std::stable_sort(s.begin(), s.end(), by_value);
  return s[0];
}

}  // namespace

EstimationResult estimate(const BlockedSeries& blocked, const EstimationConfig& config) {
  if (blocked.m() < config.m_min) {
    std::ostringstream msg;
    msg << "only " << blocked.m() << " blocks; at least " << config.m_min << " are required";
    throw EstimationError(msg.str());
  }
  EstimationResult r;
  r.surface = ks_surface(blocked, config.grid, config.exec);
  const KSSurface& s = r.surface;
  r.grid_best = s.argmin;
  r.tie_count = s.tie_count;
  r.p_star = s.argmin.p;
  r.c_star = s.argmin.c;
  r.d_min = s.argmin.d;

  const std::size_t nc = s.c_grid.size();
  for (std::size_t ip = 0; ip < s.p_grid.size(); ++ip) {
    const auto row = s.d.begin() + static_cast<std::ptrdiff_t>(ip * nc);
    const auto best = std::min_element(row, row + static_cast<std::ptrdiff_t>(nc));
    r.profile.push_back({s.p_grid[ip], s.c_grid[static_cast<std::size_t>(best - row)], *best});
  }
  const std::size_t ip = s.argmin_index / nc, ic = s.argmin_index % nc;
  r.at_boundary = ip == 0 || ip + 1 == s.p_grid.size() || ic == 0 || ic + 1 == nc;

  if (config.refine) {
    const SearchGrid& g = config.grid;
    const Vertex best = nelder_mead(
        [&](double c, double p) { return ks_objective(blocked, c, p, config.exec); },
        {r.c_star, r.p_star}, {g.c_step, g.p_step}, {s.c_grid.front(), s.p_grid.front()},
        {s.c_grid.back(), s.p_grid.back()}, r.refine_evaluations);
    if (best.f < r.d_min) {
      r.c_star = best.x[0];
      r.p_star = best.x[1];
      r.d_min = best.f;
    }
  }
  r.alpha_star = r.p_star / 2.0;
  return r;
}

std::vector<SurfacePoint> fixed_c_slice(const BlockedSeries& blocked, const SearchGrid& grid, double c,
                                        Execution exec) {
  grid.validate();
  if (!(c > 0.0)) throw EstimationError("slice scale must be positive");
  const auto ps = grid.p_values();
  std::vector<SurfacePoint> out(ps.size());
  for_each_index(ps.size(), exec, [&](std::size_t i) {
    out[i] = {c, ps[i], ks_objective(blocked, c, ps[i], Execution::serial)};
  });
  return out;
}

std::vector<SurfacePoint> slice_minima(const std::vector<SurfacePoint>& slice) {
  std::vector<SurfacePoint> out;
  for (std::size_t i = 0; i < slice.size(); ++i) {
    const bool left = i == 0 || slice[i].d < slice[i - 1].d;
    const bool right = i + 1 == slice.size() || slice[i].d < slice[i + 1].d;
    if (left && right) out.push_back(slice[i]);
  }
  return out;
}

}  // namespace stablevar
