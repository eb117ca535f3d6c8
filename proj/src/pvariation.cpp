#include "stablevar/pvariation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace stablevar {

namespace {

void require_order(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw std::invalid_argument("pvariation: p must be positive, got " + std::to_string(p));
  }
}

}  // namespace

VariationSeries pvariation(const PathSample& path, double p) {
  require_order(p);
  if (path.values.size() < 2) throw std::invalid_argument("pvariation: path needs at least two points");
  VariationSeries out{path.n, p, std::vector<double>(path.values.size(), 0.0), 0.0};
  double sum = 0.0, carry = 0.0;
  for (std::size_t k = 1; k < path.values.size(); ++k) {
    const double term = abs_power(path.values[k] - path.values[k - 1], p);
    const double t = sum + term;
    carry += std::abs(sum) >= term ? (sum - t) + term : (term - t) + sum;
    sum = t;
    out.raw[k] = std::max(out.raw[k - 1], sum + carry);
  }
  return out;
}

double terminal_pvariation(std::span<const double> values, double p) {
  require_order(p);
  double sum = 0.0, carry = 0.0;
  for (std::size_t k = 1; k < values.size(); ++k) {
    const double term = abs_power(values[k] - values[k - 1], p);
    const double t = sum + term;
    carry += sum >= term ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return sum + carry;
}

double compensator(const StableParams& params, double p, std::uint64_t n) {
  const double a = params.alpha();
  if (!(p > a / 2.0)) {
    throw std::domain_error("compensator: requires p > alpha/2, got p=" + std::to_string(p) +
                            " alpha=" + std::to_string(a));
  }
  if (n == 0) throw std::domain_error("compensator: n must be positive");
  if (p > a) return 0.0;
  if (p == a) return sin_moment(params, n);
  return std::pow(static_cast<double>(n), -p / a) * abs_moment(params, p);
}

VariationSeries compensated_pvariation(const PathSample& path, double p, const StableParams& params) {
  VariationSeries out = pvariation(path, p);
  out.compensator_per_step = compensator(params, p, path.n);
  return out;
}

double compensated_terminal(const PathSample& path, double p, const StableParams& params) {
  const double per_step = compensator(params, p, path.n);
  return terminal_pvariation(path.values, p) - static_cast<double>(path.steps()) * per_step;
}

std::vector<double> compensated_terminals(std::span<const PathSample> paths, double p,
                                          double per_step, Execution exec) {
  require_order(p);
  std::vector<double> out(paths.size());
  for_each_index(paths.size(), exec, [&](std::size_t i) {
    out[i] = terminal_pvariation(paths[i].values, p) -
             static_cast<double>(paths[i].steps()) * per_step;
  });
  return out;
}

}  // namespace stablevar
