#include "stablevar/limit_law.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "stablevar/special.hpp"

namespace stablevar {

LimitScale limit_scale(const StableParams& params, double p) {
  const double a = params.alpha();
  const double c = params.scale();
  if (!(p > a / 2.0) || !std::isfinite(p)) {
    throw std::domain_error("limit_scale: requires p > alpha/2, got p=" + std::to_string(p) +
                            " alpha=" + std::to_string(a));
  }
  if (a == 2.0) throw std::domain_error("limit_scale: alpha = 2 has no stable limit (C' = 0)");
  if (a == p) return {c, 1.0};
  const double z = a / p;
  const double ratio = gamma_cos_product(z) / gamma_cos_product(a);
  return {std::pow(c, p) * std::pow(ratio, p / a), z};
}

double ref_cdf_half_stable(double c_prime, double x) {
  if (!(c_prime > 0.0)) {
    throw std::invalid_argument("ref_cdf_half_stable: scale must be positive, got " +
                                std::to_string(c_prime));
  }
  if (!(x > 0.0)) return 0.0;
  return std::erfc(std::sqrt(c_prime / (2.0 * x)));
}

StableParams limit_params(const LimitScale& scale) {
  return StableParams(scale.alpha_over_p, scale.c_prime, 1.0);
}

double sample_limit(const LimitScale& scale, StreamEngine& engine) {
  return sample_stable(limit_params(scale), engine);
}

std::vector<double> sample_limit(const LimitScale& scale, std::size_t count, RandomStream stream) {
  const StableSampler sampler(limit_params(scale));
  StreamEngine engine(stream);
  std::vector<double> out(count);
  for (double& x : out) x = sampler(engine);
  return out;
}

}  // namespace stablevar
