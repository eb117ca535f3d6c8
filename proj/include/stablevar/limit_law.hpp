#pragma once

#include <cstddef>
#include <vector>

#include "stablevar/rng.hpp"
#include "stablevar/stable_law.hpp"

namespace stablevar {

/// Scale and index of the limit S_{alpha/p}(C', 1, 0) of the compensated
/// p-variation of an S_alpha(C, beta, 0) process.
struct LimitScale {
  double c_prime;
  double alpha_over_p;
};

/// C' = C^p (g(alpha/p) / g(alpha))^(p/alpha), g(z) = Gamma(1-z) cos(pi z/2),
/// and C' = C when alpha == p exactly. g is evaluated in reflected form so
/// z = 1 is a regular point.
/// Throws std::domain_error for p <= alpha/2 and for alpha = 2, where the
/// formula degenerates to C' = 0.
LimitScale limit_scale(const StableParams& params, double p);

/// Levy (1/2-stable subordinator) CDF with scale c: erfc(sqrt(c / (2x))) for
/// x > 0, else 0. Throws std::invalid_argument for c <= 0.
double ref_cdf_half_stable(double c_prime, double x);

/// S_{alpha/p}(C', 1, 0).
StableParams limit_params(const LimitScale& scale);

double sample_limit(const LimitScale& scale, StreamEngine& engine);

/// count draws from one stream.
std::vector<double> sample_limit(const LimitScale& scale, std::size_t count, RandomStream stream);

}  // namespace stablevar
