#pragma once

#include <cstdint>

#include "stablevar/rng.hpp"

namespace stablevar {

/// The law S_alpha(C, beta, 0) with characteristic exponent
///   -C^a |l|^a (1 - i beta sgn(l) tan(pi a / 2))        for a != 1,
///   -C |l| (1 - i beta (2/pi) sgn(l) log|l|)             for a == 1.
/// alpha == 2 is the Gaussian law with variance 2 C^2; beta is ignored there.
class StableParams {
 public:
  /// Throws std::invalid_argument unless 0 < alpha <= 2, scale > 0 and
  /// -1 <= beta <= 1.
  StableParams(double alpha, double scale, double beta = 0.0);

  double alpha() const noexcept { return alpha_; }
  double scale() const noexcept { return scale_; }
  double beta() const noexcept { return beta_; }

  bool is_gaussian() const noexcept { return alpha_ == 2.0; }
  bool is_symmetric() const noexcept { return beta_ == 0.0 || is_gaussian(); }

  /// Same alpha and beta, different scale.
  StableParams with_scale(double scale) const { return {alpha_, scale, beta_}; }

  friend bool operator==(const StableParams&, const StableParams&) = default;

 private:
  double alpha_;
  double scale_;
  double beta_;
};

/// Chambers-Mallows-Stuck sampler with the per-law constants precomputed.
/// Consumes exactly two uniforms (one 128-bit Philox block) per draw.
class StableSampler {
 public:
  explicit StableSampler(const StableParams& params);

  const StableParams& params() const noexcept { return params_; }

  /// One draw from S_alpha(1, beta, 0); the scale is not applied.
  double standard(StreamEngine& engine) const noexcept;

  /// One draw from S_alpha(C, beta, 0). For alpha != 1 this is exactly
  /// C * standard(engine).
  double operator()(StreamEngine& engine) const noexcept {
    return scale_ * standard(engine) + shift_;
  }

 private:
  StableParams params_;
  double scale_;
  double shift_ = 0.0;  // only nonzero for alpha == 1, beta != 0
  double skew_shift_ = 0.0;
  double skew_factor_ = 1.0;
  double beta_st_ = 0.0;
};

/// One draw from S_alpha(C, beta, 0), advancing the engine.
double sample_stable(const StableParams& params, StreamEngine& engine);

/// lim_{x->inf} x^alpha P(|L_1| > x) = C^alpha / (Gamma(1-alpha) cos(pi alpha/2)).
double tail_constant(const StableParams& params);

/// P(L_1 <= x).
double stable_cdf(const StableParams& params, double x);

/// P(L_1 > x), computed without cancellation in the upper tail.
double stable_ccdf(const StableParams& params, double x);

/// P(|L_1| > x) for x >= 0.
double stable_abs_tail(const StableParams& params, double x);

/// E|L_1|^p for 0 < p < alpha. Closed form when alpha != 1 or beta == 0,
/// numerical tail integration otherwise. Throws std::domain_error outside
/// (0, alpha).
double abs_moment(const StableParams& params, double p);

/// E|L_1|^p by integrating p x^(p-1) P(|L_1| > x) over (0, inf) with the
/// tail obtained from the integral representation of the CDF. Relative
/// accuracy about 1e-8; used for alpha == 1, beta != 0 and as a check on the
/// closed forms.
double abs_moment_by_quadrature(const StableParams& params, double p);

/// E sin(|L_1|^alpha / n) to absolute accuracy 1e-6 (typically ~1e-10).
/// Throws std::domain_error for n == 0.
double sin_moment(const StableParams& params, std::uint64_t n);

}  // namespace stablevar
