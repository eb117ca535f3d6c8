#include "stablevar/stable_law.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "stablevar/special.hpp"

namespace stablevar {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;

template <class F>
double integrate(F&& f, double a, double b, double tol = 1e-12) {
  if (!(b > a)) return 0.0;
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, tol, &err);
}

// Integrates f over [a, b] after splitting at the zero of the monotone
// function `level`. The integrands below are exp(-exp(level)) or its
// complement, so all of their variation sits next to that point; after the
// split it sits at an endpoint, where tanh-sinh nodes cluster.
template <class F, class G>
double integrate_with_split(F&& f, G&& level, double a, double b) {
  if (!(b > a)) return 0.0;
  thread_local boost::math::quadrature::tanh_sinh<double> rule(10);
  const auto piece = [&](double lo, double hi) {
    if (!(hi > lo)) return 0.0;
    const double mid = 0.5 * (lo + hi);
    if (hi - lo < 1e-9 * (b - a)) return f(mid) * (hi - lo);
    const double half = 0.5 * (hi - lo);
    double err = 0.0;
    return half * rule.integrate([&](double z) { return f(mid + half * z); }, -1.0, 1.0, 1e-12,
                                 &err);
  };
  const double eps = 1e-15 * (b - a);
  double lo = a + eps, hi = b - eps;
  const double flo = level(lo), fhi = level(hi);
  if (std::isnan(flo) || std::isnan(fhi) || (flo > 0) == (fhi > 0)) return piece(a, b);
  const bool increasing = fhi > flo;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((level(mid) > 0) == increasing) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const double split = 0.5 * (lo + hi);
  return piece(a, split) + piece(split, b);
}

// P(Z > x) for Z ~ S_a(1, b, 0) in the Samorodnitsky-Taqqu convention, via
// Nolan's (1997) integral representation. The library convention and the ST
// convention agree for a != 1; for a == 1 the caller flips the sign of b.
double standard_ccdf(double a, double b, double x);

double ccdf_alpha_not_one(double a, double b, double x) {
  const double tan_term = b * std::tan(kHalfPi * a);
  const double theta0 = std::atan(tan_term) / a;
  if (x < 0.0) return 1.0 - ccdf_alpha_not_one(a, -b, -x);
  if (x == 0.0) return (kHalfPi + theta0) / kPi;
  if (theta0 <= -kHalfPi) return 0.0;  // a < 1, b = -1: support is (-inf, 0]

  const double expo = a / (a - 1.0);
  const double log_x_term = expo * std::log(x);
  const double log_c0 = std::log(std::cos(a * theta0)) / (a - 1.0);
  const auto log_hv = [=](double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(a * (theta0 + theta));
    return log_x_term + log_c0 + std::log(c) / (a - 1.0) - expo * std::log(s) +
           std::log(std::cos(a * theta0 + (a - 1.0) * theta));
  };
  double integral;
  if (a < 1.0) {
    integral = integrate_with_split(
        [&](double t) { return -std::expm1(-std::exp(log_hv(t))); }, log_hv, -theta0, kHalfPi);
  } else {
    integral = integrate_with_split([&](double t) { return std::exp(-std::exp(log_hv(t))); },
                                    log_hv, -theta0, kHalfPi);
  }
  return std::clamp(integral / kPi, 0.0, 1.0);
}

double ccdf_alpha_one(double b, double x) {
  if (b == 0.0) {
    return x > 0.0 ? std::atan(1.0 / x) / kPi : 0.5 - std::atan(x) / kPi;
  }
  const bool positive = b > 0.0;
  const double bb = positive ? b : -b;
  const double xx = positive ? x : -x;
  const double log_h = -kPi * xx / (2.0 * bb);
  const auto log_hv = [=](double theta) {
    const double core = kHalfPi + bb * theta;
    return log_h + std::log(2.0 / kPi) + std::log(core) - std::log(std::cos(theta)) +
           core * std::tan(theta) / bb;
  };
  double integral;
  if (positive) {
    // 1 - F(x) with F(x) = (1/pi) int exp(-h V)
    integral = integrate_with_split([&](double t) { return -std::expm1(-std::exp(log_hv(t))); },
                                    log_hv, -kHalfPi, kHalfPi);
  } else {
    // P(Z > x; b) = F(-x; -b)
    integral = integrate_with_split([&](double t) { return std::exp(-std::exp(log_hv(t))); },
                                    log_hv, -kHalfPi, kHalfPi);
  }
  return std::clamp(integral / kPi, 0.0, 1.0);
}

// Far upper tail from the series
//   P(Z > x) = (1/pi) sum_k (-1)^(k+1) A^k Gamma(k a)/k! sin(k (pi a/2 + phi)) x^(-k a),
// A = sqrt(1 + tau^2), phi = atan(tau), tau = b tan(pi a/2). Convergent for
// a < 1 and asymptotic for a > 1. Returns NaN when x is not far enough out.
double tail_series(double a, double b, double x) {
  const double tau = b * std::tan(kHalfPi * a);
  const double amp = std::hypot(1.0, tau);
  const double t = amp * std::pow(x, -a);
  if (!(x > 0.0) || !(t < 1e-6)) return std::numeric_limits<double>::quiet_NaN();
  const double angle = kHalfPi * a + std::atan(tau);
  // b = -1 (a > 1): every coefficient vanishes, the tail is exponentially light
  if (std::abs(std::sin(angle)) < 1e-12) return 0.0;
  double sum = 0.0;
  double tk = 1.0;
  for (int k = 1; k <= 12; ++k) {
    tk *= t;
    const double term = (k % 2 == 1 ? 1.0 : -1.0) *
                        std::exp(std::lgamma(k * a) - std::lgamma(k + 1.0)) * tk *
                        std::sin(k * angle);
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return std::max(sum / kPi, 0.0);
}

double standard_ccdf(double a, double b, double x) {
  if (a == 2.0) return 0.5 * std::erfc(x / 2.0);
  if (a == 1.0) {
    // leading order is exact to O(log x / x) relative
    if (b != 0.0 && x > 1e12) return (1.0 + b) / (kPi * x);
    if (b != 0.0 && x < -1e12) return 1.0 - (1.0 - b) / (kPi * -x);
    return ccdf_alpha_one(b, x);
  }
  if (x > 0.0) {
    const double far = tail_series(a, b, x);
    if (!std::isnan(far)) return far;
  } else if (x < 0.0) {
    const double far = tail_series(a, -b, -x);
    if (!std::isnan(far)) return 1.0 - far;
  }
  return ccdf_alpha_not_one(a, b, x);
}

// Skew parameter in the ST convention used by the numerical routines.
double st_beta(const StableParams& params) {
  return params.alpha() == 1.0 ? -params.beta() : params.beta();
}

// Location shift of C*Z for a == 1 so that the result has scale C and zero
// location in the log-corrected exponent.
double alpha_one_shift(const StableParams& params) {
  if (params.alpha() != 1.0 || params.beta() == 0.0) return 0.0;
  const double c = params.scale();
  return (2.0 / kPi) * st_beta(params) * c * std::log(c);
}

void require_moment_order(const StableParams& params, double p) {
  if (!(p > 0.0) || !(p < params.alpha())) {
    throw std::domain_error("abs_moment: order p=" + std::to_string(p) +
                            " outside (0, alpha=" + std::to_string(params.alpha()) + ")");
  }
}

}  // namespace

StableParams::StableParams(double alpha, double scale, double beta)
    : alpha_(alpha), scale_(scale), beta_(beta) {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw std::invalid_argument("StableParams: alpha must lie in (0, 2], got " +
                                std::to_string(alpha));
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("StableParams: scale must be positive, got " +
                                std::to_string(scale));
  }
  if (!(beta >= -1.0 && beta <= 1.0)) {
    throw std::invalid_argument("StableParams: beta must lie in [-1, 1], got " +
                                std::to_string(beta));
  }
}

StableSampler::StableSampler(const StableParams& params)
    : params_(params), scale_(params.scale()) {
  const double a = params.alpha();
  if (a == 2.0) return;
  beta_st_ = st_beta(params);
  if (a == 1.0) {
    shift_ = alpha_one_shift(params);
    return;
  }
  const double t = beta_st_ * std::tan(kHalfPi * a);
  skew_shift_ = std::atan(t) / a;
  skew_factor_ = std::pow(1.0 + t * t, 1.0 / (2.0 * a));
}

double StableSampler::standard(StreamEngine& engine) const noexcept {
  const double v = kPi * (engine.uniform_open() - 0.5);
  const double w = engine.exponential();
  const double a = params_.alpha();
  if (a == 2.0) return 2.0 * std::sqrt(w) * std::sin(v);
  if (a == 1.0) {
    const double core = kHalfPi + beta_st_ * v;
    return (2.0 / kPi) * (core * std::tan(v) - beta_st_ * std::log(kHalfPi * w * std::cos(v) / core));
  }
  const double shifted = a * (v + skew_shift_);
  const double cos_v = std::cos(v);
  return skew_factor_ * std::sin(shifted) / std::pow(cos_v, 1.0 / a) *
         std::pow(std::cos(v - shifted) / w, (1.0 - a) / a);
}

double sample_stable(const StableParams& params, StreamEngine& engine) {
  return StableSampler(params)(engine);
}

double tail_constant(const StableParams& params) {
  return std::pow(params.scale(), params.alpha()) * tail_coefficient(params.alpha());
}

double stable_ccdf(const StableParams& params, double x) {
  const double z = (x - alpha_one_shift(params)) / params.scale();
  return standard_ccdf(params.alpha(), st_beta(params), z);
}

double stable_cdf(const StableParams& params, double x) {
  const double z = (x - alpha_one_shift(params)) / params.scale();
  // F(z; b) = P(-Z >= -z) = ccdf(-z; -b), exact in the lower tail
  return standard_ccdf(params.alpha(), -st_beta(params), -z);
}

double stable_abs_tail(const StableParams& params, double x) {
  if (x <= 0.0) return 1.0;
  const double shift = alpha_one_shift(params);
  const double c = params.scale();
  const double a = params.alpha();
  const double b = st_beta(params);
  return standard_ccdf(a, b, (x - shift) / c) + standard_ccdf(a, -b, (x + shift) / c);
}

double abs_moment(const StableParams& params, double p) {
  require_moment_order(params, p);
  const double a = params.alpha();
  const double cp = std::pow(params.scale(), p);
  if (params.is_gaussian()) {
    return cp * std::pow(2.0, p) * std::tgamma((1.0 + p) / 2.0) / std::sqrt(kPi);
  }
  if (params.beta() == 0.0) {
    return cp * std::pow(2.0, p) * std::tgamma((1.0 + p) / 2.0) * std::tgamma(1.0 - p / a) /
           (std::tgamma(1.0 - p / 2.0) * std::sqrt(kPi));
  }
  if (a != 1.0) {
    const double tau = params.beta() * std::tan(kHalfPi * a);
    return cp * std::tgamma(1.0 - p / a) / gamma_cos_product(p) *
           std::pow(1.0 + tau * tau, p / (2.0 * a)) * std::cos(p / a * std::atan(tau));
  }
  return abs_moment_by_quadrature(params, p);
}

double abs_moment_by_quadrature(const StableParams& params, double p) {
  require_moment_order(params, p);
  const double a = params.alpha();
  const double x0 = params.scale();
  // E|X|^p = int_0^inf p x^(p-1) S(x) dx with S(x) = P(|X| > x), split at x0.
  // Below x0 substitute x = x0 t^(1/p); above, x = x0 u^(-1/(a-p)), which
  // turns the K x^-a tail into a bounded integrand on (0, 1].
  thread_local boost::math::quadrature::tanh_sinh<double> rule(12);
  const double x0p = std::pow(x0, p);
  const auto lower = [&](double t) { return stable_abs_tail(params, x0 * std::pow(t, 1.0 / p)); };
  const double gap = a - p;
  const auto upper = [&](double u) {
    const double limit = p * tail_constant(params) * std::pow(x0, p - a) / gap;
    if (u <= 0.0) return limit;
    const double x = x0 * std::pow(u, -1.0 / gap);
    if (!(x < 1e200)) return limit;
    return p * std::pow(x, p - 1.0) * stable_abs_tail(params, x) * x / (gap * u);
  };
  double err = 0.0;
  const double low = x0p * rule.integrate(lower, 0.0, 1.0, 1e-10, &err);
  const double high = rule.integrate(upper, 0.0, 1.0, 1e-10, &err);
  return low + high;
}

double sin_moment(const StableParams& params, std::uint64_t n) {
  if (n == 0) throw std::domain_error("sin_moment: n must be positive");
  const double a = params.alpha();
  const double nn = static_cast<double>(n);
  // Integrating by parts with u = |x|^a / n:
  //   E sin(|X|^a / n) = int_0^inf cos(u) P(|X| > (n u)^(1/a)) du.
  // Up to U = 2 pi k the integral is done period by period; beyond U the tail
  // probability is K / (n u) + O(u^-2) and int_U^inf cos(u)/u du = -Ci(U).
  constexpr int kPeriods = 200;
  const auto integrand = [&](double u) {
    return std::cos(u) * stable_abs_tail(params, std::pow(nn * u, 1.0 / a));
  };
  double total = 0.0;
  for (int k = 0; k < kPeriods; ++k) {
    const double lo = 2.0 * kPi * k;
    total += integrate(integrand, lo, lo + kPi, 1e-10);
    total += integrate(integrand, lo + kPi, lo + 2.0 * kPi, 1e-10);
  }
  const double u_max = 2.0 * kPi * kPeriods;
  // -Ci(U) at U = 2 pi k equals g(U) of the auxiliary functions
  const double inv2 = 1.0 / (u_max * u_max);
  const double minus_ci = inv2 * (1.0 - 6.0 * inv2 + 120.0 * inv2 * inv2);
  total += tail_constant(params) / nn * minus_ci;
  return total;
}

}  // namespace stablevar
