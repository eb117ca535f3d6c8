#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stablevar/execution.hpp"

namespace stablevar {

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double two_sample_ks(std::vector<double> a, std::vector<double> b);

/// Convergence scenarios run by `stablevar verify`.
///   thm1-sub        p > alpha: V_p^n(L)_1 against S_{alpha/p}(C', 1, 0) draws
///   thm1-centered   alpha/2 < p < alpha: compensated V against the same law
///   thm3-lipschitz  compensated V of L against that of L + sin(t)
///   cor-sde         V of the cos-drift SDE against V of its driving L
struct Scenario {
  std::string name;
  double alpha;
  double scale;
  double beta;
  double p;
  std::uint64_t n;
  std::size_t m;
};

const std::vector<Scenario>& scenarios();
std::optional<Scenario> find_scenario(const std::string& name);

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::uint64_t fine_multiplier = 16;  // cor-sde only
  double critical = 1.52;              // threshold = critical * sqrt(2/m)
  Execution exec = Execution::parallel;
};

struct VerifyReport {
  std::string scenario;
  double statistic;
  double threshold;
  bool passed;
  double c_prime;  // limit scale (0 when the scenario compares two samples of V)
  double compensator;
};

/// Throws std::invalid_argument if the scenario parameters are unusable.
VerifyReport run_scenario(const Scenario& scenario, const VerifyOptions& options = {});

}  // namespace stablevar
