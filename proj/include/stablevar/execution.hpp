#pragma once

#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>

#include <omp.h>

namespace stablevar {

/// serial is the reference path kept for testing and benchmarks; results of
/// the two must agree exactly because work items never share accumulators.
enum class Execution { serial, parallel };

/// Threads used by parallel kernels: STABLEVAR_THREADS if set to a positive
/// integer, otherwise the OpenMP default.
inline int thread_limit() {
  if (const char* env = std::getenv("STABLEVAR_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return omp_get_max_threads();
}

/// Calls f(i) for i in [0, count). Each index must write only its own output
/// slot. The first exception thrown by any f(i) is rethrown on the caller.
template <class F>
void for_each_index(std::size_t count, Execution exec, F&& f) {
  if (exec == Execution::serial || count < 2) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::exception_ptr failure;
  std::once_flag once;
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic) num_threads(thread_limit())
  for (long long i = 0; i < n; ++i) {
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
      std::call_once(once, [&] { failure = std::current_exception(); });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace stablevar
