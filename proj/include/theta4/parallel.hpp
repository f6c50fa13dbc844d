#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace theta4 {

// Runs body(i) for i in [0, n) on up to `jobs` OpenMP threads (jobs <= 0: runtime default,
// jobs == 1: plain serial loop). The first exception thrown by any iteration is rethrown.
inline void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& body) {
  if (jobs == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr first;
  std::mutex mu;
#ifdef _OPENMP
  int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
  for (long i = 0; i < static_cast<long>(n); ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!first) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);
}

}  // namespace theta4
