#pragma once

#include <cstddef>
#include <exception>

#ifdef SOBMUL_HAVE_OPENMP
#include <omp.h>
#endif

namespace sobmul::par {

inline bool openmp_enabled() {
#ifdef SOBMUL_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

inline int max_threads() {
#ifdef SOBMUL_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Runs body(i) for i in [0, n). Work items must be independent; each item
// writes only to its own output slot, so the parallel and serial paths
// produce bit-identical results. The serial path is kept as the reference
// implementation for tests and benchmarks.
template <class Body>
void for_each_index(std::size_t n, bool parallel, Body&& body) {
  if (!parallel || n < 2 || !openmp_enabled()) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
#ifdef SOBMUL_HAVE_OPENMP
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
#else
  for (std::size_t i = 0; i < n; ++i) body(i);
#endif
}

}  // namespace sobmul::par
