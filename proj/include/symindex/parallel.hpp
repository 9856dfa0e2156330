// symindex: OpenMP glue. Kernels built on parallel_for have serial reference
// twins (suffix _ref) that tests compare against; outputs are arranged to be
// bitwise identical regardless of thread count.
// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace symindex {

template <class F>
void parallel_for(std::ptrdiff_t count, F&& body) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) body(i);
#else
  for (std::ptrdiff_t i = 0; i < count; ++i) body(i);
#endif
}

template <class F>
void serial_for(std::ptrdiff_t count, F&& body) {
  for (std::ptrdiff_t i = 0; i < count; ++i) body(i);
}

inline int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace symindex
