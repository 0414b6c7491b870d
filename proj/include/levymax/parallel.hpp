#pragma once
// Deterministic OpenMP helpers. Work is cut into fixed chunks; each chunk runs
// serially over its index range and partials land in per-chunk slots combined
// in fixed order, so results are bitwise identical for any thread count.
// Serial twins of each driver are kept for testing and benchmarking.
#include <algorithm>
#include <cstdint>
#include <vector>
#ifdef _OPENMP
#include <omp.h>
#endif

namespace levymax::par {

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

constexpr std::int64_t kChunk = 4096;

// body(i) may only touch state owned by index i
template <class F>
void for_index(std::int64_t n, F&& body) {
  const std::int64_t nchunks = (n + kChunk - 1) / kChunk;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t c = 0; c < nchunks; ++c) {
    const std::int64_t hi = std::min(n, (c + 1) * kChunk);
    for (std::int64_t i = c * kChunk; i < hi; ++i) body(i);
  }
}

template <class F>
void for_index_serial(std::int64_t n, F&& body) {
  for (std::int64_t i = 0; i < n; ++i) body(i);
}

// chunked deterministic sum of f(i) over [0, n)
template <class F>
double sum_index(std::int64_t n, F&& f) {
  const std::int64_t nchunks = (n + kChunk - 1) / kChunk;
  std::vector<double> partial(static_cast<std::size_t>(nchunks), 0.0);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t c = 0; c < nchunks; ++c) {
    const std::int64_t hi = std::min(n, (c + 1) * kChunk);
    double acc = 0.0;
    for (std::int64_t i = c * kChunk; i < hi; ++i) acc += f(i);
    partial[static_cast<std::size_t>(c)] = acc;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

// same chunk structure as sum_index so the two agree bitwise
template <class F>
double sum_index_serial(std::int64_t n, F&& f) {
  const std::int64_t nchunks = (n + kChunk - 1) / kChunk;
  double total = 0.0;
  for (std::int64_t c = 0; c < nchunks; ++c) {
    const std::int64_t hi = std::min(n, (c + 1) * kChunk);
    double acc = 0.0;
    for (std::int64_t i = c * kChunk; i < hi; ++i) acc += f(i);
    total += acc;
  }
  return total;
}

}  // namespace levymax::par
