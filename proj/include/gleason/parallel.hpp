#pragma once

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gleason::par {

// Worker count used by the OpenMP kernels. Respects the GLEASON_LAB_THREADS
// environment variable as an upper cap; always at least 1.
int max_workers();

// Combines per-block partial sums with a fixed binary tree so the result does
// not depend on how many workers produced them.
double pairwise_combine(std::vector<double> values);

inline constexpr std::size_t kSumBlock = 4096;

namespace detail {

template <class F>
double pairwise_range(std::size_t first, std::size_t last, const F& term) {
  const std::size_t n = last - first;
  if (n <= 64) {
    double acc = 0.0;
    for (std::size_t i = first; i < last; ++i) acc += term(i);
    return acc;
  }
  const std::size_t mid = first + n / 2;
  return pairwise_range(first, mid, term) + pairwise_range(mid, last, term);
}

}  // namespace detail

// Deterministic blocked pairwise summation of term(i) over [first, last).
// The block decomposition and the combine tree are fixed, so the OpenMP
// kernel returns bit-identical results for any worker count, and matches
// block_sum_serial exactly.
template <class F>
double block_sum_serial(std::size_t first, std::size_t last, const F& term) {
  if (first >= last) return 0.0;
  const std::size_t blocks = (last - first + kSumBlock - 1) / kSumBlock;
  std::vector<double> partial(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t lo = first + b * kSumBlock;
    const std::size_t hi = lo + kSumBlock < last ? lo + kSumBlock : last;
    partial[b] = detail::pairwise_range(lo, hi, term);
  }
  return pairwise_combine(std::move(partial));
}

template <class F>
double block_sum(std::size_t first, std::size_t last, const F& term) {
  if (first >= last) return 0.0;
  const std::size_t blocks = (last - first + kSumBlock - 1) / kSumBlock;
  std::vector<double> partial(blocks);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(max_workers())
#endif
  for (long long b = 0; b < static_cast<long long>(blocks); ++b) {
    const std::size_t lo = first + static_cast<std::size_t>(b) * kSumBlock;
    const std::size_t hi = lo + kSumBlock < last ? lo + kSumBlock : last;
    partial[static_cast<std::size_t>(b)] = detail::pairwise_range(lo, hi, term);
  }
  return pairwise_combine(std::move(partial));
}

}  // namespace gleason::par
