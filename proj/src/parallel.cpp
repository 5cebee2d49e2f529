#include "gleason/parallel.hpp"

#include <cstdlib>
#include <string>

namespace gleason::par {

int max_workers() {
  int n = 1;
#ifdef _OPENMP
  n = omp_get_max_threads();
#endif
  if (const char* cap = std::getenv("GLEASON_LAB_THREADS")) {
    try {
      const int c = std::stoi(cap);
      if (c >= 1 && c < n) n = c;
    } catch (...) {
      // unparsable cap is ignored
    }
  }
  return n < 1 ? 1 : n;
}

double pairwise_combine(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::size_t n = values.size();
  while (n > 1) {
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < half; ++i)
      values[i] = values[2 * i] + values[2 * i + 1];
    if (n % 2 == 1) {
      values[half] = values[n - 1];
      n = half + 1;
    } else {
      n = half;
    }
  }
  return values[0];
}

}  // namespace gleason::par
