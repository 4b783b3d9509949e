#include "lapgeo/parallel.hpp"

#include <cstdlib>
#include <thread>
#include <vector>

namespace lapgeo {

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("LAPGEO_WORKERS")) {
    int w = std::atoi(env);
    if (w > 0) return w;
  }
  return 1;
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn, int workers) {
  const int w = resolve_workers(workers);
  if (w <= 1 || n < 256) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(w);
  const std::int64_t chunk = (n + w - 1) / w;
  for (int t = 0; t < w; ++t) {
    const std::int64_t lo = t * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, lo, hi] {
      for (std::int64_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0;
    for (double x : v) s += x;
    return s;
  }
  const size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace lapgeo
