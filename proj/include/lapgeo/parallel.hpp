#pragma once
#include <cstdint>
#include <functional>
#include <span>

namespace lapgeo {

/// Worker count resolution: explicit argument > LAPGEO_WORKERS env > 1.
int resolve_workers(int requested = 0);

/// Runs fn(i) for i in [0,n). Each index writes its own output slot, so the
/// result is identical for any worker count.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn, int workers = 0);

/// Fixed-order pairwise summation; deterministic regardless of worker count.
double pairwise_sum(std::span<const double> v);

}  // namespace lapgeo
