#pragma once
#include <cstdint>
#include <vector>

#include "lapgeo/errors.hpp"

namespace lapgeo {

// One uniform parameter axis. Periodic axes identify index 0 with index
// `samples` (the endpoint is not stored).
struct Axis {
  int samples = 0;
  double start = 0.0;
  double end = 1.0;
  bool periodic = false;

  double step() const { return periodic ? (end - start) / samples : (end - start) / (samples - 1); }
  double coord(int i) const { return start + i * step(); }
  double extent() const { return end - start; }
};

struct Grid {
  std::vector<Axis> axes;  // 1 or 2

  Grid() = default;
  explicit Grid(std::vector<Axis> a) : axes(std::move(a)) { validate(); }

  int dim() const { return static_cast<int>(axes.size()); }
  std::int64_t total() const {
    std::int64_t t = 1;
    for (const auto& a : axes) t *= a.samples;
    return t;
  }
  // Row-major, last axis fastest.
  std::int64_t flat(int i, int j = 0) const { return dim() == 1 ? i : std::int64_t(i) * axes[1].samples + j; }

  void validate() const {
    if (axes.empty() || axes.size() > 2) throw Error(ErrorCode::BadInput, "grid must have 1 or 2 axes");
    for (const auto& a : axes) {
      if (a.samples < 16) throw Error(ErrorCode::BadInput, "axis needs at least 16 samples");
      if (!(a.step() > 0)) throw Error(ErrorCode::BadInput, "axis step must be positive");
    }
  }
};

}  // namespace lapgeo
