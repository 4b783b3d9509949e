#include "lapgeo/fd.hpp"

#include <array>
#include <vector>

namespace lapgeo::fd {
namespace {

struct Stencil {
  std::vector<int> offsets;
  std::vector<double> weights;  // divided by h^k by the caller
};

// Central stencils.
Stencil central(int k, int order) {
  if (order == 2) {
    switch (k) {
      case 1: return {{-1, 1}, {-0.5, 0.5}};
      case 2: return {{-1, 0, 1}, {1.0, -2.0, 1.0}};
      case 3: return {{-2, -1, 1, 2}, {-0.5, 1.0, -1.0, 0.5}};
    }
  } else {
    switch (k) {
      case 1: return {{-2, -1, 1, 2}, {1.0 / 12, -8.0 / 12, 8.0 / 12, -1.0 / 12}};
      case 2: return {{-2, -1, 0, 1, 2}, {-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12}};
      case 3: return {{-3, -2, -1, 1, 2, 3}, {1.0 / 8, -8.0 / 8, 13.0 / 8, -13.0 / 8, 8.0 / 8, -1.0 / 8}};
    }
  }
  throw Error(ErrorCode::BadInput, "unsupported derivative order");
}

// One-sided stencils anchored at the boundary sample (forward direction).
Stencil one_sided(int k) {
  switch (k) {
    case 1: return {{0, 1, 2}, {-1.5, 2.0, -0.5}};
    case 2: return {{0, 1, 2, 3}, {2.0, -5.0, 4.0, -1.0}};
    case 3: return {{0, 1, 2, 3}, {-1.0, 3.0, -3.0, 1.0}};
  }
  throw Error(ErrorCode::BadInput, "unsupported derivative order");
}

}  // namespace

int boundary_band(int k, int order) {
  return central(k, order).offsets.back();
}

Eigen::MatrixXd derivative(const Grid& grid, const Eigen::MatrixXd& field, int axis, int k, int order) {
  const int nd = grid.dim();
  if (axis < 0 || axis >= nd) throw Error(ErrorCode::BadInput, "axis out of range");
  const Axis& ax = grid.axes[axis];
  const int N = ax.samples;
  const double h = ax.step();
  double hk = 1.0;
  for (int i = 0; i < k; ++i) hk *= h;

  const Stencil cen = central(k, order);
  const Stencil fwd = one_sided(k);
  const int band = cen.offsets.back();

  const std::int64_t lines = grid.total() / N;
  const std::int64_t stride = (nd == 2 && axis == 0) ? grid.axes[1].samples : 1;
  // base index of each 1-d line through the grid along `axis`
  auto line_base = [&](std::int64_t l) -> std::int64_t {
    if (nd == 1) return 0;
    return axis == 0 ? l : l * std::int64_t(grid.axes[1].samples);
  };

  Eigen::MatrixXd out(field.rows(), field.cols());
  for (std::int64_t l = 0; l < lines; ++l) {
    const std::int64_t base = line_base(l);
    for (int i = 0; i < N; ++i) {
      // weights sum to zero, so accumulating differences against the center
      // sample makes the derivative of a constant field exactly zero
      Eigen::RowVectorXd center = field.row(base + i * stride);
      Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(field.cols());
      if (ax.periodic) {
        for (size_t t = 0; t < cen.offsets.size(); ++t) {
          int j = ((i + cen.offsets[t]) % N + N) % N;
          acc += cen.weights[t] * (field.row(base + j * stride) - center);
        }
      } else if (i >= band && i < N - band) {
        for (size_t t = 0; t < cen.offsets.size(); ++t)
          acc += cen.weights[t] * (field.row(base + (i + cen.offsets[t]) * stride) - center);
      } else if (i < band) {
        for (size_t t = 0; t < fwd.offsets.size(); ++t)
          acc += fwd.weights[t] * (field.row(base + (i + fwd.offsets[t]) * stride) - center);
      } else {
        // mirrored one-sided stencil; odd derivative orders flip sign
        const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
        for (size_t t = 0; t < fwd.offsets.size(); ++t)
          acc += sgn * fwd.weights[t] * (field.row(base + (i - fwd.offsets[t]) * stride) - center);
      }
      out.row(base + i * stride) = acc / hk;
    }
  }
  return out;
}

Eigen::Array<bool, Eigen::Dynamic, 1> interior_mask(const Grid& grid, int trim) {
  Eigen::Array<bool, Eigen::Dynamic, 1> mask(grid.total());
  if (grid.dim() == 1) {
    const Axis& a = grid.axes[0];
    for (int i = 0; i < a.samples; ++i)
      mask[i] = a.periodic || (i >= trim && i < a.samples - trim);
    return mask;
  }
  const Axis& a0 = grid.axes[0];
  const Axis& a1 = grid.axes[1];
  for (int i = 0; i < a0.samples; ++i) {
    bool ok0 = a0.periodic || (i >= trim && i < a0.samples - trim);
    for (int j = 0; j < a1.samples; ++j) {
      bool ok1 = a1.periodic || (j >= trim && j < a1.samples - trim);
      mask[grid.flat(i, j)] = ok0 && ok1;
    }
  }
  return mask;
}

}  // namespace lapgeo::fd
