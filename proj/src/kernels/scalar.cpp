#include "bcdt/kernels.hpp"

#include <limits>

namespace bcdt::kernels {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline double box_at(const FaceRow* faces, std::size_t count, int t) {
  double v = kInf;
  for (std::size_t k = 0; k < count; ++k) {
    const double x = faces[k].row[t];
    const double d = faces[k].greater ? x - faces[k].threshold : faces[k].threshold - x;
    v = lane_min(v, d);
  }
  return v;
}

double window_box(const FaceRow* faces, std::size_t count, int t0, int t1, Reduce reduce) {
  if (reduce == Reduce::Min) {
    double acc = kInf;
    for (int t = t0; t <= t1; ++t)
      acc = lane_min(acc, box_at(faces, count, t));
    return acc;
  }
  double acc = -kInf;
  for (int t = t0; t <= t1; ++t)
    acc = lane_max(acc, box_at(faces, count, t));
  return acc;
}

void box_trace(const FaceRow* faces, std::size_t count, int t0, int t1, double* out) {
  for (int t = t0; t <= t1; ++t)
    out[t - t0] = box_at(faces, count, t);
}

void vmin(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = lane_min(a[i], b[i]);
}

void vmax(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = lane_max(a[i], b[i]);
}

} // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", window_box, box_trace, vmin, vmax};
  return table;
}

} // namespace bcdt::kernels
