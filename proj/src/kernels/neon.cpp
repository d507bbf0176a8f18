#include "bcdt/kernels.hpp"

#include <arm_neon.h>

#include <limits>

namespace bcdt::kernels::neon {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// vminq_f64 orders -0 below +0 and propagates NaN; select on a compare
// instead so lanes follow lane_min exactly.
inline float64x2_t min2(float64x2_t a, float64x2_t b) { return vbslq_f64(vcltq_f64(a, b), a, b); }
inline float64x2_t max2(float64x2_t a, float64x2_t b) { return vbslq_f64(vcgtq_f64(a, b), a, b); }

inline float64x2_t box_at2(const FaceRow* faces, std::size_t count, int t) {
  float64x2_t v = vdupq_n_f64(kInf);
  for (std::size_t k = 0; k < count; ++k) {
    const float64x2_t x = vld1q_f64(faces[k].row + t);
    const float64x2_t pi = vdupq_n_f64(faces[k].threshold);
    v = min2(v, faces[k].greater ? vsubq_f64(x, pi) : vsubq_f64(pi, x));
  }
  return v;
}

inline double box_at1(const FaceRow* faces, std::size_t count, int t) {
  double v = kInf;
  for (std::size_t k = 0; k < count; ++k) {
    const double x = faces[k].row[t];
    v = lane_min(v, faces[k].greater ? x - faces[k].threshold : faces[k].threshold - x);
  }
  return v;
}

double window_box(const FaceRow* faces, std::size_t count, int t0, int t1, Reduce reduce) {
  int t = t0;
  const bool is_min = reduce == Reduce::Min;
  float64x2_t acc = vdupq_n_f64(is_min ? kInf : -kInf);
  for (; t + 1 <= t1; t += 2)
    acc = is_min ? min2(acc, box_at2(faces, count, t)) : max2(acc, box_at2(faces, count, t));
  double r = is_min ? lane_min(vgetq_lane_f64(acc, 0), vgetq_lane_f64(acc, 1))
                    : lane_max(vgetq_lane_f64(acc, 0), vgetq_lane_f64(acc, 1));
  for (; t <= t1; ++t)
    r = is_min ? lane_min(r, box_at1(faces, count, t)) : lane_max(r, box_at1(faces, count, t));
  return r;
}

void box_trace(const FaceRow* faces, std::size_t count, int t0, int t1, double* out) {
  int t = t0;
  for (; t + 1 <= t1; t += 2)
    vst1q_f64(out + (t - t0), box_at2(faces, count, t));
  for (; t <= t1; ++t)
    out[t - t0] = box_at1(faces, count, t);
}

void vmin(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(out + i, min2(vld1q_f64(a + i), vld1q_f64(b + i)));
  for (; i < n; ++i)
    out[i] = lane_min(a[i], b[i]);
}

void vmax(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(out + i, max2(vld1q_f64(a + i), vld1q_f64(b + i)));
  for (; i < n; ++i)
    out[i] = lane_max(a[i], b[i]);
}

} // namespace

const KernelTable& table() {
  static const KernelTable t{"neon", window_box, box_trace, vmin, vmax};
  return t;
}

} // namespace bcdt::kernels::neon
