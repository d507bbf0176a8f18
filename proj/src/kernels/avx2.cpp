// Compiled with -mavx2; only reached after a runtime CPU check.
#include "bcdt/kernels.hpp"

#include <immintrin.h>

#include <limits>

namespace bcdt::kernels::avx2 {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline __m256d box_at4(const FaceRow* faces, std::size_t count, int t) {
  __m256d v = _mm256_set1_pd(kInf);
  for (std::size_t k = 0; k < count; ++k) {
    const __m256d x = _mm256_loadu_pd(faces[k].row + t);
    const __m256d pi = _mm256_set1_pd(faces[k].threshold);
    const __m256d d = faces[k].greater ? _mm256_sub_pd(x, pi) : _mm256_sub_pd(pi, x);
    v = _mm256_min_pd(v, d);
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

inline double hmin(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return lane_min(lane_min(lanes[0], lanes[1]), lane_min(lanes[2], lanes[3]));
}

inline double hmax(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return lane_max(lane_max(lanes[0], lanes[1]), lane_max(lanes[2], lanes[3]));
}

double window_box(const FaceRow* faces, std::size_t count, int t0, int t1, Reduce reduce) {
  int t = t0;
  if (reduce == Reduce::Min) {
    __m256d acc = _mm256_set1_pd(kInf);
    for (; t + 3 <= t1; t += 4)
      acc = _mm256_min_pd(acc, box_at4(faces, count, t));
    double r = hmin(acc);
    for (; t <= t1; ++t)
      r = lane_min(r, box_at1(faces, count, t));
    return r;
  }
  __m256d acc = _mm256_set1_pd(-kInf);
  for (; t + 3 <= t1; t += 4)
    acc = _mm256_max_pd(acc, box_at4(faces, count, t));
  double r = hmax(acc);
  for (; t <= t1; ++t)
    r = lane_max(r, box_at1(faces, count, t));
  return r;
}

void box_trace(const FaceRow* faces, std::size_t count, int t0, int t1, double* out) {
  int t = t0;
  for (; t + 3 <= t1; t += 4)
    _mm256_storeu_pd(out + (t - t0), box_at4(faces, count, t));
  for (; t <= t1; ++t)
    out[t - t0] = box_at1(faces, count, t);
}

void vmin(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_min_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i)
    out[i] = lane_min(a[i], b[i]);
}

void vmax(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_max_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i)
    out[i] = lane_max(a[i], b[i]);
}

} // namespace

const KernelTable& table() {
  static const KernelTable t{"avx2", window_box, box_trace, vmin, vmax};
  return t;
}

} // namespace bcdt::kernels::avx2
