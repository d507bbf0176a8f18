#pragma once

#include <cstddef>
#include <span>

// Data-parallel inner loops of the robustness semantics. Every kernel has a
// portable scalar reference and optional vector variants (AVX2 on x86-64,
// NEON on aarch64); the best supported one is chosen once at runtime.
// Set BCDT_SIMD=scalar to force the reference path.

namespace bcdt::kernels {

/// One face of a box predicate bound to a concrete signal row.
struct FaceRow {
  const double* row;
  double threshold;
  bool greater; ///< true: row[t] > threshold, false: row[t] <= threshold
};

enum class Reduce { Min, Max };

struct KernelTable {
  const char* name;
  /// Reduces b(t) = min_k face_k(t) over t in [t0, t1] with min (G) or max (F).
  double (*window_box)(const FaceRow* faces, std::size_t count, int t0, int t1, Reduce reduce);
  /// out[t - t0] = min_k face_k(t) for t in [t0, t1].
  void (*box_trace)(const FaceRow* faces, std::size_t count, int t0, int t1, double* out);
  void (*elementwise_min)(const double* a, const double* b, double* out, std::size_t n);
  void (*elementwise_max)(const double* a, const double* b, double* out, std::size_t n);
};

const KernelTable& scalar_kernels();

/// Null when not compiled in or not supported by this CPU.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

/// Dispatch target, resolved on first call.
const KernelTable& active_kernels();

inline double window_box(std::span<const FaceRow> faces, int t0, int t1, Reduce reduce) {
  return active_kernels().window_box(faces.data(), faces.size(), t0, t1, reduce);
}

inline void box_trace(std::span<const FaceRow> faces, int t0, int t1, std::span<double> out) {
  active_kernels().box_trace(faces.data(), faces.size(), t0, t1, out.data());
}

inline void elementwise_min(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  active_kernels().elementwise_min(a.data(), b.data(), out.data(), out.size());
}

inline void elementwise_max(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  active_kernels().elementwise_max(a.data(), b.data(), out.data(), out.size());
}

// Lane semantics shared by all variants: min(a, b) yields b unless a < b,
// which is what MINPD/MAXPD do, so vector and scalar paths agree exactly.
inline double lane_min(double a, double b) { return a < b ? a : b; }
inline double lane_max(double a, double b) { return a > b ? a : b; }

} // namespace bcdt::kernels
