#include <arm_neon.h>

#include <cstdint>
#include <limits>

#include "frontal/kernels.hpp"

namespace frontal::kernels::detail {

namespace {

inline float64x2_t squared_distance2(const PointCloud& cloud, const double* q, std::size_t i) {
  float64x2_t acc = vdupq_n_f64(0.0);
  for (int k = 0; k < cloud.dim(); ++k) {
    const float64x2_t d = vsubq_f64(vld1q_f64(cloud.column(k) + i), vdupq_n_f64(q[k]));
    acc = vaddq_f64(acc, vmulq_f64(d, d));
  }
  return acc;
}

inline double squared_distance1(const PointCloud& cloud, const double* q, std::size_t i) {
  double d2 = 0.0;
  for (int k = 0; k < cloud.dim(); ++k) {
    const double d = cloud.column(k)[i] - q[k];
    d2 = d2 + d * d;
  }
  return d2;
}

}  // namespace

Nearest nearest_neon(const PointCloud& cloud, std::span<const double> query) {
  const std::size_t n = cloud.size();
  const double* q = query.data();
  float64x2_t best = vdupq_n_f64(std::numeric_limits<double>::infinity());
  uint64x2_t best_idx = vdupq_n_u64(0);
  uint64x2_t idx = {0, 1};
  const uint64x2_t step = vdupq_n_u64(2);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d2 = squared_distance2(cloud, q, i);
    const uint64x2_t lt = vcltq_f64(d2, best);
    best = vbslq_f64(lt, d2, best);
    best_idx = vbslq_u64(lt, idx, best_idx);
    idx = vaddq_u64(idx, step);
  }
  Nearest out{0, std::numeric_limits<double>::infinity()};
  for (int l = 0; l < 2; ++l) {
    const double d = l == 0 ? vgetq_lane_f64(best, 0) : vgetq_lane_f64(best, 1);
    const auto li = static_cast<std::size_t>(l == 0 ? vgetq_lane_u64(best_idx, 0) : vgetq_lane_u64(best_idx, 1));
    if (d < out.dist2 || (d == out.dist2 && li < out.index)) out = {li, d};
  }
  for (; i < n; ++i) {
    const double d2 = squared_distance1(cloud, q, i);
    if (d2 < out.dist2) out = {i, d2};
  }
  return out;
}

void within_radius_neon(const PointCloud& cloud, std::span<const double> query, double r2,
                        std::vector<std::size_t>& out) {
  const std::size_t n = cloud.size();
  const double* q = query.data();
  const float64x2_t r = vdupq_n_f64(r2);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const uint64x2_t le = vcleq_f64(squared_distance2(cloud, q, i), r);
    if (vgetq_lane_u64(le, 0)) out.push_back(i);
    if (vgetq_lane_u64(le, 1)) out.push_back(i + 1);
  }
  for (; i < n; ++i)
    if (squared_distance1(cloud, q, i) <= r2) out.push_back(i);
}

}  // namespace frontal::kernels::detail
