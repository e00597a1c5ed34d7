// Built with -mavx2 (no -mfma): the squared-distance sums must round exactly
// like the scalar reference.
#include <immintrin.h>

#include <cstdint>
#include <limits>

#include "frontal/kernels.hpp"

namespace frontal::kernels::detail {

namespace {

inline __m256d squared_distance4(const PointCloud& cloud, const double* q, std::size_t i) {
  __m256d acc = _mm256_setzero_pd();
  for (int k = 0; k < cloud.dim(); ++k) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(cloud.column(k) + i), _mm256_set1_pd(q[k]));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
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

Nearest nearest_avx2(const PointCloud& cloud, std::span<const double> query) {
  const std::size_t n = cloud.size();
  const double* q = query.data();
  __m256d best = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  __m256i best_idx = _mm256_setzero_si256();
  __m256i idx = _mm256_set_epi64x(3, 2, 1, 0);
  const __m256i step = _mm256_set1_epi64x(4);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d2 = squared_distance4(cloud, q, i);
    const __m256d lt = _mm256_cmp_pd(d2, best, _CMP_LT_OQ);
    best = _mm256_blendv_pd(best, d2, lt);
    best_idx = _mm256_castpd_si256(
        _mm256_blendv_pd(_mm256_castsi256_pd(best_idx), _mm256_castsi256_pd(idx), lt));
    idx = _mm256_add_epi64(idx, step);
  }
  alignas(32) double lane_d[4];
  alignas(32) std::int64_t lane_i[4];
  _mm256_store_pd(lane_d, best);
  _mm256_store_si256(reinterpret_cast<__m256i*>(lane_i), best_idx);
  Nearest out{0, std::numeric_limits<double>::infinity()};
  for (int l = 0; l < 4; ++l) {
    const auto li = static_cast<std::size_t>(lane_i[l]);
    if (lane_d[l] < out.dist2 || (lane_d[l] == out.dist2 && li < out.index)) out = {li, lane_d[l]};
  }
  for (; i < n; ++i) {
    const double d2 = squared_distance1(cloud, q, i);
    if (d2 < out.dist2) out = {i, d2};
  }
  return out;
}

void within_radius_avx2(const PointCloud& cloud, std::span<const double> query, double r2,
                        std::vector<std::size_t>& out) {
  const std::size_t n = cloud.size();
  const double* q = query.data();
  const __m256d r = _mm256_set1_pd(r2);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(squared_distance4(cloud, q, i), r, _CMP_LE_OQ));
    if (mask == 0) continue;
    for (int l = 0; l < 4; ++l)
      if (mask & (1 << l)) out.push_back(i + l);
  }
  for (; i < n; ++i)
    if (squared_distance1(cloud, q, i) <= r2) out.push_back(i);
}

}  // namespace frontal::kernels::detail
