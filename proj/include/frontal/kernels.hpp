#pragma once

// Point-cloud proximity kernels. Each kernel has a scalar reference and
// vectorised variants (AVX2 on x86-64, NEON on AArch64); the public entry
// points dispatch on the CPU at runtime. All variants accumulate squared
// distances in the same order without FMA, so results are bit-identical.

#include <cstddef>
#include <span>
#include <vector>

namespace frontal::kernels {

enum class Isa { scalar, avx2, neon };

const char* isa_name(Isa isa);

/// Best variant supported by this CPU and build.
Isa active_isa();

/// True if `isa` was compiled in and the CPU supports it.
bool isa_available(Isa isa);

/// Structure-of-arrays point set in `dim` dimensions.
class PointCloud {
 public:
  explicit PointCloud(int dim = 3);

  int dim() const { return dim_; }
  std::size_t size() const { return size_; }
  void reserve(std::size_t n);
  void push_back(std::span<const double> p);
  double at(std::size_t i, int k) const { return coords_[k][i]; }
  const double* column(int k) const { return coords_[k].data(); }

 private:
  int dim_;
  std::size_t size_ = 0;
  std::vector<std::vector<double>> coords_;
};

struct Nearest {
  std::size_t index = 0;
  double dist2 = 0.0;
};

/// Nearest point to `query`; ties resolve to the lowest index.
Nearest nearest(const PointCloud& cloud, std::span<const double> query);
Nearest nearest(Isa isa, const PointCloud& cloud, std::span<const double> query);

/// Indices (ascending) of points with squared distance <= r2.
std::vector<std::size_t> within_radius(const PointCloud& cloud, std::span<const double> query, double r2);
std::vector<std::size_t> within_radius(Isa isa, const PointCloud& cloud, std::span<const double> query,
                                       double r2);

namespace detail {
Nearest nearest_scalar(const PointCloud& cloud, std::span<const double> query);
void within_radius_scalar(const PointCloud& cloud, std::span<const double> query, double r2,
                          std::vector<std::size_t>& out);
#if defined(FRONTAL_HAVE_AVX2)
Nearest nearest_avx2(const PointCloud& cloud, std::span<const double> query);
void within_radius_avx2(const PointCloud& cloud, std::span<const double> query, double r2,
                        std::vector<std::size_t>& out);
#endif
#if defined(FRONTAL_HAVE_NEON)
Nearest nearest_neon(const PointCloud& cloud, std::span<const double> query);
void within_radius_neon(const PointCloud& cloud, std::span<const double> query, double r2,
                        std::vector<std::size_t>& out);
#endif
}  // namespace detail

}  // namespace frontal::kernels
