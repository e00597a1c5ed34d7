#include "frontal/kernels.hpp"

#include <limits>
#include <stdexcept>

#include "frontal/numkit.hpp"

namespace frontal::kernels {

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(FRONTAL_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#if defined(FRONTAL_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() {
  static const Isa isa = [] {
    if (isa_available(Isa::avx2)) return Isa::avx2;
    if (isa_available(Isa::neon)) return Isa::neon;
    return Isa::scalar;
  }();
  return isa;
}

PointCloud::PointCloud(int dim) : dim_(dim), coords_(dim) {
  if (dim < 1) throw PreconditionError("PointCloud dimension must be positive");
}

void PointCloud::reserve(std::size_t n) {
  for (auto& c : coords_) c.reserve(n);
}

void PointCloud::push_back(std::span<const double> p) {
  if (static_cast<int>(p.size()) != dim_) throw PreconditionError("PointCloud point has wrong dimension");
  for (int k = 0; k < dim_; ++k) coords_[k].push_back(p[k]);
  ++size_;
}

namespace detail {

Nearest nearest_scalar(const PointCloud& cloud, std::span<const double> query) {
  Nearest best{0, std::numeric_limits<double>::infinity()};
  const int dim = cloud.dim();
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    double d2 = 0.0;
    for (int k = 0; k < dim; ++k) {
      const double d = cloud.column(k)[i] - query[k];
      d2 = d2 + d * d;
    }
    if (d2 < best.dist2) best = {i, d2};
  }
  return best;
}

void within_radius_scalar(const PointCloud& cloud, std::span<const double> query, double r2,
                          std::vector<std::size_t>& out) {
  const int dim = cloud.dim();
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    double d2 = 0.0;
    for (int k = 0; k < dim; ++k) {
      const double d = cloud.column(k)[i] - query[k];
      d2 = d2 + d * d;
    }
    if (d2 <= r2) out.push_back(i);
  }
}

}  // namespace detail

namespace {

void check(const PointCloud& cloud, std::span<const double> query) {
  if (static_cast<int>(query.size()) != cloud.dim()) throw PreconditionError("query has wrong dimension");
  if (cloud.size() == 0) throw PreconditionError("empty point cloud");
}

}  // namespace

Nearest nearest(Isa isa, const PointCloud& cloud, std::span<const double> query) {
  check(cloud, query);
  switch (isa) {
#if defined(FRONTAL_HAVE_AVX2)
    case Isa::avx2:
      if (isa_available(Isa::avx2)) return detail::nearest_avx2(cloud, query);
      break;
#endif
#if defined(FRONTAL_HAVE_NEON)
    case Isa::neon: return detail::nearest_neon(cloud, query);
#endif
    default: break;
  }
  return detail::nearest_scalar(cloud, query);
}

Nearest nearest(const PointCloud& cloud, std::span<const double> query) {
  return nearest(active_isa(), cloud, query);
}

std::vector<std::size_t> within_radius(Isa isa, const PointCloud& cloud, std::span<const double> query,
                                       double r2) {
  if (static_cast<int>(query.size()) != cloud.dim()) throw PreconditionError("query has wrong dimension");
  std::vector<std::size_t> out;
  switch (isa) {
#if defined(FRONTAL_HAVE_AVX2)
    case Isa::avx2:
      if (isa_available(Isa::avx2)) {
        detail::within_radius_avx2(cloud, query, r2, out);
        return out;
      }
      break;
#endif
#if defined(FRONTAL_HAVE_NEON)
    case Isa::neon:
      detail::within_radius_neon(cloud, query, r2, out);
      return out;
#endif
    default: break;
  }
  detail::within_radius_scalar(cloud, query, r2, out);
  return out;
}

std::vector<std::size_t> within_radius(const PointCloud& cloud, std::span<const double> query, double r2) {
  return within_radius(active_isa(), cloud, query, r2);
}

}  // namespace frontal::kernels
