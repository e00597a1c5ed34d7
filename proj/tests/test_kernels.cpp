#include <cstring>
#include <string>
#include <random>

#include "doctest.h"
#include "frontal/kernels.hpp"

using namespace frontal::kernels;

namespace {

PointCloud random_cloud(std::mt19937& rng, std::size_t n, int dim) {
  std::normal_distribution<double> d;
  PointCloud c(dim);
  std::vector<double> p(dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& x : p) x = d(rng);
    c.push_back(p);
  }
  return c;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("nearest on a tiny cloud") {
  PointCloud c(3);
  c.push_back(std::vector<double>{0, 0, 0});
  c.push_back(std::vector<double>{1, 0, 0});
  c.push_back(std::vector<double>{0, 2, 0});
  const double q[] = {0.9, 0.1, 0};
  const Nearest n = nearest(c, q);
  CHECK(n.index == 1);
  CHECK(n.dist2 == doctest::Approx(0.02));
  CHECK(within_radius(c, q, 1.0) == std::vector<std::size_t>{0, 1});
}

TEST_CASE("ties resolve to the lowest index in every variant") {
  PointCloud c(2);
  for (int i = 0; i < 11; ++i) c.push_back(std::vector<double>{i % 2 ? 1.0 : -1.0, 0.0});
  const double q[] = {0.0, 0.0};
  for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) CHECK(nearest(isa, c, q).index == 0);
}

TEST_CASE("SIMD variants match the scalar reference bit for bit") {
  std::mt19937 rng(2024);
  MESSAGE("active isa: " << std::string(isa_name(active_isa())));
  for (int dim : {1, 2, 3, 5}) {
    for (std::size_t n : {1u, 3u, 4u, 7u, 64u, 1001u}) {
      const PointCloud c = random_cloud(rng, n, dim);
      const PointCloud qs = random_cloud(rng, 25, dim);
      for (std::size_t k = 0; k < qs.size(); ++k) {
        std::vector<double> q(dim);
        for (int j = 0; j < dim; ++j) q[j] = qs.at(k, j);
        const Nearest ref = detail::nearest_scalar(c, q);
        std::vector<std::size_t> ref_r;
        detail::within_radius_scalar(c, q, 0.8, ref_r);
        for (Isa isa : {Isa::avx2, Isa::neon}) {
          if (!isa_available(isa)) continue;
          const Nearest got = nearest(isa, c, q);
          CHECK(got.index == ref.index);
          CHECK(same_bits(got.dist2, ref.dist2));
          CHECK(within_radius(isa, c, q, 0.8) == ref_r);
        }
      }
    }
  }
}

TEST_CASE("dimension and emptiness are checked") {
  PointCloud c(3);
  const double q[] = {0, 0, 0};
  CHECK_THROWS(nearest(c, q));
  c.push_back(std::vector<double>{1, 2, 3});
  const double bad[] = {0, 0};
  CHECK_THROWS(nearest(c, bad));
}
