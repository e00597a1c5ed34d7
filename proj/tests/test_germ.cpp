#include <cmath>

#include "doctest.h"
#include "frontal/catalog.hpp"
#include "frontal/germ.hpp"

using namespace frontal;
using doctest::Approx;

namespace {

// Same germ with the analytic normal dropped, so the limit construction runs.
SurfaceGerm without_normal(const SurfaceGerm& g) {
  SurfaceGerm h(g.name(), g.map(), g.domain(), g.base(), Map{}, g.kind());
  h.formula = g.formula;
  return h;
}

// Same germ evaluated without exact jets.
SurfaceGerm opaque(const SurfaceGerm& g) {
  const Map& m = g.map();
  Map f(2, 3, [m](std::span<const double> x, std::span<double> out) { m.eval(x, out); });
  return SurfaceGerm(g.name(), f, g.domain(), g.base());
}

}  // namespace

TEST_CASE("normal at the base point") {
  CHECK((normal_field(catalog::cuspidal_edge()).at_base() - Vec3(0, 1, 0)).norm() < 1e-14);
  CHECK((normal_field(catalog::swallowtail()).at_base() - Vec3(1, 0, 0)).norm() < 1e-14);
  CHECK((normal_field(catalog::plane()).at_base() - Vec3(0, 0, 1)).norm() < 1e-14);
  CHECK((normal_field(catalog::cuspidal_cross_cap()).at_base() - Vec3(0, 1, 0)).norm() < 1e-14);

  SUBCASE("limit construction agrees with the closed forms") {
    CHECK((normal_field(without_normal(catalog::cuspidal_edge())).at_base() - Vec3(0, 1, 0)).norm() < 1e-9);
    CHECK((normal_field(without_normal(catalog::swallowtail())).at_base() - Vec3(1, 0, 0)).norm() < 1e-9);
    CHECK((normal_field(without_normal(catalog::ccr_example())).at_base() - Vec3(0, 0, 1)).norm() < 1e-9);
    CHECK((normal_field(opaque(catalog::cuspidal_edge())).at_base() - Vec3(0, 1, 0)).norm() < 1e-6);
  }
}

TEST_CASE("cross cap is not a frontal") {
  CHECK_THROWS_AS(normal_field(catalog::cross_cap()), NotFrontal);
}

TEST_CASE("normal annihilates the tangents on probe grids") {
  const std::vector<SurfaceGerm> germs{
      catalog::cuspidal_edge(), catalog::swallowtail(), catalog::cuspidal_cross_cap(),
      catalog::ccr_example(), catalog::sw_example(1, 1), catalog::ms_edge("u^2", "1", "u", "1"),
      without_normal(catalog::swallowtail())};
  for (const auto& g : germs) {
    const NormalField nu(g);
    double worst = 0.0, unit = 0.0;
    for (double u = -0.9; u <= 0.9; u += 0.15)
      for (double v = -0.9; v <= 0.9; v += 0.15) {
        const Vec2 q(u, v);
        const Vec3 n = nu(q);
        const auto [fu, fv] = g.tangents(q);
        worst = std::max({worst, std::abs(n.dot(fu)), std::abs(n.dot(fv))});
        unit = std::max(unit, std::abs(n.norm() - 1.0));
      }
    INFO(g.name());
    CHECK(worst < 1e-8);
    CHECK(unit < 1e-10);
  }
}

TEST_CASE("area density") {
  const NormalField c(catalog::cuspidal_edge());
  CHECK(area_density(c, {0, 0}) == 0.0);
  CHECK(area_density(c, {0, 1}) == Approx(std::sqrt(13.0)).epsilon(1e-14));
  CHECK(area_density(catalog::plane(), {0.3, -0.2}) == Approx(1.0));
  // sign change across the singular line
  for (double u : {-0.5, 0.0, 0.5}) {
    CHECK(area_density(c, {u, 1e-3}) > 0.0);
    CHECK(area_density(c, {u, -1e-3}) < 0.0);
  }
}

TEST_CASE("singular curve of the cuspidal edge") {
  const SingularCurve sc = singular_curve(NormalField(catalog::cuspidal_edge()));
  REQUIRE(sc.samples.size() > 200);
  CHECK(sc.branches.size() == 1);
  double worst = 0.0, gap = 0.0;
  for (std::size_t i = 0; i < sc.samples.size(); ++i) {
    const auto& s = sc.samples[i];
    worst = std::max(worst, std::abs(s.q.y()));
    CHECK(s.nondegenerate);
    CHECK(s.type == 1);
    CHECK((s.null_dir - Vec2(0, 1)).norm() < 1e-10);
    CHECK(s.grad.y() == Approx(2.0).epsilon(1e-8));
    if (i > 0) gap = std::max(gap, (s.q - sc.samples[i - 1].q).norm());
  }
  CHECK(worst < 1e-8);
  CHECK(gap < 0.02);
}

TEST_CASE("singular curve of the swallowtail") {
  const SingularCurve sc = singular_curve(NormalField(catalog::swallowtail()));
  REQUIRE(!sc.empty());
  double worst = 0.0, min_v = 1.0, max_v = -1.0;
  for (const auto& s : sc.samples) {
    worst = std::max(worst, std::abs(s.q.x() + 6.0 * s.q.y() * s.q.y()));
    min_v = std::min(min_v, s.q.y());
    max_v = std::max(max_v, s.q.y());
    if (s.q.norm() < 1e-10) CHECK(s.type == 2);
    else if (std::abs(s.q.y()) > 1e-3) CHECK(s.type == 1);
  }
  CHECK(worst < 1e-8);
  CHECK(min_v < -0.40);
  CHECK(max_v > 0.40);
  CHECK(singular_type(NormalField(catalog::swallowtail()), {0, 0}) == 2);
  CHECK(singular_type(NormalField(catalog::swallowtail()), {-6 * 0.04, 0.2}) == 1);
}

TEST_CASE("singular curve of the cuspidal cross cap and the plane") {
  const SingularCurve sc = singular_curve(NormalField(catalog::cuspidal_cross_cap()));
  REQUIRE(!sc.empty());
  for (const auto& s : sc.samples) CHECK(std::abs(s.q.y()) < 1e-8);
  CHECK(singular_curve(NormalField(catalog::plane())).empty());
}

TEST_CASE("limiting normal curvature") {
  CHECK(std::abs(limiting_normal_curvature(NormalField(catalog::ccr_example()), {0, 0})) ==
        Approx(2.0).epsilon(1e-10));
  CHECK(std::abs(limiting_normal_curvature(NormalField(catalog::cuspidal_edge()), {0, 0})) < 1e-12);
  CHECK(std::abs(limiting_normal_curvature(NormalField(catalog::cuspidal_cross_cap()), {0, 0})) < 1e-12);
  CHECK(std::abs(limiting_normal_curvature(NormalField(without_normal(catalog::ccr_example())), {0, 0})) ==
        Approx(2.0).epsilon(1e-8));
  CHECK_THROWS_AS(limiting_normal_curvature(NormalField(catalog::swallowtail()), {0, 0}), PreconditionError);
}

TEST_CASE("distinguished frame") {
  const FrameReport c = distinguished_frame(NormalField(catalog::cuspidal_edge()), {0, 0});
  CHECK((c.planes.pi0.normal.cwiseAbs() - Vec3(0, 1, 0)).norm() < 1e-12);
  CHECK((c.planes.pi1.normal.cwiseAbs() - Vec3(0, 0, 1)).norm() < 1e-12);
  CHECK((c.planes.pi2.normal.cwiseAbs() - Vec3(1, 0, 0)).norm() < 1e-12);
  CHECK((c.planes.l2.direction.cwiseAbs() - Vec3(1, 0, 0)).norm() < 1e-12);
  REQUIRE(c.cuspidal_direction);
  CHECK((*c.cuspidal_direction - Vec3(1, 0, 0)).norm() < 1e-12);

  const FrameReport s = distinguished_frame(NormalField(catalog::swallowtail()), {0, 0});
  CHECK((s.planes.pi2.normal.cwiseAbs() - Vec3(0, 1, 0)).norm() < 1e-12);
  CHECK(!s.cuspidal_direction);

  const FrameReport w = distinguished_frame(NormalField(catalog::cuspidal_cross_cap()), {0, 0});
  CHECK((w.planes.pi0.normal.cwiseAbs() - Vec3(0, 1, 0)).norm() < 1e-12);
  CHECK((w.planes.pi1.normal.cwiseAbs() - Vec3(0, 0, 1)).norm() < 1e-12);

  CHECK_THROWS_AS(distinguished_frame(NormalField(catalog::cuspidal_edge()), {0, 0.5}), PreconditionError);
}

TEST_CASE("frame after a rotation of the parameter plane") {
  // f_C(R q) for a rotation R: the null direction is no longer d/dv.
  const SurfaceGerm g = catalog::from_expressions(
      "rotated", {"(0.6*u+0.8*v)^2", "(0.6*u+0.8*v)^3", "-0.8*u+0.6*v"});
  const FrameReport r = distinguished_frame(NormalField(g), {0, 0});
  CHECK((r.null_dir - Vec2(0.6, 0.8)).norm() < 1e-10);
  CHECK((r.planes.pi1.normal.cwiseAbs() - Vec3(0, 0, 1)).norm() < 1e-10);
  REQUIRE(r.cuspidal_direction);
  CHECK((*r.cuspidal_direction - Vec3(1, 0, 0)).norm() < 1e-10);
}

TEST_CASE("point classification") {
  CHECK(classify_point(NormalField(catalog::cuspidal_edge()), {0.3, 0}) == PointClass::cuspidal_edge);
  CHECK(classify_point(NormalField(catalog::swallowtail()), {0, 0}) == PointClass::swallowtail);
  CHECK(classify_point(NormalField(catalog::cuspidal_cross_cap()), {0, 0}) == PointClass::cuspidal_cross_cap);
  CHECK(classify_point(NormalField(catalog::cuspidal_cross_cap()), {0.4, 0}) == PointClass::cuspidal_edge);
  CHECK(classify_point(NormalField(catalog::ccr_example()), {0, 0}) == PointClass::cuspidal_cross_cap);
  CHECK(classify_point(NormalField(catalog::sw_example(1, 1)), {0, 0}) == PointClass::swallowtail);
  CHECK(classify_point(NormalField(catalog::plane()), {0, 0}) == PointClass::regular);
}

TEST_CASE("first fundamental form") {
  const auto p = first_fundamental_form(catalog::plane(), {0.2, 0.7});
  CHECK(p.E == 1.0);
  CHECK(p.F == 0.0);
  CHECK(p.G == 1.0);
  for (double v : {-0.7, 0.0, 0.4}) {
    const auto c = first_fundamental_form(catalog::cuspidal_edge(), {0.3, v});
    CHECK(c.E == Approx(1.0));
    CHECK(c.F == Approx(0.0));
    CHECK(c.G == Approx(4 * v * v + 9 * v * v * v * v).epsilon(1e-14));
  }
  const SurfaceGerm s = catalog::swallowtail();
  for (double u = -0.8; u <= 0.8; u += 0.4)
    for (double v = -0.8; v <= 0.8; v += 0.4) {
      const auto f = first_fundamental_form(s, {u, v});
      CHECK(f.E >= 0.0);
      CHECK(f.G >= 0.0);
      CHECK(f.E * f.G - f.F * f.F >= -1e-12);
    }
}

TEST_CASE("catalog lookup") {
  CHECK(catalog::by_name("swallowtail").formula ==
        std::vector<std::string>{"3*v^4+u*v^2", "4*v^3+2*u*v", "u"});
  const SurfaceGerm sw = catalog::by_name("sw_example(1, 1)");
  CHECK((sw({0.0, 1.0}) - Vec3(0.5 - 0.125, 1.0 / 3.0, 0.0)).norm() < 1e-15);
  const SurfaceGerm ms = catalog::by_name("ms_edge(u^2, 1, u, 1)");
  CHECK((ms({0.5, 0.5}) - Vec3(0.5, 0.5, 0.25 + 0.5 * 0.5 * 0.25 + 0.125)).norm() < 1e-15);
  CHECK_THROWS_AS(catalog::by_name("trefoil"), PreconditionError);
  CHECK_THROWS_AS(catalog::by_name("ms_edge(1,2)"), PreconditionError);
}
