#include <cmath>
#include <numbers>

#include "doctest.h"
#include "frontal/curve.hpp"
#include "frontal/exprlang.hpp"

using namespace frontal;
using doctest::Approx;

namespace {

SpaceCurve expr_curve(std::vector<std::string> comps, Interval dom) {
  return SpaceCurve(expr::make_mapdef("c", {"t"}, comps).compile(), dom);
}

}  // namespace

TEST_CASE("Frenet data of a circle and a helix") {
  const FrenetSample c = frenet(circle(2.0), 0.7);
  CHECK(c.kappa == Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(c.tau) < 1e-14);
  const FrenetSample h = frenet(expr_curve({"cos(t)", "sin(t)", "t"}, {-1, 1}), 0.3);
  CHECK(h.kappa == Approx(0.5).epsilon(1e-14));
  CHECK(h.tau == Approx(0.5).epsilon(1e-14));
  const FrenetSample hb = frenet(helix(1.0, 1.0), -2.0);
  CHECK(hb.kappa == Approx(0.5).epsilon(1e-14));
  CHECK(hb.tau == Approx(0.5).epsilon(1e-14));
  Mat3 m;
  m << h.e, h.n, h.b;
  CHECK((m.transpose() * m - Mat3::Identity()).norm() < 1e-12);
  CHECK(m.determinant() == Approx(1.0));
}

TEST_CASE("straight lines have no Frenet frame") {
  CHECK_THROWS_AS(frenet(segment(), 0.5), DomainError);
}

TEST_CASE("Frenet equations hold along an arc-length curve") {
  const SpaceCurve c = arclength_param(expr_curve({"t", "t^2", "t^3/3"}, {-1, 1}));
  const double h = 1e-5;
  for (double s : linspace(c.domain().lo + 0.01, c.domain().hi - 0.01, 17)) {
    const FrenetSample f = frenet(c, s), fp = frenet(c, s + h), fm = frenet(c, s - h);
    CHECK(((fp.e - fm.e) / (2 * h) - f.kappa * f.n).norm() < 1e-5);
    CHECK(((fp.b - fm.b) / (2 * h) + f.tau * f.n).norm() < 1e-5);
  }
}

TEST_CASE("arc-length reparametrization") {
  const SpaceCurve a = arclength_param(expr_curve({"2*t", "0", "0"}, {0, 1}));
  CHECK(a.domain().lo == 0.0);
  CHECK(a.domain().hi == Approx(2.0).epsilon(1e-14));
  const SpaceCurve c = arclength_param(circle(2.0));
  CHECK(c.domain().length() == Approx(4 * std::numbers::pi).epsilon(1e-13));
  // Quadrature oracle: integral of sqrt(1+4t^2) over [0,1].
  const SpaceCurve p = arclength_param(expr_curve({"t", "t^2", "0"}, {0, 1}), 1e-12);
  CHECK(std::abs(p.domain().hi - 1.4789428575445973) < 1e-11);
  for (double s : linspace(0, p.domain().hi, 33)) CHECK(std::abs(p.derivatives(s, 1)[1].norm() - 1.0) < 1e-10);
  // Points agree with the original parametrization.
  CHECK((p(p.domain().hi) - Vec3(1, 1, 0)).norm() < 1e-11);
}

TEST_CASE("arc-length jets match finite differences") {
  const SpaceCurve p = arclength_param(expr_curve({"t", "t^2", "t^3"}, {0, 1}), 1e-12);
  const Map opaque(1, 3, [&](std::span<const double> x, std::span<double> y) { p.map().eval(x, y); });
  const SpaceCurve q(opaque, p.domain());
  for (double s : {0.2, 0.6, 1.1}) {
    const auto a = p.derivatives(s), b = q.derivatives(s);
    CHECK((a[1] - b[1]).norm() < 1e-8);
    CHECK((a[2] - b[2]).norm() < 1e-6);
    CHECK((a[3] - b[3]).norm() < 1e-3);
  }
}

TEST_CASE("arc-length reparametrization is idempotent up to translation") {
  const SpaceCurve once = arclength_param(expr_curve({"t", "t^2", "0"}, {0, 1}), 1e-12);
  const SpaceCurve twice = arclength_param(once, 1e-12);
  CHECK(std::abs(twice.domain().length() - once.domain().length()) < 1e-12);
  for (double s : linspace(0, once.domain().hi, 9))
    CHECK((twice(s - once.domain().lo + twice.domain().lo) - once(s)).norm() < 1e-11);
}

TEST_CASE("anchored arc length") {
  const SpaceCurve h = arclength_param(helix(1.0, 1.0, {-1, 1}), 1e-12, 0.0);
  CHECK(h.domain().lo == Approx(-std::sqrt(2.0)));
  CHECK((h(0.0) - Vec3(1, 0, 0)).norm() < 1e-15);
}

TEST_CASE("planarity") {
  const auto pc = curve_plane(circle(1.0));
  REQUIRE(pc);
  CHECK(std::abs(std::abs(pc->normal.z()) - 1.0) < 1e-14);
  CHECK_FALSE(curve_plane(helix(1.0, 1.0)));
  const auto pp = curve_plane(expr_curve({"t", "t^2", "0"}, {0, 1}));
  REQUIRE(pp);
  CHECK(std::abs(pp->normal.z()) == Approx(1.0));
}

TEST_CASE("symmetry of a circular arc") {
  const SpaceCurve arc = circle(1.0, {0.2, 1.4});
  const auto s = curve_symmetry(arc);
  REQUIRE(s);
  CHECK(s->center == Approx(0.8).epsilon(1e-9));
  const Vec3 mid = arc(0.8);
  CHECK((s->S(mid) - mid).norm() < 1e-9);
  // Explicit check on sampled points.
  for (double t : linspace(0.2, 1.4, 13)) CHECK((s->S(arc(t)) - arc(1.6 - t)).norm() < 1e-9);
}

TEST_CASE("symmetry of a helix segment") {
  const SpaceCurve h = helix(1.0, 1.0, {-1, 1});
  const auto s = curve_symmetry(h);
  REQUIRE(s);
  CHECK(s->det == 1);
  CHECK(std::abs(s->center) < 1e-9);
  // Half turn about the principal normal line at t = 0, i.e. the x-axis.
  CHECK((s->S.Q - Mat3(Vec3(1, -1, -1).asDiagonal())).norm() < 1e-9);
  CHECK(s->S.b.norm() < 1e-9);
  for (double t : linspace(-1, 1, 21)) CHECK((s->S(h(t)) - h(-t)).norm() < 1e-9);
}

TEST_CASE("curves with monotone curvature have no symmetry") {
  const SpaceCurve c = frenet_curve(expr::make_profile("1 + 0.1*u"), Profile::constant(0.3), {-1, 1});
  CHECK_FALSE(curve_symmetry(c));
}

TEST_CASE("Frenet curves realize their curvature and torsion") {
  const Profile k = expr::make_profile("1 + 0.2*sin(u)");
  const SpaceCurve c = frenet_curve(k, Profile::constant(0.5), {-0.3, 0.3});
  for (double s : linspace(-0.3, 0.3, 13)) {
    const FrenetSample f = frenet(c, s);
    CHECK(f.kappa == Approx(k(s)).epsilon(1e-12));
    CHECK(f.tau == Approx(0.5).epsilon(1e-12));
    CHECK(f.speed == Approx(1.0).epsilon(1e-12));
  }
  // Positions are consistent with the stored tangent.
  const double h = 1e-5;
  CHECK(((c(0.1 + h) - c(0.1 - h)) / (2 * h) - frenet(c, 0.1).e).norm() < 1e-9);
}

TEST_CASE("reversal") {
  const SpaceCurve h = helix(1.0, 1.0, {-1, 2});
  const SpaceCurve r = reversed(h);
  CHECK(r.domain().lo == -2.0);
  CHECK((r(0.5) - h(-0.5)).norm() == 0.0);
  const FrenetSample a = frenet(h, 0.4), b = frenet(r, -0.4);
  CHECK((a.e + b.e).norm() < 1e-14);
  CHECK(a.tau == Approx(b.tau));
}
