#include <cmath>
#include <numbers>

#include "doctest.h"
#include "frontal/catalog.hpp"
#include "frontal/exprlang.hpp"
#include "frontal/normalform.hpp"

using namespace frontal;
using doctest::Approx;

namespace {

Map plane_curve(std::vector<std::string> comps) { return expr::make_mapdef("s", {"t"}, comps).compile(); }

EdgeNormalForm circle_form(double theta, const std::string& a = "1", const std::string& b = "1") {
  return make_normal_form(circle(1.0, {-1.0, 1.0}), Profile::constant(theta), scalar_field(a), scalar_field(b));
}

}  // namespace

TEST_CASE("half-arc-length of the standard cusp") {
  const Map s = plane_curve({"t^2", "t^3"});
  const double w1 = std::sqrt((std::pow(13.0, 1.5) - 8.0) / 27.0);
  CHECK(half_arclength(s, 1.0) == Approx(w1).epsilon(1e-13));
  CHECK(w1 == Approx(1.1998791078152626).epsilon(1e-15));
  CHECK(half_arclength(s, 0.0) == 0.0);
  CHECK(half_arclength(s, -1.0) == Approx(-w1).epsilon(1e-13));
  CHECK_THROWS_AS(half_arclength(plane_curve({"t^3", "t^4"}), 0.5), PreconditionError);
  CHECK_THROWS_AS(half_arclength(plane_curve({"t", "t^2"}), 0.5), PreconditionError);
}

TEST_CASE("half-arc-length is odd under reversal of the cusp parameter") {
  const Map s1 = plane_curve({"t^2+t^3", "t^3-t^4/2"});
  const Map s2 = plane_curve({"t^2-t^3", "-t^3-t^4/2"});  // s1(-t)
  for (double t = -0.6; t <= 0.6; t += 0.05) {
    const double w1 = half_arclength(s1, t), w2 = half_arclength(s2, -t);
    CHECK(std::abs(w1 + w2) < 1e-8);
    if (t > 1e-9) CHECK(half_arclength(s1, t) > half_arclength(s1, t - 0.01));
  }
}

TEST_CASE("section of the cuspidal edge is the standard cusp") {
  const SectionalCusp sc = sectional_cusp(catalog::cuspidal_edge(), 0.0, 0.3);
  CHECK(std::abs(sc.theta) < 1e-12);
  CHECK((sc.plane.normal.cwiseAbs() - Vec3(0, 0, 1)).norm() < 1e-12);
  for (std::size_t i = 0; i < sc.w.size(); ++i) {
    const Vec2 p = sc.points[i];
    CHECK(std::abs(p.y() * p.y() - p.x() * p.x() * p.x()) < 1e-12);
    CHECK(p.x() >= 0.0);
  }
  CHECK_THROWS_AS(sectional_cusp(catalog::cuspidal_edge(), 5.0), PreconditionError);
  CHECK_THROWS_AS(to_normal_form(catalog::cuspidal_edge()), PreconditionError);
}

TEST_CASE("from_normal_form") {
  const EdgeNormalForm nf = circle_form(0.3);
  const SurfaceGerm g = from_normal_form(nf);
  for (double u = -1.0; u <= 1.0; u += 0.25) {
    CHECK((g({u, 0.0}) - nf.crease(u)).norm() == 0.0);
    const auto F = first_fundamental_form(g, {u, 0.0});
    CHECK(F.E == Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(F.F) < 1e-14);
    CHECK(std::abs(F.G) < 1e-14);
  }
  const NormalField nu(g);
  for (double u = -0.9; u <= 0.9; u += 0.3)
    for (double v = -0.15; v <= 0.15; v += 0.05) {
      const auto [fu, fv] = g.tangents({u, v});
      const Vec3 n = nu({u, v});
      CHECK(std::abs(n.dot(fu)) < 1e-10);
      CHECK(std::abs(n.dot(fv)) < 1e-10);
    }
  // lambda changes sign across v = 0 only
  CHECK(nu.lambda({0.2, 0.05}) * nu.lambda({0.2, -0.05}) < 0.0);
  CHECK(std::abs(nu.lambda({0.2, 0.0})) < 1e-14);
  // sections open along d, with sigma''(0)/2 = a d and no w^2 term along dperp
  const SectionalCusp sc = sectional_cusp(g, 0.4, 0.1);
  CHECK(sc.theta == Approx(0.3).epsilon(1e-10));
  CHECK(sc.a_values[sc.w.size() / 2] == 1.0);
  CHECK(sc.b0 == Approx(1.0).epsilon(1e-9));
  // the section is (v^2, v^3) in (d, dperp) with w^2 = ((4 + 9v^2)^{3/2} - 8) / 27
  for (std::size_t i = 0; i < sc.w.size(); ++i) {
    const double w = sc.w[i];
    if (w == 0.0) continue;
    const double v = invert_monotone(
        [](double x) { return std::copysign((std::pow(4 + 9 * x * x, 1.5) - 8) / 27, x); }, std::copysign(w * w, w),
        {-1.0, 1.0}, 1e-16);
    CHECK(sc.a_values[i] == Approx(v * v / (w * w)).epsilon(1e-8));
    CHECK(sc.b_values[i] == Approx(v * v * v / (w * w * w)).epsilon(1e-7));
  }
}

TEST_CASE("round trip on a circle with constant data") {
  const EdgeNormalForm nf = circle_form(0.3);
  const EdgeNormalForm back = to_normal_form(from_normal_form(nf));
  double eth = 0.0, eks = 0.0, ea = 0.0, eb = 0.0;
  for (double s : back.stations) {
    const EdgeInvariants x = edge_invariants(back, s), y = edge_invariants(nf, s);
    eth = std::max(eth, std::abs(x.theta - y.theta));
    eks = std::max(eks, std::abs(x.kappa_s - y.kappa_s));
    const std::array<double, 2> q{s, 0.0};
    ea = std::max(ea, std::abs(back.a(q)[0] - 1.0));
    eb = std::max(eb, std::abs(back.b(q)[0] - 1.0));
  }
  CHECK(eth < 1e-6);
  CHECK(eks < 1e-6);
  CHECK(ea < 1e-4);
  CHECK(eb < 1e-4);
}

TEST_CASE("round trip on a helix with varying data") {
  const SpaceCurve h = arclength_param(helix(1.0, 0.5, {-1.2, 1.2}), 1e-12, 0.0);
  const EdgeNormalForm nf = make_normal_form(h, expr::make_profile("0.3+0.2*sin(u)"),
                                             scalar_field("1+0.5*u*v+v^2"), scalar_field("1+0.3*u+v"), 0.12);
  const EdgeNormalForm back = to_normal_form(from_normal_form(nf), 0.12);
  double eth = 0.0, eks = 0.0, ea = 0.0;
  for (double s : back.stations) {
    const EdgeInvariants x = edge_invariants(back, s), y = edge_invariants(nf, s);
    eth = std::max(eth, std::abs(x.theta - y.theta));
    eks = std::max(eks, std::abs(x.kappa_s - y.kappa_s));
    const std::array<double, 2> q{s, 0.0};
    ea = std::max(ea, std::abs(back.a(q)[0] - 1.0));
  }
  CHECK(eth < 1e-6);
  CHECK(eks < 1e-6);
  CHECK(ea < 1e-4);
}

TEST_CASE("edge invariants") {
  const EdgeInvariants a = edge_invariants(1.0, 0.0);
  CHECK(a.theta == 0.0);
  CHECK(a.kappa_s == 1.0);
  CHECK(a.kappa_nu == 0.0);
  const EdgeInvariants b = edge_invariants(1.0, std::numbers::pi / 2 - 0.01);
  CHECK(b.kappa_s == Approx(std::sin(0.01)).epsilon(1e-12));
  CHECK(b.kappa_nu == Approx(0.99995).epsilon(1e-6));
  const EdgeNormalForm nf = circle_form(0.7);
  for (double u : nf.stations) {
    const EdgeInvariants x = edge_invariants(nf, u);
    CHECK(x.kappa_s * x.kappa_s + x.kappa_nu * x.kappa_nu == Approx(x.kappa * x.kappa).epsilon(1e-12));
  }
}

TEST_CASE("cuspidal edge test on b(u,0)") {
  CHECK(is_cuspidal_edge(circle_form(0.2, "1", "1"), 0.3));
  CHECK(!is_cuspidal_edge(circle_form(0.2, "1", "0"), 0.3));
  const EdgeNormalForm t = circle_form(0.2, "1", "u");
  CHECK(!is_cuspidal_edge(t, 0.0));
  CHECK(is_cuspidal_edge(t, 0.1));
}

TEST_CASE("extraction from an expression germ agrees with the limiting normal curvature") {
  const SurfaceGerm g = catalog::ms_edge("u^2", "1", "u", "1").with_domain({{-0.5, 0.5}, {-0.5, 0.5}});
  const EdgeNormalForm nf = to_normal_form(g, 0.1, 33);
  const EdgeInvariants inv = edge_invariants(nf, 0.0);
  const double kn = limiting_normal_curvature(NormalField(g), {0.0, 0.0});
  CHECK(std::abs(inv.kappa_nu) == Approx(std::abs(kn)).epsilon(1e-7));
  // crease (u, u^2, u^2): curvature 2 sqrt(2) at the origin
  CHECK(inv.kappa == Approx(2.0 * std::sqrt(2.0)).epsilon(1e-8));
}
