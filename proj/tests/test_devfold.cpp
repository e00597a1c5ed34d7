#include <cmath>
#include <numbers>

#include "doctest.h"
#include "frontal/devfold.hpp"
#include "frontal/exprlang.hpp"
#include "frontal/isomer.hpp"

using namespace frontal;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

EdgeNormalForm circle_edge(const std::string& theta) {
  return make_normal_form(circle(1.0, {-1.0, 1.0}), expr::make_profile(theta), scalar_field("1"), scalar_field("1"));
}

// kappa = 0.8, tau = 0.4
SpaceCurve unit_helix() { return arclength_param(helix(1.0, 0.5, {-1.0, 1.0}), 1e-12, 0.0); }

EdgeNormalForm helix_edge(const std::string& theta) {
  return make_normal_form(unit_helix(), expr::make_profile(theta), scalar_field("1"), scalar_field("1"));
}

}  // namespace

TEST_CASE("second angle") {
  CHECK(second_angle(0.4, -0.3, 2.0, 0.3) == Approx(kPi / 2).epsilon(1e-15));
  CHECK(second_angle(kPi / 4, std::sin(kPi / 4), 1.0, 0.0) == Approx(kPi / 4).epsilon(1e-15));
  CHECK(second_angle(0.5, -10.0, 1.0, 0.0) > kPi / 2);
  CHECK(second_angle(0.5, -10.0, 1.0, 0.0) < kPi);
  CHECK(second_angle(-0.5, 10.0, 1.0, 0.0) > kPi / 2);
  CHECK_THROWS_AS(second_angle(0.0, 0.0, 1.0, 0.0), PreconditionError);
  CHECK_THROWS_AS(second_angle(0.3, 0.0, 0.0, 0.0), PreconditionError);
}

TEST_CASE("ruling and evaluation") {
  const DevStrip s = make_strip(circle(1.0, {-1.0, 1.0}), Profile::constant(kPi / 4));
  for (double u : {-0.7, 0.0, 0.4}) {
    const FrenetSample fr = frenet(s.crease, u);
    CHECK(s.beta(u) == Approx(kPi / 2).epsilon(1e-15));
    CHECK((s.ruling(u) - (fr.n + fr.b) / std::sqrt(2.0)).norm() < 1e-14);
    CHECK(std::abs(s.ruling(u).norm() - 1.0) < 1e-14);
    CHECK((s(u, 0.0) - s.crease(u)).norm() == 0.0);
    CHECK((s(u, 0.1) - (s.crease(u) + 0.1 * (fr.n + fr.b) / std::sqrt(2.0))).norm() < 1e-14);
    CHECK(((s(u, 0.12) - s.crease(u)) - 2 * (s(u, 0.06) - s.crease(u))).norm() < 1e-15);
  }
}

TEST_CASE("ist") {
  const DevStrip c = ist(circle_edge("0.3"));
  for (double u : c.stations) {
    CHECK(c.alpha(u) == 0.3);
    CHECK(c.beta(u) == Approx(kPi / 2).epsilon(1e-14));
  }
  // theta' + tau = 0 on the helix
  const DevStrip h = ist(helix_edge("0.5-0.4*u"));
  for (double u : h.stations) CHECK(h.beta(u) == Approx(kPi / 2).epsilon(1e-9));
  CHECK_THROWS_AS(ist(circle_edge("0")), PreconditionError);
  CHECK_THROWS_AS(ist(circle_edge("pi/2")), PreconditionError);
}

TEST_CASE("ist strips satisfy the strip invariants and are developable") {
  for (const DevStrip& s : {ist(circle_edge("0.3")), ist(circle_edge("0.3+0.2*u")),
                            ist(helix_edge("0.3+0.1*sin(u)")), ist(helix_edge("-0.6+0.3*u^2"))}) {
    const StripCheck c = check_strip(s);
    CHECK(c.alpha_ok);
    CHECK(c.beta_ok);
    CHECK(c.ruling_ok);
    CHECK(c.beta_residual < 1e-8);
    CHECK(c.max_abs_K < 1e-6);
    CHECK(c.width_ok);
    CHECK(c.ok());
  }
}

TEST_CASE("gaussian curvature controls") {
  const SurfaceFn cylinder = [](double u, double v) { return Vec3(std::cos(u), std::sin(u), v); };
  const SurfaceFn sphere = [](double u, double v) {
    return Vec3(std::cos(u) * std::cos(v), std::sin(u) * std::cos(v), std::sin(v));
  };
  for (double u : {-0.5, 0.2})
    for (double v : {-0.3, 0.1}) {
      CHECK(std::abs(gaussian_curvature(cylinder, u, v)) < 1e-9);
      CHECK(gaussian_curvature(sphere, u, v) == Approx(1.0).epsilon(1e-8));
    }
  // a strip that is not developable: alpha with the wrong beta
  DevStrip s = make_strip(circle(1.0, {-1.0, 1.0}), Profile::constant(0.4));
  s.beta = Profile::constant(1.0);
  CHECK(std::abs(gaussian_curvature(s, 0.1, 0.1)) > 1e-3);
  CHECK(!check_strip(s).ok());
}

TEST_CASE("strip isomers commute with the edge isomers") {
  const DevStrip c = ist(circle_edge("0.3"));
  const StripIsomers iso = strip_isomers(c);
  for (double u : c.stations) {
    CHECK(iso.dual.alpha(u) == Approx(-0.3));
    CHECK(iso.dual.beta(u) == Approx(kPi / 2).epsilon(1e-14));
  }
  for (const char* theta : {"0.3+0.1*sin(u)", "0.5-0.2*u"}) {
    const DevStrip h = ist(helix_edge(theta));
    const StripIsomers hi = strip_isomers(h);
    const DevStrip neg = make_strip(h.crease, Profile{[&h](double u) { return -h.alpha(u); },
                                                      [&h](double u) { return -h.alpha.derivative(u); }, {}});
    double gap = 0.0, twice = 0.0, beta_gap = 0.0;
    const DevStrip dd = dual_strip(dual_strip(h));
    for (double u : h.stations) {
      gap = std::max(gap, std::abs(hi.dual.alpha(u) - neg.alpha(u)));
      beta_gap = std::max(beta_gap, std::abs(hi.dual.beta(u) - neg.beta(u)));
      twice = std::max(twice, std::abs(dd.alpha(u) - h.alpha(u)));
    }
    CHECK(gap < 1e-10);
    CHECK(beta_gap < 1e-10);
    CHECK(twice < 1e-10);
    CHECK(check_strip(hi.inverse).ok());
    CHECK(check_strip(hi.inverse_dual).ok());
  }
  CHECK_THROWS_AS(strip_isomers(make_strip(circle(1.0, {-1.0, 1.0}), Profile::constant(0.3))), PreconditionError);
}

TEST_CASE("curved folding") {
  const DevStrip h = ist(helix_edge("0.3+0.1*sin(u)"));
  for (SplitRule rule : {SplitRule::u_split, SplitRule::v_split}) {
    const CurvedFolding f = curved_folding(h, rule);
    for (double u : linspace(-1.0, 1.0, 21)) CHECK((f(u, 0.0) - h.crease(u)).norm() == 0.0);
    const auto pieces = fold_meshes(f, 17, 5);
    CHECK(pieces.size() == 2);
    for (const auto& m : pieces) CHECK(m.vertices.size() == 17u * 5u);
  }
  const CurvedFolding f = curved_folding(h);
  CHECK((f(0.4, 0.1) - h(0.4, 0.1)).norm() == 0.0);
  CHECK((f(-0.4, 0.1) - f.dual(-0.4, 0.1)).norm() == 0.0);
  CHECK(check_strip(f.dual).max_abs_K < 1e-6);
}

TEST_CASE("mesh layout") {
  const DevStrip s = ist(circle_edge("0.3"));
  const MeshGrid m = mesh(s, 9, 3);
  REQUIRE(m.vertices.size() == 27u);
  CHECK((m.vertices[0] - s(-1.0, -0.15)).norm() < 1e-15);
  CHECK((m.vertices[1] - s(-1.0, 0.0)).norm() < 1e-15);
  CHECK((m.vertices[3] - s(-0.75, -0.15)).norm() < 1e-15);
  CHECK_THROWS_AS(mesh(s, 1, 3), PreconditionError);
}
