#include <cmath>

#include "doctest.h"
#include "frontal/catalog.hpp"
#include "frontal/exprlang.hpp"
#include "frontal/match.hpp"

using namespace frontal;
using doctest::Approx;

namespace {

Map curve(const std::string& text, const std::string& var = "t") {
  return expr::make_mapdef("c", {var}, expr::split_components(text)).compile();
}

std::vector<Interval> box2(double r) { return {{-r, r}, {-r, r}}; }

double dist_inf(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("legendrian lifts") {
  const LiftSample c = legendrian_lift(catalog::cuspidal_edge())({0.0, 0.0});
  CHECK(c.fx == std::vector<double>{0, 0, 0});
  CHECK((Vec3(c.nu[0], c.nu[1], c.nu[2]) - Vec3(0, 1, 0)).norm() < 1e-14);
  const Lift plane = legendrian_lift(catalog::plane());
  for (double u : {-0.5, 0.3})
    CHECK(plane({u, 0.7 * u}).nu == std::vector<double>{0, 0, 1});
  const Lift cusp = curve_lift(curve("t^2, t^3"), {-1, 1});
  CHECK((Vec2(cusp({0.0}).nu[0], cusp({0.0}).nu[1]) - Vec2(0, 1)).norm() < 1e-15);
  for (double t : {-0.4, 0.2}) {
    const LiftSample s = cusp({t});
    CHECK((Vec2(s.nu[0], s.nu[1]) - Vec2(-3 * t, 2) / std::hypot(3 * t, 2)).norm() < 1e-14);
  }
  // flat to third order at 0
  const LiftSample flat = curve_lift(curve("t^6, t^9"), {-1, 1})({0.0});
  CHECK((Vec2(flat.nu[0], flat.nu[1]) - Vec2(0, 1)).norm() < 1e-10);
  CHECK_THROWS_AS(legendrian_lift(catalog::cross_cap()), NotFrontal);
}

TEST_CASE("image inclusion") {
  const Lift fc = legendrian_lift(catalog::cuspidal_edge());
  const InclusionResult self = image_subset(fc, fc, 1e-9, {17, 65});
  CHECK(self.subset);
  CHECK(self.max_distance < 1e-12);
  const InclusionResult half = image_subset(fc.restricted(box2(0.5)), fc, 1e-8, {33, 129});
  CHECK(half.subset);
  const Lift fs = legendrian_lift(catalog::swallowtail());
  const InclusionResult cs = image_subset(fc.restricted(box2(0.5)), fs, 1e-3, {33, 129});
  CHECK(!cs.subset);
  CHECK(cs.max_distance > 1e-3);
  // the bigger image is not inside the smaller one
  CHECK(!image_subset(fc, fc.restricted(box2(0.5)), 1e-6, {17, 65}).subset);
}

TEST_CASE("connecting map of plane cusps") {
  const Lift f1 = curve_lift(curve("t^6, t^9"), {-0.5, 0.5}, "f1");
  const Lift f2 = curve_lift(curve("t^2, t^3"), {-0.5, 0.5}, "f2");
  const ConnectingMap cm = connecting_map(f1, f2, 1e-6);
  CHECK(cm.e == 1);
  double worst = 0.0;
  for (std::size_t i = 0; i < cm.x.size(); ++i) worst = std::max(worst, std::abs(cm.psi[i][0] - std::pow(cm.x[i][0], 3)));
  CHECK(worst < 1e-6);
  CHECK(cm.image_residual < 1e-9);
  const double t = 0.37;
  CHECK(cm.solve(std::span<const double>(&t, 1))[0] == Approx(t * t * t).epsilon(1e-9));
  // the inverse direction is not a map: f2 reaches points f1 does not cover
  CHECK_THROWS_AS(connecting_map(f2, f1.restricted({{-0.3, 0.3}}), 1e-6), MatchError);
}

TEST_CASE("connecting map of a germ with itself is the identity") {
  for (const SurfaceGerm& g : {catalog::cuspidal_edge(), catalog::swallowtail(), catalog::cuspidal_cross_cap(),
                               catalog::ccr_example(), catalog::sw_example(1, 1)}) {
    INFO(g.name());
    const Lift f = legendrian_lift(g);
    const ConnectingMap cm = connecting_map(f.restricted(box2(0.6)), f, 1e-6, {13, 129});
    CHECK(cm.e == 1);
    double worst = 0.0;
    for (std::size_t i = 0; i < cm.x.size(); ++i) worst = std::max(worst, dist_inf(cm.x[i], cm.psi[i]));
    CHECK(worst < 1e-7);
    CHECK(cm.image_residual < 1e-9);
  }
}

TEST_CASE("connecting map recovers a known reparametrization") {
  // f1 = f_C o phi with phi(u, v) = (u + 0.2 v^2, v + 0.1 u^2)
  const SurfaceGerm g1 = catalog::from_expressions(
      "f1", {"(v+0.1*u^2)^2", "(v+0.1*u^2)^3", "u+0.2*v^2"}, {{-0.5, 0.5}, {-0.5, 0.5}});
  const ConnectingMap cm =
      connecting_map(legendrian_lift(g1), legendrian_lift(catalog::cuspidal_edge()), 1e-6, {17, 129});
  double worst = 0.0;
  for (std::size_t i = 0; i < cm.x.size(); ++i) {
    const double u = cm.x[i][0], v = cm.x[i][1];
    worst = std::max(worst, std::hypot(cm.psi[i][0] - (u + 0.2 * v * v), cm.psi[i][1] - (v + 0.1 * u * u)));
  }
  CHECK(worst < 1e-5);
  // psi is injective on the samples
  double closest = 1.0;
  for (std::size_t i = 0; i < cm.psi.size(); ++i)
    for (std::size_t j = i + 1; j < cm.psi.size(); ++j)
      closest = std::min(closest, std::hypot(cm.psi[i][0] - cm.psi[j][0], cm.psi[i][1] - cm.psi[j][1]));
  CHECK(closest > 1e-3);
}

TEST_CASE("matching normal forms") {
  const EdgeNormalForm nf = make_normal_form(circle(1.0, {-1.0, 1.0}), expr::make_profile("0.3+0.1*u"),
                                             scalar_field("1+0.2*u*v"), scalar_field("1+v"));
  const NormalFormMatch self = match_normal_forms(nf, nf);
  CHECK(!self.u_flip);
  CHECK(self.e == 1);
  CHECK(self.residual < 1e-12);
  const NormalFormMatch tf = match_normal_forms(nf, t_flipped(nf));
  CHECK(!tf.u_flip);
  CHECK(tf.e == -1);
  CHECK(tf.residual < 1e-12);
  const NormalFormMatch rev = match_normal_forms(nf, station_reversed(nf));
  CHECK(rev.u_flip);
  CHECK(rev.e == 1);
  CHECK(std::abs(rev.shift) < 1e-8);
  CHECK(rev.residual < 1e-8);
  const NormalFormMatch rt = match_normal_forms(nf, t_flipped(station_reversed(nf)));
  CHECK(rt.u_flip);
  CHECK(rt.e == -1);
  // the surface built on the t-flipped crease data through the lift
  const Lift l1 = legendrian_lift(from_normal_form(nf)), l2 = legendrian_lift(from_normal_form(t_flipped(nf)));
  const ConnectingMap cm = connecting_map(l1.restricted({{-0.5, 0.5}, {-0.1, 0.1}}), l2, 1e-6, {9, 129});
  double worst = 0.0;
  for (std::size_t i = 0; i < cm.x.size(); ++i)
    worst = std::max(worst, std::hypot(cm.psi[i][0] - cm.x[i][0], cm.psi[i][1] + cm.x[i][1]));
  CHECK(worst < 1e-6);
  // a different crease does not match
  const EdgeNormalForm other = make_normal_form(circle(2.0, {-1.0, 1.0}), Profile::constant(0.3),
                                                scalar_field("1"), scalar_field("1"));
  CHECK_THROWS_AS(match_normal_forms(nf, other), MatchError);
}

TEST_CASE("properness probe") {
  const PropernessReport a = properness_probe(curve("x*exp(-x^2)", "x"), std::vector<double>{0.0});
  CHECK(a.verdict == Properness::finite);
  CHECK(a.counts.size() == 8);
  for (int c : a.counts) CHECK(c == 1);

  const PropernessReport b = properness_probe(curve("x*sin(1/x)", "x"), std::vector<double>{0.0});
  CHECK(b.verdict == Properness::suspected_infinite);
  CHECK(b.counts.back() >= 64);
  for (std::size_t k = 1; k < b.counts.size(); ++k) CHECK(b.counts[k] > b.counts[k - 1]);

  const PropernessReport c = properness_probe(spliced_example(), std::vector<double>{0.0});
  CHECK(c.verdict == Properness::suspected_infinite);
  CHECK(c.exact_fraction.front() == 1.0);
  const Map sp = spliced_example();
  CHECK(sp({3.0})[0] == 3.0);
  CHECK(sp({-2.5})[0] == -2.5);
  CHECK(sp({0.7})[0] == 0.0);
  CHECK(sp({1.5})[0] > 0.0);

  // the cuspidal edge is injective: one preimage component
  const Map fc = catalog::cuspidal_edge().map();
  const PropernessReport d = properness_probe(fc, std::vector<double>{0.0, 0.0});
  CHECK(d.verdict == Properness::finite);
  CHECK(d.counts.back() == 1);
  for (std::size_t k = 1; k < b.radii.size(); ++k) CHECK(b.radii[k] < b.radii[k - 1]);
}
