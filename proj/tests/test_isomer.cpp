#include <cmath>
#include <numbers>

#include "doctest.h"
#include "frontal/exprlang.hpp"
#include "frontal/isomer.hpp"

using namespace frontal;
using doctest::Approx;

namespace {

EdgeNormalForm on_circle(const std::string& theta) {
  return make_normal_form(circle(1.0, {-1.0, 1.0}), expr::make_profile(theta), scalar_field("1"), scalar_field("1"));
}

// kappa = 1 + 0.2 sin s, tau = 0.5 on [-0.3, 0.3], theta = 0.5
EdgeNormalForm perturbed_helix() {
  const SpaceCurve c = frenet_curve(expr::make_profile("1+0.2*sin(u)"), Profile::constant(0.5), {-0.3, 0.3});
  return make_normal_form(c, Profile::constant(0.5), scalar_field("1"), scalar_field("1"));
}

double sup_theta_gap(const EdgeNormalForm& a, const EdgeNormalForm& b) {
  double m = 0.0;
  for (double u : a.stations) m = std::max(m, std::abs(a.theta(u) - b.theta(u)));
  return m;
}

}  // namespace

TEST_CASE("admissibility") {
  const Admissibility a = admissible(on_circle("0.3"));
  CHECK(a.admissible);
  CHECK(a.strict);
  CHECK(a.max_abs_kappa_s == Approx(std::cos(0.3)).epsilon(1e-12));
  CHECK(!admissible(on_circle("0")).admissible);
  const Admissibility c = admissible(on_circle("pi/2+0.3*u"));
  CHECK(c.admissible);
  CHECK(!c.strict);
  CHECK(admissible(perturbed_helix()).admissible);
}

TEST_CASE("dual") {
  const EdgeNormalForm nf = on_circle("0.3+0.1*u");
  const EdgeNormalForm d = dual(nf);
  for (double u : nf.stations) {
    CHECK(d.theta(u) == -nf.theta(u));
    CHECK(std::abs(edge_invariants(d, u).kappa_s - edge_invariants(nf, u).kappa_s) < 1e-12);
    CHECK(edge_invariants(d, u).kappa_nu == Approx(-edge_invariants(nf, u).kappa_nu));
  }
  CHECK(sup_theta_gap(dual(d), nf) == 0.0);
  CHECK(dual(on_circle("0.3")).theta(0.2) == Approx(-0.3));
  CHECK_THROWS_AS(dual(on_circle("0.5*u")), PreconditionError);
}

TEST_CASE("dual of a planar edge is its mirror image") {
  const EdgeNormalForm nf = on_circle("0.3");
  const SurfaceGerm f = from_normal_form(nf), g = from_normal_form(dual(nf));
  const Isometry R = make_reflection(Plane(Vec3::Zero(), Vec3::UnitZ()));
  double worst = 0.0;
  for (double u = -1.0; u <= 1.0; u += 0.1)
    for (double v = -0.15; v <= 0.15; v += 0.03) worst = std::max(worst, (R(f({u, v})) - g({u, -v})).norm());
  CHECK(worst < 1e-12);
}

TEST_CASE("inverse on a circle keeps the angle") {
  const EdgeNormalForm nf = on_circle("0.4+0.2*u");
  const EdgeNormalForm inv = inverse(nf);
  for (double u : nf.stations) CHECK(inv.theta(u) == Approx(nf.theta(u)).epsilon(1e-12));
  CHECK(!inv.a);
  CHECK(!inv.b);
}

TEST_CASE("inverse of the perturbed helix") {
  const EdgeNormalForm nf = perturbed_helix();
  std::vector<double> flagged;
  const EdgeNormalForm inv = inverse(nf, &flagged);
  CHECK(flagged.empty());
  for (double u : nf.stations) {
    const double expect = std::acos((1 + 0.2 * std::sin(u)) / (1 - 0.2 * std::sin(u)) * std::cos(0.5));
    CHECK(inv.theta(u) == Approx(expect).epsilon(1e-9));
    const double k = frenet(nf.crease, u).kappa, km = frenet(nf.crease, -u).kappa;
    CHECK(std::abs(std::cos(inv.theta(u)) - k / km * std::cos(nf.theta(u))) < 1e-8);
    CHECK(nf.theta(-u) * inv.theta(u) > 0.0);
    // crease reversed
    CHECK((inv.crease(u) - nf.crease(-u)).norm() < 1e-15);
  }
  for (double u : {-0.2, 0.0, 0.25}) {
    const double h = 1e-5;
    CHECK(inv.theta.derivative(u) == Approx((inv.theta(u + h) - inv.theta(u - h)) / (2 * h)).epsilon(1e-7));
  }
  // the inverse of the inverse is the base
  CHECK(sup_theta_gap(inverse(inv), nf) < 1e-10);
}

TEST_CASE("inverse preconditions") {
  CHECK_THROWS_AS(inverse(on_circle("0")), PreconditionError);
  const EdgeNormalForm lopsided = make_normal_form(circle(1.0, {0.0, 1.0}), Profile::constant(0.3), scalar_field("1"),
                                                   scalar_field("1"));
  CHECK_THROWS_AS(inverse(lopsided), PreconditionError);
  std::vector<double> flagged;
  inverse(on_circle("1+0*u"), &flagged);
  CHECK(flagged.empty());
  // a zero of theta makes |kappa_s| reach kappa, so it never gets past admissibility
  CHECK_THROWS_AS(inverse(on_circle("0.3*u+0.5*u^2")), PreconditionError);
}

TEST_CASE("inverse dual") {
  const EdgeNormalForm id = inverse_dual(on_circle("0.3"));
  for (double u : id.stations) CHECK(id.theta(u) == Approx(-0.3).epsilon(1e-12));
  const EdgeNormalForm nf = perturbed_helix();
  CHECK(sup_theta_gap(inverse(dual(nf)), dual(inverse(nf))) < 1e-10);
  CHECK(sup_theta_gap(inverse_dual(inverse_dual(nf)), nf) < 1e-10);
}

TEST_CASE("right equivalence classes") {
  CHECK(right_equivalence_classes(isomers(on_circle("0.3"))) == 2);
  CHECK(right_equivalence_classes(isomers(perturbed_helix())) == 4);
  const SpaceCurve even =
      frenet_curve(expr::make_profile("1+0.2*u^2"), Profile::constant(0.3), {-0.5, 0.5});
  const EdgeNormalForm sym = make_normal_form(even, expr::make_profile("0.5+0.1*u^2"), scalar_field("1"),
                                              scalar_field("1"));
  CHECK(right_equivalence_classes(isomers(sym)) < 4);
}

TEST_CASE("congruence count table") {
  using K = CurveSymmetryKind;
  using M = MetricSymmetry;
  CongruenceCount c = congruence_count({false, K::none, M::none});
  CHECK(c.bound == 4);
  CHECK(c.exact);
  c = congruence_count({true, K::positive, M::none});
  CHECK(c.bound == 1);
  CHECK(c.exact);
  c = congruence_count({false, K::positive, M::symmetry});
  CHECK(c.bound == 1);
  CHECK(c.exact);
  c = congruence_count({false, K::negative, M::none});
  CHECK(c.bound == 2);
  CHECK(!c.exact);
  c = congruence_count({true, K::none, M::none});
  CHECK(c.bound == 2);
  CHECK(!c.exact);
}

TEST_CASE("symmetry predicates") {
  const SymmetryPredicates a = detect_predicates(on_circle("0.3"));
  CHECK(a.planar);
  CHECK(a.curve != CurveSymmetryKind::none);
  CHECK(a.metric != MetricSymmetry::none);
  const SymmetryPredicates b = detect_predicates(perturbed_helix());
  CHECK(!b.planar);
  CHECK(b.curve == CurveSymmetryKind::none);
  CHECK(b.metric == MetricSymmetry::none);
  CHECK(congruence_count(b).bound == 4);
  const EdgeNormalForm h = make_normal_form(arclength_param(helix(1.0, 0.5, {-1.0, 1.0}), 1e-12, 0.0),
                                            expr::make_profile("0.3+0.1*u^2"), scalar_field("1"), scalar_field("1"));
  const SymmetryPredicates c = detect_predicates(h);
  CHECK(!c.planar);
  CHECK(c.curve == CurveSymmetryKind::positive);
  CHECK(c.metric == MetricSymmetry::effective_symmetry);
  CHECK(congruence_count(c).bound == 1);
}
