#include "frontal/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

#include "frontal/catalog.hpp"
#include "frontal/exprlang.hpp"

namespace frontal {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::vector<Interval> box_of(const Rect& r) { return {r.u, r.v}; }

Vec2 as_vec2(const std::vector<double>& x) { return {x[0], x[1]}; }

std::vector<double> solve_at(const ConnectingMap& cm, const Vec2& q) {
  const double x[2] = {q.x(), q.y()};
  return cm.solve(x);
}

SymmetryFinding finish_finding(const SurfaceGerm& germ, const NormalField& field, const Vec2& p, IsoLabel label,
                               const Isometry& T, double residual, const SymmetryOptions& opt) {
  SymmetryFinding f;
  f.label = label;
  f.T = T;
  f.residual = residual;
  f.T_involution = is_involution(T, 1e-10);
  const Vec3 fp = germ(p);
  f.T_fixes_fp = (T(fp) - fp).norm();
  f.psi = connecting_involution(germ, p, T, opt);
  f.f_psi_error = f.psi.image_residual;
  for (std::size_t i = 0; i < f.psi.x.size(); ++i) {
    const std::vector<double> back = solve_at(f.psi, as_vec2(f.psi.psi[i]));
    f.psi_involution_error =
        std::max(f.psi_involution_error, (as_vec2(back) - as_vec2(f.psi.x[i])).lpNorm<Eigen::Infinity>());
  }
  // derivative of psi at p
  const double h = 1e-3;
  Eigen::Matrix2d J;
  for (int k = 0; k < 2; ++k) {
    const Vec2 d = h * Vec2::Unit(k);
    J.col(k) = (as_vec2(solve_at(f.psi, p + d)) - as_vec2(solve_at(f.psi, p - d))) / (2 * h);
  }
  f.orientation_preserving = J.determinant() > 0.0;
  const Vec2 g = field.lambda_gradient(p);
  const Vec2 tangent(-g.y(), g.x());
  f.reverses_singular_curve = (J * tangent).dot(tangent) < 0.0;
  return f;
}

bool has(const std::vector<SymmetryFinding>& fs, IsoLabel l) {
  return std::any_of(fs.begin(), fs.end(), [l](const SymmetryFinding& f) { return f.label == l; });
}

}  // namespace

std::vector<std::string> SymmetryReport::cases() const {
  std::vector<std::string> out;
  for (const auto& f : findings) out.push_back(f.case_name());
  return out;
}

ConnectingMap connecting_involution(const SurfaceGerm& germ, const Vec2& p, const Isometry& T, SymmetryOptions opt) {
  const NormalField field(germ);
  const Lift lift = legendrian_lift(field);
  const Rect V = germ.domain().shrunk(p, opt.shrink);
  return connecting_map(transformed(lift, T).restricted(box_of(V)), lift, opt.tol, {opt.psi_samples, opt.reference});
}

std::optional<SymmetryFinding> test_isometry(const SurfaceGerm& germ, const Vec2& p, const Isometry& T,
                                             SymmetryOptions opt) {
  const NormalField field(germ);
  const Lift lift = legendrian_lift(field);
  const Rect V = germ.domain().shrunk(p, opt.shrink);
  const InclusionResult inc =
      image_subset(transformed(lift, T).restricted(box_of(V)), lift, opt.tol, {opt.query, opt.reference, true});
  if (!inc.subset) return std::nullopt;
  IsoLabel label = IsoLabel::other;
  try {
    label = classify_isometry(T, distinguished_frame(field, p).frame, 1e-8);
  } catch (const PreconditionError&) {
  }
  return finish_finding(germ, field, p, label, T, inc.max_distance, opt);
}

SymmetryReport detect_symmetries(const SurfaceGerm& germ, const Vec2& p, SymmetryOptions opt) {
  const NormalField field(germ);
  SymmetryReport rep;
  rep.germ = germ.name();
  rep.p = p;
  rep.point = classify_point(field, p);
  if (rep.point != PointClass::cuspidal_edge && rep.point != PointClass::swallowtail &&
      rep.point != PointClass::cuspidal_cross_cap)
    throw PreconditionError(std::string("symmetry detection needs a cuspidal edge, swallowtail or cuspidal cross cap; ") +
                            germ.name() + " is " + point_class_name(rep.point) + " at the point");
  rep.frame = distinguished_frame(field, p);
  if (rep.point != PointClass::swallowtail) rep.kappa_nu = limiting_normal_curvature(field, p);

  const Lift lift = legendrian_lift(field);
  const Rect V = germ.domain().shrunk(p, opt.shrink);
  for (const Candidate& c : frame_candidates(rep.frame.frame)) {
    const InclusionResult inc =
        image_subset(transformed(lift, c.T).restricted(box_of(V)), lift, opt.tol, {opt.query, opt.reference, true});
    if (!inc.subset) {
      rep.rejected.push_back({c.label, inc.max_distance});
      continue;
    }
    try {
      rep.findings.push_back(finish_finding(germ, field, p, c.label, c.T, inc.max_distance, opt));
    } catch (const MatchError& e) {
      rep.violations.push_back("case " + label_case(c.label) + ": image is invariant but no connecting involution: " +
                               e.what());
    }
  }

  // consistency with the classification of involutions at each singularity type
  for (const auto& f : rep.findings) {
    const std::string tag = "case " + f.case_name() + ": ";
    if (!f.T_involution) rep.violations.push_back(tag + "T is not an involution");
    if (f.T_fixes_fp > 1e-10) rep.violations.push_back(tag + "T moves f(p) by " + num(f.T_fixes_fp));
    if (f.psi_involution_error > opt.tol)
      rep.violations.push_back(tag + "psi o psi differs from the identity by " + num(f.psi_involution_error));
  }
  if (rep.point == PointClass::cuspidal_edge || rep.point == PointClass::cuspidal_cross_cap) {
    if (has(rep.findings, IsoLabel::refl_Pi2))
      rep.violations.push_back("(c1): reflection in the co-normal plane found at a cuspidal edge or cuspidal cross cap");
    if (rep.kappa_nu && std::abs(*rep.kappa_nu) > 1e-8)
      for (const auto& f : rep.findings)
        if (f.label != IsoLabel::refl_Pi1)
          rep.violations.push_back("(c1): limiting normal curvature " + num(*rep.kappa_nu) + " but case " +
                                   f.case_name() + " found");
  }
  if (rep.point == PointClass::swallowtail)
    for (const auto& f : rep.findings)
      if (f.label != IsoLabel::refl_Pi2)
        rep.violations.push_back("(c3): case " + f.case_name() + " found at a swallowtail");
  return rep;
}

SymmetryReport detect_symmetries(const SurfaceGerm& germ, SymmetryOptions opt) {
  return detect_symmetries(germ, germ.base(), opt);
}

std::vector<Vec3> SelfIntersectionLocus::polyline() const {
  std::vector<Vec3> out;
  for (const auto& s : pairs) out.push_back(s.image);
  return out;
}

SelfIntersectionLocus self_intersections(const SurfaceGerm& germ, const Rect& region, double tol, int grid) {
  SelfIntersectionLocus locus;
  const auto us = linspace(region.u.lo, region.u.hi, grid), vs = linspace(region.v.lo, region.v.hi, grid);
  const double h = std::max(region.u.length(), region.v.length()) / (grid - 1);
  locus.grid_step = h;
  std::vector<Vec2> qs;
  std::vector<Vec3> fs;
  for (double u : us)
    for (double v : vs) {
      qs.emplace_back(u, v);
      fs.push_back(germ(qs.back()));
    }
  // cell size: the largest image step between lattice neighbours
  double cell = 0.0;
  const int n = grid;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * n + j;
      if (i + 1 < n) cell = std::max(cell, (fs[k + n] - fs[k]).norm());
      if (j + 1 < n) cell = std::max(cell, (fs[k + 1] - fs[k]).norm());
    }
  if (!(cell > 0.0)) return locus;
  using Key = std::tuple<long, long, long>;
  std::map<Key, std::vector<std::size_t>> buckets;
  auto key = [cell](const Vec3& x) {
    return Key{std::lround(std::floor(x.x() / cell)), std::lround(std::floor(x.y() / cell)),
               std::lround(std::floor(x.z() / cell))};
  };
  for (std::size_t k = 0; k < fs.size(); ++k) buckets[key(fs[k])].push_back(k);

  const double min_sep = 4.0 * h;
  const std::vector<Interval> box{region.u, region.v, region.u, region.v};
  std::vector<SelfIntersection> found;
  for (std::size_t k = 0; k < fs.size(); ++k) {
    const auto [a, b, c] = key(fs[k]);
    std::size_t best = k;
    double best_d = cell;
    for (long da = -1; da <= 1; ++da)
      for (long db = -1; db <= 1; ++db)
        for (long dc = -1; dc <= 1; ++dc) {
          const auto it = buckets.find(Key{a + da, b + db, c + dc});
          if (it == buckets.end()) continue;
          for (std::size_t j : it->second) {
            if (j <= k || (qs[j] - qs[k]).norm() <= min_sep) continue;
            const double d = (fs[j] - fs[k]).norm();
            if (d < best_d) {
              best_d = d;
              best = j;
            }
          }
        }
    if (best == k) continue;
    ResidualFn r = [&germ](std::span<const double> x, std::span<double> out) {
      const Vec3 d = germ(Vec2(x[0], x[1])) - germ(Vec2(x[2], x[3]));
      for (int i = 0; i < 3; ++i) out[i] = d[i];
    };
    const LeastSquares ls =
        least_squares(r, 3, {qs[k].x(), qs[k].y(), qs[best].x(), qs[best].y()}, box, 200);
    const Vec2 q(ls.x[0], ls.x[1]), q2(ls.x[2], ls.x[3]);
    const double res = std::sqrt(2.0 * ls.cost);
    if (res > tol || (q - q2).norm() <= 0.5 * min_sep) continue;
    const bool first = std::tie(q.x(), q.y()) < std::tie(q2.x(), q2.y());
    found.push_back({first ? q : q2, first ? q2 : q, 0.5 * (germ(q) + germ(q2)), res});
  }
  std::sort(found.begin(), found.end(), [](const SelfIntersection& x, const SelfIntersection& y) {
    return std::tie(x.q.x(), x.q.y(), x.q2.x(), x.q2.y()) < std::tie(y.q.x(), y.q.y(), y.q2.x(), y.q2.y());
  });
  for (const auto& s : found)
    if (locus.pairs.empty() || (s.q - locus.pairs.back().q).norm() + (s.q2 - locus.pairs.back().q2).norm() > 1e-9)
      locus.pairs.push_back(s);
  return locus;
}

C2Report verify_c2(const SymmetryReport& report, const SymmetryFinding& finding, const SelfIntersectionLocus& locus,
                   const SurfaceGerm& germ, double tol) {
  C2Report c;
  c.applicable = report.point == PointClass::swallowtail || report.point == PointClass::cuspidal_cross_cap;
  if (!c.applicable) return c;
  const Plane pi1 = report.frame.planes.pi1;
  const double cell = locus.grid_step;
  c.min_displacement = std::numeric_limits<double>::infinity();
  if (report.point == PointClass::cuspidal_cross_cap) c.in_normal_plane_ok = true;
  const Rect W = germ.domain().shrunk(report.p, 0.5);
  for (const auto& s : locus.pairs)
    for (const Vec2& q : {s.q, s.q2}) {
      if (!W.contains(q)) continue;
      ++c.points;
      const Vec3 f = germ(q);
      const Vec2 pq = as_vec2(solve_at(finding.psi, q));
      c.f_psi_error = std::max(c.f_psi_error, (germ(pq) - f).norm());
      c.T_error = std::max(c.T_error, (finding.T(f) - f).norm());
      if ((q - report.p).norm() > cell) c.min_displacement = std::min(c.min_displacement, (pq - q).norm());
      if (c.in_normal_plane_ok) c.normal_plane_error = std::max(c.normal_plane_error, std::abs(pi1.signed_distance(f)));
    }
  if (!std::isfinite(c.min_displacement)) c.min_displacement = 0.0;
  c.f_psi_ok = c.f_psi_error <= std::max(tol, 1e-6);
  c.fixed_by_T_ok = c.T_error <= tol;
  c.no_fixed_point_ok = c.points == 0 || c.min_displacement > cell;
  if (c.in_normal_plane_ok) c.in_normal_plane_ok = c.normal_plane_error <= tol;
  return c;
}

MsCheck ms_symmetry_check(const std::string& a0, const std::string& b0, const std::string& b2, const std::string& b3,
                          SymmetryOptions opt) {
  MsCheck m;
  const Map A0 = expr::make_mapdef("a0", {"u", "v"}, {a0}).compile();
  const Map B0 = expr::make_mapdef("b0", {"u", "v"}, {b0}).compile();
  const Map B2 = expr::make_mapdef("b2", {"u", "v"}, {b2}).compile();
  const Map B3 = expr::make_mapdef("b3", {"u", "v"}, {b3}).compile();
  auto at = [](const Map& f, double u, double v) { return f({u, v})[0]; };
  if (std::abs(at(B3, 0, 0)) < 1e-12) throw PreconditionError("ms_symmetry_check needs b3(0,0) != 0");
  struct Parity {
    const char* name;
    const Map* f;
    double sign;
    bool uses_v;
  };
  const Parity parities[] = {{"a0 even", &A0, 1, false}, {"b0 even", &B0, 1, false}, {"b2 odd", &B2, -1, false},
                             {"b3 even in u", &B3, 1, true}};
  for (const auto& par : parities) {
    double worst = 0.0;
    for (double u : linspace(-0.9, 0.9, 13))
      for (double v : linspace(-0.9, 0.9, par.uses_v ? 13 : 1)) {
        const double vv = par.uses_v ? v : 0.0;
        worst = std::max(worst, std::abs(at(*par.f, u, vv) - par.sign * at(*par.f, -u, vv)));
      }
    if (worst > 1e-12) m.failed_parities.push_back(par.name);
  }
  m.parity = m.failed_parities.empty();
  const SurfaceGerm g = catalog::ms_edge(a0, b0, b2, b3);
  m.report = detect_symmetries(g, Vec2::Zero(), opt);
  if (m.report.kappa_nu) m.kappa_nu = *m.report.kappa_nu;
  for (const auto& f : m.report.findings)
    if (f.label == IsoLabel::refl_Pi1) {
      m.pi1_found = true;
      double worst = 0.0;
      for (const Vec2& q : {Vec2(0.2, 0.1), Vec2(-0.15, 0.3), Vec2(0.3, -0.2)})
        worst = std::max(worst, (as_vec2(solve_at(f.psi, q)) - Vec2(-q.x(), q.y())).norm());
      m.psi_is_u_flip = worst < 1e-6;
    }
  return m;
}

}  // namespace frontal
