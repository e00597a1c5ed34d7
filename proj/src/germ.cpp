#include "frontal/germ.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace frontal {

namespace {

Vec3 column(const Jet& j, int a, int b) {
  return {j.partial(0, a, b), j.partial(1, a, b), j.partial(2, a, b)};
}

std::string point_text(const Vec2& q) {
  std::ostringstream os;
  os.precision(6);
  os << "(" << q.x() << ", " << q.y() << ")";
  return os.str();
}

}  // namespace

Vec2 Rect::clamp(const Vec2& q) const {
  return {std::clamp(q.x(), u.lo, u.hi), std::clamp(q.y(), v.lo, v.hi)};
}

Rect Rect::shrunk(const Vec2& c, double factor) const {
  const Vec2 m = clamp(c);
  return {Interval(m.x() - factor * (m.x() - u.lo), m.x() + factor * (u.hi - m.x())),
          Interval(m.y() - factor * (m.y() - v.lo), m.y() + factor * (v.hi - m.y()))};
}

const char* kind_name(GermKind kind) {
  switch (kind) {
    case GermKind::generic: return "generic";
    case GermKind::cuspidal_edge: return "cuspidal_edge";
    case GermKind::swallowtail: return "swallowtail";
    case GermKind::cuspidal_cross_cap: return "cuspidal_cross_cap";
    case GermKind::cross_cap: return "cross_cap";
    case GermKind::normal_form: return "normal_form";
  }
  return "generic";
}

const char* point_class_name(PointClass c) {
  switch (c) {
    case PointClass::regular: return "regular";
    case PointClass::cuspidal_edge: return "cuspidal_edge";
    case PointClass::swallowtail: return "swallowtail";
    case PointClass::cuspidal_cross_cap: return "cuspidal_cross_cap";
    case PointClass::degenerate: return "degenerate";
    case PointClass::corank_two: return "corank_two";
  }
  return "regular";
}

// ---------------------------------------------------------------------------

SurfaceGerm::SurfaceGerm(std::string name, Map map, Rect domain, Vec2 base, Map normal, GermKind kind)
    : name_(std::move(name)), map_(std::move(map)), domain_(domain), base_(base),
      normal_(std::move(normal)), kind_(kind) {
  if (!map_ || map_.in_dim() != 2 || map_.out_dim() != 3)
    throw PreconditionError("germ '" + name_ + "' needs a map from the plane to 3-space");
  if (normal_ && (normal_.in_dim() != 2 || normal_.out_dim() != 3))
    throw PreconditionError("normal of germ '" + name_ + "' needs 2 inputs and 3 outputs");
  if (!domain_.contains(base_))
    throw PreconditionError("base point " + point_text(base_) + " of germ '" + name_ + "' is outside its domain");
}

Vec3 SurfaceGerm::operator()(const Vec2& q) const {
  std::array<double, 3> out{};
  const std::array<double, 2> x{q.x(), q.y()};
  map_.eval(x, out);
  return {out[0], out[1], out[2]};
}

Jet SurfaceGerm::jet(const Vec2& q, int order) const {
  const std::array<double, 2> x{q.x(), q.y()};
  return eval_jet(map_, x, order);
}

std::pair<Vec3, Vec3> SurfaceGerm::tangents(const Vec2& q) const {
  const Jet j = jet(q, 1);
  return {column(j, 1, 0), column(j, 0, 1)};
}

SurfaceGerm SurfaceGerm::with_domain(Rect domain) const {
  SurfaceGerm g(name_, map_, domain, domain.clamp(base_), normal_, kind_);
  g.formula = formula;
  return g;
}

SurfaceGerm SurfaceGerm::with_kind(GermKind kind) const {
  SurfaceGerm g = *this;
  g.kind_ = kind;
  return g;
}

// ---------------------------------------------------------------------------

NormalField::NormalField(SurfaceGerm germ) : germ_(std::move(germ)) {
  if (!germ_.map().has_exact_jets()) {
    near_singular_ = 1e-6;
    limit_step_ = 1e-3;
  }
  nu_p_ = Vec3::UnitZ();
  const Vec3 n = raw(germ_.base());
  nu_p_ = canonical_sign(n);
}

Vec3 NormalField::raw(const Vec2& q) const {
  if (germ_.analytic_normal()) {
    std::array<double, 3> out{};
    const std::array<double, 2> x{q.x(), q.y()};
    germ_.analytic_normal().eval(x, out);
    Vec3 n(out[0], out[1], out[2]);
    const double len = n.norm();
    if (!(len > 0.0) || !std::isfinite(len))
      throw DomainError("analytic normal of '" + germ_.name() + "' vanishes at " + point_text(q));
    return n / len;
  }
  const auto [fu, fv] = germ_.tangents(q);
  const Vec3 c = fu.cross(fv);
  const double scale = std::max({1.0, fu.squaredNorm(), fv.squaredNorm()});
  if (c.norm() > near_singular_ * scale) return c.normalized();
  return limit(q);
}

Vec3 NormalField::operator()(const Vec2& q) const {
  const Vec3 n = raw(q);
  return n.dot(nu_p_) < 0.0 ? Vec3(-n) : n;
}

Vec3 NormalField::limit(const Vec2& q) const {
  std::vector<Vec3> found;
  for (int k = 0; k < 8; ++k) {
    const double phi = (k + 0.5) * std::numbers::pi / 4.0;
    const Vec2 d(std::cos(phi), std::sin(phi));
    std::array<Vec3, 3> lv;
    bool ok = true;
    try {
      for (int l = 0; l < 3 && ok; ++l) {
        const double h = limit_step_ / static_cast<double>(1 << l);
        const auto [fu, fv] = germ_.tangents(q + h * d);
        const Vec3 c = fu.cross(fv);
        const double len = c.norm();
        if (!(len > 1e-300) || !std::isfinite(len)) {
          ok = false;
          break;
        }
        lv[l] = c / len;
        if (l > 0 && lv[l].dot(lv[0]) < 0.0) lv[l] = -lv[l];
      }
    } catch (const DomainError&) {
      ok = false;
    }
    if (!ok) continue;
    const Vec3 r1a = 2.0 * lv[1] - lv[0];
    const Vec3 r1b = 2.0 * lv[2] - lv[1];
    found.push_back(((4.0 * r1b - r1a) / 3.0).normalized());
  }
  if (found.size() < 2)
    throw NotFrontal("no normal limit at " + point_text(q) + " of '" + germ_.name() + "'");
  Vec3 sum = Vec3::Zero();
  for (Vec3 n : found) {
    if (n.dot(found[0]) < 0.0) n = -n;
    const double gap = (n - found[0]).norm();
    if (gap > 1e-6) {
      std::ostringstream os;
      os << "directional normal limits disagree by " << gap << " at " << point_text(q) << " of '"
         << germ_.name() << "'";
      throw NotFrontal(os.str());
    }
    sum += n;
  }
  return sum.normalized();
}

double NormalField::lambda(const Vec2& q) const {
  const auto [fu, fv] = germ_.tangents(q);
  return fu.cross(fv).dot((*this)(q));
}

Vec2 NormalField::lambda_gradient(const Vec2& q) const {
  const double h = 1e-5;
  Vec2 g;
  for (int i = 0; i < 2; ++i) {
    Vec2 e = Vec2::Zero();
    e[i] = 1.0;
    const double d1 = (lambda(q + h * e) - lambda(q - h * e)) / (2.0 * h);
    const double d2 = (lambda(q + 0.5 * h * e) - lambda(q - 0.5 * h * e)) / h;
    g[i] = (4.0 * d2 - d1) / 3.0;
  }
  return g;
}

NormalField normal_field(const SurfaceGerm& germ) { return NormalField(germ); }

double area_density(const NormalField& field, const Vec2& q) { return field.lambda(q); }

double area_density(const SurfaceGerm& germ, const Vec2& q) { return NormalField(germ).lambda(q); }

FundamentalForm first_fundamental_form(const SurfaceGerm& germ, const Vec2& q) {
  const auto [fu, fv] = germ.tangents(q);
  return {fu.dot(fu), fu.dot(fv), fv.dot(fv)};
}

// ---------------------------------------------------------------------------

namespace {

struct Rank {
  double smax = 0.0, smin = 0.0;
  Vec2 null_dir = Vec2::UnitY();
};

Rank rank_info(const Vec3& fu, const Vec3& fv) {
  Eigen::Matrix<double, 3, 2> J;
  J.col(0) = fu;
  J.col(1) = fv;
  Eigen::JacobiSVD<Eigen::Matrix<double, 3, 2>> svd(J, Eigen::ComputeFullV);
  Rank r;
  r.smax = svd.singularValues()[0];
  r.smin = svd.singularValues()[1];
  r.null_dir = canonical_sign(Vec2(svd.matrixV().col(1)));
  return r;
}

}  // namespace

Vec2 null_direction(const SurfaceGerm& germ, const Vec2& q, double tol) {
  const auto [fu, fv] = germ.tangents(q);
  const Rank r = rank_info(fu, fv);
  if (r.smax <= tol) throw PreconditionError("df vanishes at " + point_text(q) + " (co-rank two)");
  return r.null_dir;
}

int singular_type(const NormalField& field, const Vec2& q, double tol) {
  const Vec2 g = field.lambda_gradient(q);
  if (g.norm() <= 1e-10) throw PreconditionError("degenerate singular point " + point_text(q));
  const Vec2 t = Vec2(-g.y(), g.x()).normalized();
  const Vec2 eta = null_direction(field.germ(), q);
  return std::abs(eta.x() * t.y() - eta.y() * t.x()) > tol ? 1 : 2;
}

SingularCurve singular_curve(const NormalField& field, double tol, int grid) {
  if (grid < 2) throw PreconditionError("singular curve grid needs at least 2 cells per side");
  const Rect D = field.germ().domain();
  const int n = grid + 1;
  const double hu = D.u.length() / grid, hv = D.v.length() / grid;
  auto node = [&](int i, int j) { return Vec2(D.u.lo + i * hu, D.v.lo + j * hv); };
  auto safe_lambda = [&](const Vec2& q) {
    try {
      return field.lambda(q);
    } catch (const DomainError&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };

  std::vector<double> val(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) val[static_cast<std::size_t>(j) * n + i] = safe_lambda(node(i, j));
  auto at = [&](int i, int j) { return val[static_cast<std::size_t>(j) * n + i]; };
  auto positive = [](double x) { return x >= 0.0; };

  // Edge ids: horizontal (i,j)-(i+1,j) first, then vertical (i,j)-(i,j+1).
  const long nh = static_cast<long>(grid) * n;
  auto hid = [&](int i, int j) { return static_cast<long>(j) * grid + i; };
  auto vid = [&](int i, int j) { return nh + static_cast<long>(i) * grid + j; };
  auto crosses = [&](double a, double b) {
    return std::isfinite(a) && std::isfinite(b) && positive(a) != positive(b);
  };

  std::map<long, Vec2> root;
  auto edge_root = [&](long id) -> bool {
    if (root.count(id)) return true;
    Vec2 a, b;
    if (id < nh) {
      const int j = static_cast<int>(id / grid), i = static_cast<int>(id % grid);
      a = node(i, j);
      b = node(i + 1, j);
    } else {
      const long r = id - nh;
      const int i = static_cast<int>(r / grid), j = static_cast<int>(r % grid);
      a = node(i, j);
      b = node(i, j + 1);
    }
    double fa = safe_lambda(a), fb = safe_lambda(b);
    if (!crosses(fa, fb)) return false;
    // Illinois false position on the edge.
    double ta = 0.0, tb = 1.0;
    int side = 0;
    double t = 0.0;
    for (int it = 0; it < 100; ++it) {
      t = (ta * fb - tb * fa) / (fb - fa);
      if (fa == 0.0) { t = ta; break; }
      if (fb == 0.0) { t = tb; break; }
      const double ft = safe_lambda(a + t * (b - a));
      if (!std::isfinite(ft)) break;
      if (ft == 0.0 || tb - ta < 1e-15) break;
      if (positive(ft) == positive(fb)) {
        tb = t;
        fb = ft;
        if (side == -1) fa *= 0.5;
        side = -1;
      } else {
        ta = t;
        fa = ft;
        if (side == 1) fb *= 0.5;
        side = 1;
      }
    }
    root[id] = a + t * (b - a);
    return true;
  };

  std::map<long, std::vector<long>> adj;
  auto link = [&](long a, long b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  for (int j = 0; j < grid; ++j) {
    for (int i = 0; i < grid; ++i) {
      const double c00 = at(i, j), c10 = at(i + 1, j), c11 = at(i + 1, j + 1), c01 = at(i, j + 1);
      std::array<long, 4> ids{hid(i, j), vid(i + 1, j), hid(i, j + 1), vid(i, j)};  // bottom right top left
      std::array<bool, 4> on{crosses(c00, c10), crosses(c10, c11), crosses(c01, c11), crosses(c00, c01)};
      std::vector<long> hit;
      for (int k = 0; k < 4; ++k)
        if (on[k] && edge_root(ids[k])) hit.push_back(ids[k]);
      if (hit.size() == 2) {
        link(hit[0], hit[1]);
      } else if (hit.size() == 4) {
        const double mid = safe_lambda(node(i, j) + Vec2(0.5 * hu, 0.5 * hv));
        if (positive(mid) == positive(c00)) {
          link(ids[0], ids[1]);
          link(ids[2], ids[3]);
        } else {
          link(ids[0], ids[3]);
          link(ids[1], ids[2]);
        }
      }
    }
  }
  for (const auto& [id, _] : root)
    if (!adj.count(id)) adj[id];

  auto polish = [&](Vec2 q) {
    for (int it = 0; it < 30; ++it) {
      const double l = field.lambda(q);
      if (std::abs(l) <= 1e-13) break;
      const Vec2 g = field.lambda_gradient(q);
      const double g2 = g.squaredNorm();
      if (!(g2 > 1e-24)) break;
      const Vec2 step = l * g / g2;
      q -= step;
      if (step.norm() < 1e-15) break;
    }
    return q;
  };

  SingularCurve out;
  std::map<long, bool> seen;
  auto walk = [&](long start) {
    std::vector<long> chain{start};
    seen[start] = true;
    long prev = -1, cur = start;
    for (;;) {
      long next = -1;
      for (long nb : adj[cur])
        if (nb != prev && !seen[nb]) {
          next = nb;
          break;
        }
      if (next < 0) break;
      seen[next] = true;
      chain.push_back(next);
      prev = cur;
      cur = next;
    }
    std::vector<SingularSample> branch;
    for (long id : chain) {
      const Vec2 q = polish(root[id]);
      if (!D.contains(q) && (D.clamp(q) - q).norm() > 1e-9) continue;
      if (!branch.empty() && (branch.back().q - q).norm() < 1e-10) continue;
      SingularSample s;
      s.q = q;
      try {
        s.grad = field.lambda_gradient(q);
        s.null_dir = null_direction(field.germ(), q);
      } catch (const Error&) {
        s.grad = Vec2::Zero();
      }
      s.nondegenerate = s.grad.norm() > tol;
      if (s.grad.norm() > 0.0) s.tangent = Vec2(-s.grad.y(), s.grad.x()).normalized();
      else s.tangent = Vec2::Zero();
      if (s.nondegenerate) {
        const double sn = std::abs(s.null_dir.x() * s.tangent.y() - s.null_dir.y() * s.tangent.x());
        s.type = sn > 1e-6 ? 1 : 2;
      }
      branch.push_back(s);
    }
    if (branch.empty()) return;
    out.branches.push_back(out.samples.size());
    out.samples.insert(out.samples.end(), branch.begin(), branch.end());
  };
  for (const auto& [id, nbs] : adj)
    if (nbs.size() <= 1 && !seen[id]) walk(id);
  for (const auto& [id, nbs] : adj)
    if (!seen[id]) walk(id);
  return out;
}

double limiting_normal_curvature(const NormalField& field, const Vec2& q) {
  const Vec2 g = field.lambda_gradient(q);
  if (g.norm() <= 1e-10) throw PreconditionError("degenerate singular point " + point_text(q));
  if (singular_type(field, q) != 1)
    throw PreconditionError("limiting normal curvature needs a type I point; " + point_text(q) + " is type II");
  const Vec2 T(-g.y(), g.x());
  const Jet j = field.germ().jet(q, 2);
  const Vec3 fu = column(j, 1, 0), fv = column(j, 0, 1);
  const Vec3 d1 = T.x() * fu + T.y() * fv;
  // The acceleration of the traced curve contributes df(gamma''), which is
  // tangent to the limiting tangent plane and drops out against nu.
  const Vec3 d2 = T.x() * T.x() * column(j, 2, 0) + 2.0 * T.x() * T.y() * column(j, 1, 1) +
                  T.y() * T.y() * column(j, 0, 2);
  const double speed2 = d1.squaredNorm();
  if (speed2 <= 1e-24) throw PreconditionError("image of the singular curve is singular at " + point_text(q));
  return d2.dot(field(q)) / speed2;
}

SectionJets section_jets(const SurfaceGerm& germ, const Vec2& q, const Vec2& eta_in) {
  SectionJets s;
  s.eta = eta_in.normalized();
  s.xi = Vec2(s.eta.y(), -s.eta.x());
  const Jet j = germ.jet(q, 3);
  const Taylor a = Taylor::variable(0.0, 0), b = Taylor::variable(0.0, 1);
  const Taylor du = s.xi.x() * a + s.eta.x() * b;
  const Taylor dv = s.xi.y() * a + s.eta.y() * b;
  std::array<Taylor, 4> dup, dvp;
  dup[0] = dvp[0] = Taylor(1.0);
  for (int k = 1; k < 4; ++k) {
    dup[k] = dup[k - 1] * du;
    dvp[k] = dvp[k - 1] * dv;
  }
  std::array<Taylor, 3> F;
  for (int c = 0; c < 3; ++c) {
    Taylor acc(0.0);
    for (int d = 0; d <= 3; ++d)
      for (int jj = 0; jj <= d; ++jj) acc += j.comps[c].coeff(d - jj, jj) * (dup[d - jj] * dvp[jj]);
    F[c] = acc;
  }
  auto P = [&](int i, int k) { return Vec3(F[0].partial(i, k), F[1].partial(i, k), F[2].partial(i, k)); };
  const Vec3 F10 = P(1, 0), F02 = P(0, 2), F11 = P(1, 1), F03 = P(0, 3);
  const double len = F10.norm();
  if (!(len > 1e-12)) throw PreconditionError("df vanishes across the null direction at " + point_text(q));
  s.origin = column(j, 0, 0);
  s.e = F10 / len;
  s.A2 = -0.5 * F02.dot(s.e) / len;
  s.sigma2 = F10 * s.A2 + 0.5 * F02;
  s.A3 = -(F11 * s.A2 + F03 / 6.0).dot(s.e) / len;
  s.sigma3 = F10 * s.A3 + F11 * s.A2 + F03 / 6.0;
  return s;
}

FrameReport distinguished_frame(const NormalField& field, const Vec2& p) {
  const SurfaceGerm& g = field.germ();
  const auto [fu, fv] = g.tangents(p);
  const Rank r = rank_info(fu, fv);
  if (r.smax <= 1e-8) throw PreconditionError("co-rank two singular point " + point_text(p));
  if (r.smin > 1e-8 * std::max(1.0, r.smax)) throw PreconditionError(point_text(p) + " is a regular point");
  FrameReport rep;
  rep.null_dir = r.null_dir;
  rep.xi = Vec2(r.null_dir.y(), -r.null_dir.x());
  const Vec3 t = (rep.xi.x() * fu + rep.xi.y() * fv).normalized();
  Vec3 nu = field(p);
  nu = (nu - nu.dot(t) * t).normalized();
  rep.frame = GermFrame::make(g(p), t, nu, 1e-8);
  rep.planes = distinguished_planes(rep.frame);
  const SectionJets s = section_jets(g, p, rep.null_dir);
  const double k = rep.frame.w.dot(s.sigma2);
  if (std::abs(k) > 1e-8) rep.cuspidal_direction = k > 0.0 ? rep.frame.w : Vec3(-rep.frame.w);
  return rep;
}

PointClass classify_point(const NormalField& field, const Vec2& p, double tol) {
  const SurfaceGerm& g = field.germ();
  const auto [fu, fv] = g.tangents(p);
  const Rank r = rank_info(fu, fv);
  if (r.smax <= tol) return PointClass::corank_two;
  if (r.smin > tol * std::max(1.0, r.smax)) return PointClass::regular;
  const Vec2 grad = field.lambda_gradient(p);
  if (grad.norm() <= tol) return PointClass::degenerate;
  if (singular_type(field, p) == 2) return PointClass::swallowtail;
  const SectionJets s = section_jets(g, p, r.null_dir);
  if (s.sigma2.norm() <= tol) return PointClass::degenerate;
  return s.sigma2.cross(s.sigma3).norm() > tol ? PointClass::cuspidal_edge : PointClass::cuspidal_cross_cap;
}

}  // namespace frontal
