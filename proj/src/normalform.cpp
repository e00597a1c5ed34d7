#include "frontal/normalform.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "frontal/exprlang.hpp"

namespace frontal {

namespace {

double scalar_at(const Map& m, double u, double v) {
  const std::array<double, 2> x{u, v};
  std::array<double, 1> out{};
  m.eval(x, out);
  return out[0];
}

// Cubic Hermite on a uniform (x, y) grid: spline rows in y, Catmull-Rom across x.
struct Grid2 {
  Interval xr, yr;
  std::vector<UniformHermite> rows;

  double operator()(double x, double y) const {
    const int n = static_cast<int>(rows.size());
    const double h = xr.length() / (n - 1);
    const double r = std::clamp((x - xr.lo) / h, 0.0, static_cast<double>(n - 1));
    const int i = std::min(static_cast<int>(r), n - 2);
    const double t = r - i;
    auto row = [&](int k) { return rows[static_cast<std::size_t>(std::clamp(k, 0, n - 1))](y); };
    const double p0 = row(i - 1), p1 = row(i), p2 = row(i + 1), p3 = row(i + 2);
    const double m1 = i == 0 ? p2 - p1 : 0.5 * (p2 - p0);
    const double m2 = i + 2 > n - 1 ? p2 - p1 : 0.5 * (p3 - p1);
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * p1 + (t3 - 2 * t2 + t) * m1 + (-2 * t3 + 3 * t2) * p2 + (t3 - t2) * m2;
  }
};

Map grid_map(Interval xr, Interval yr, const std::vector<std::vector<double>>& values) {
  auto g = std::make_shared<Grid2>();
  g->xr = xr;
  g->yr = yr;
  for (const auto& row : values) g->rows.emplace_back(yr, row);
  return Map(2, 1, [g](std::span<const double> x, std::span<double> out) { out[0] = (*g)(x[0], x[1]); });
}

// f(q + du xi + dv eta) from the Taylor data of f at q and the increments.
std::array<Taylor, 3> compose_jet(const Jet& j, const Taylor& du, const Taylor& dv) {
  const int order = j.order;
  std::array<Taylor, 4> up, vp;
  up[0] = vp[0] = Taylor(1.0, order);
  for (int k = 1; k <= order; ++k) {
    up[k] = up[k - 1] * du;
    vp[k] = vp[k - 1] * dv;
  }
  std::array<Taylor, 3> F;
  for (int c = 0; c < 3; ++c) {
    Taylor acc(0.0, order);
    for (int d = 0; d <= order; ++d)
      for (int k = 0; k <= d; ++k) acc += j.comps[c].coeff(d - k, k) * (up[d - k] * vp[k]);
    F[c] = acc;
  }
  return F;
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

Vec3 EdgeNormalForm::d(double u) const {
  const FrenetSample f = frenet(crease, u);
  const double t = theta(u);
  return std::cos(t) * f.n - std::sin(t) * f.b;
}

Vec3 EdgeNormalForm::dperp(double u) const {
  const FrenetSample f = frenet(crease, u);
  const double t = theta(u);
  return std::sin(t) * f.n + std::cos(t) * f.b;
}

Map scalar_field(const std::string& text) { return expr::make_mapdef("field", {"u", "v"}, {text}).compile(); }

EdgeNormalForm make_normal_form(const SpaceCurve& crease, Profile theta, Map a, Map b, double halfwidth,
                                int stations) {
  if (!(halfwidth > 0.0)) throw PreconditionError("normal form halfwidth must be positive");
  if (stations < 2) throw PreconditionError("normal form needs at least two stations");
  if (!a || a.in_dim() != 2 || a.out_dim() != 1) throw PreconditionError("a must be a scalar field in (u, v)");
  if (b && (b.in_dim() != 2 || b.out_dim() != 1)) throw PreconditionError("b must be a scalar field in (u, v)");
  EdgeNormalForm nf;
  const Interval dom = crease.domain();
  bool unit = true;
  for (double u : linspace(dom.lo, dom.hi, 65))
    if (std::abs(crease.derivatives(u, 1)[1].norm() - 1.0) > 1e-9) unit = false;
  nf.crease = unit ? crease
                   : arclength_param(crease, 1e-10, dom.contains(0.0) ? std::optional<double>(0.0) : std::nullopt);
  nf.theta = std::move(theta);
  nf.a = std::move(a);
  nf.b = std::move(b);
  nf.halfwidth = halfwidth;
  nf.stations = linspace(nf.crease.domain().lo, nf.crease.domain().hi, static_cast<std::size_t>(stations));
  for (double u : nf.stations)
    if (std::abs(scalar_at(nf.a, u, 0.0)) < 1e-12)
      throw PreconditionError("a(u,0) vanishes at u = " + num(u));
  return nf;
}

double half_arclength(const Map& sigma, double t) {
  if (sigma.in_dim() != 1) throw PreconditionError("half-arc-length needs a curve");
  const std::array<double, 1> zero{0.0};
  const Jet j = eval_jet(sigma, zero, 2);
  double d1 = 0.0, d2 = 0.0;
  for (std::size_t c = 0; c < j.size(); ++c) {
    d1 += j.partial(c, 1) * j.partial(c, 1);
    d2 += j.partial(c, 2) * j.partial(c, 2);
  }
  if (std::sqrt(d1) > 1e-8) throw PreconditionError("curve is regular at 0, not a cusp");
  if (std::sqrt(d2) <= 1e-8) throw PreconditionError("degenerate cusp: second derivative vanishes at 0");
  if (t == 0.0) return 0.0;
  auto speed = [&](double x) {
    const std::array<double, 1> p{x};
    const Jet k = eval_jet(sigma, p, 1);
    double s = 0.0;
    for (std::size_t c = 0; c < k.size(); ++c) s += k.partial(c, 1) * k.partial(c, 1);
    return std::sqrt(s);
  };
  const double len = integrate(speed, {std::min(0.0, t), std::max(0.0, t)}, 1e-14);
  return std::copysign(std::sqrt(len), t);
}

// ---------------------------------------------------------------------------

double CreaseTrace::t_of_s(double s) const {
  double t = std::clamp(s / speed(0.0), t_range.lo, t_range.hi);
  for (int it = 0; it < 60; ++it) {
    const double step = (arc_length(t) - s) / speed(t);
    t = std::clamp(t - step, t_range.lo, t_range.hi);
    if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(t))) break;
  }
  return t;
}

CreaseTrace trace_crease(const SurfaceGerm& germ) {
  CreaseTrace tr;
  tr.field = NormalField(germ);
  tr.p = germ.base();
  const FrameReport fr = distinguished_frame(tr.field, tr.p);
  if (singular_type(tr.field, tr.p) != 1)
    throw PreconditionError("base point of '" + germ.name() + "' is a type II singular point");
  tr.eta = fr.null_dir;
  tr.xi = fr.xi;
  const Rect D = germ.domain();

  // Largest |t| keeping p + t xi inside the domain, per direction.
  auto reach = [&](double dir) {
    double tmax = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 2; ++k) {
      const double x = dir * tr.xi[k];
      const Interval iv = k == 0 ? D.u : D.v;
      if (x > 1e-15) tmax = std::min(tmax, (iv.hi - tr.p[k]) / x);
      if (x < -1e-15) tmax = std::min(tmax, (iv.lo - tr.p[k]) / x);
    }
    return tmax;
  };

  auto solve = [&](double t, double g0, double& g) {
    g = g0;
    for (int it = 0; it < 40; ++it) {
      const Vec2 q = tr.p + t * tr.xi + g * tr.eta;
      const double l = tr.field.lambda(q);
      if (l == 0.0) return true;
      const Vec2 grad = tr.field.lambda_gradient(q);
      const double dl = grad.dot(tr.eta);
      if (std::abs(dl) < 1e-3 * grad.norm() || grad.norm() < 1e-12) return false;
      const double step = l / dl;
      g -= step;
      if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(g))) return true;
    }
    const Vec2 q = tr.p + t * tr.xi + g * tr.eta;
    return std::abs(tr.field.lambda(q)) < 1e-11;
  };

  std::vector<std::pair<double, double>> table{{0.0, 0.0}};
  {
    double g;
    if (!solve(0.0, 0.0, g) || std::abs(g) > 1e-8)
      throw PreconditionError("base point of '" + germ.name() + "' is not on its singular curve");
    table[0].second = g;
  }
  double lo = 0.0, hi = 0.0;
  for (double dir : {1.0, -1.0}) {
    const double tmax = reach(dir);
    const int steps = 128;
    const double h = tmax / steps;
    double tprev = 0.0, gprev = table[0].second, slope = 0.0;
    for (int k = 1; k <= steps; ++k) {
      const double t = dir * k * h;
      double g;
      bool ok = false;
      try {
        ok = solve(t, gprev + slope * (t - tprev), g);
      } catch (const Error&) {
        ok = false;
      }
      const Vec2 q = tr.p + t * tr.xi + (ok ? g : 0.0) * tr.eta;
      if (!ok || !D.contains(q)) break;
      slope = (g - gprev) / (t - tprev);
      tprev = t;
      gprev = g;
      table.emplace_back(t, g);
      (dir > 0 ? hi : lo) = t;
    }
  }
  if (hi - lo <= 0.0) throw PreconditionError("could not trace the singular curve of '" + germ.name() + "'");
  std::sort(table.begin(), table.end());
  tr.t_range = Interval(lo, hi);

  auto guess = [&](double t) {
    auto it = std::lower_bound(table.begin(), table.end(), std::make_pair(t, -1e300));
    if (it == table.begin()) return it->second;
    if (it == table.end()) return table.back().second;
    const auto& [t1, g1] = *it;
    const auto& [t0, g0] = *(it - 1);
    return g0 + (g1 - g0) * (t - t0) / (t1 - t0);
  };
  constexpr int kDegree = 48;
  std::vector<double> gv;
  for (double t : Chebyshev::nodes(tr.t_range, kDegree)) {
    double g;
    if (!solve(t, guess(t), g))
      throw ConvergenceError("singular curve refinement failed at t = " + num(t), t);
    gv.push_back(g);
  }
  tr.offset = Chebyshev::from_values(tr.t_range, gv);

  const auto d1 = std::make_shared<Chebyshev>(tr.offset.derivative());
  const auto d2 = std::make_shared<Chebyshev>(d1->derivative());
  const auto d3 = std::make_shared<Chebyshev>(d2->derivative());
  const SurfaceGerm g = germ;
  const Vec2 p = tr.p, xi = tr.xi, eta = tr.eta;
  const Chebyshev off = tr.offset;
  auto eval = [g, p, xi, eta, off](std::span<const double> t, std::span<double> out) {
    const Vec3 x = g(p + t[0] * xi + off(t[0]) * eta);
    out[0] = x[0], out[1] = x[1], out[2] = x[2];
  };
  auto jet = [g, p, xi, eta, off, d1, d2, d3](std::span<const double> t, int order) {
    const double s = t[0];
    const Vec2 q = p + s * xi + off(s) * eta;
    const Jet fj = g.jet(q, order);
    const Taylor dt = Taylor::variable(0.0, 0, order);
    const double o1 = (*d1)(s), o2 = (*d2)(s), o3 = (*d3)(s);
    Taylor dg = o1 * dt;
    if (order >= 2) dg += (0.5 * o2) * (dt * dt);
    if (order >= 3) dg += (o3 / 6.0) * (dt * dt * dt);
    const Taylor du = xi.x() * dt + eta.x() * dg;
    const Taylor dv = xi.y() * dt + eta.y() * dg;
    const auto F = compose_jet(fj, du, dv);
    Jet out;
    out.nvars = 1;
    out.order = order;
    out.comps.assign(F.begin(), F.end());
    return out;
  };
  tr.raw = SpaceCurve(Map(1, 3, eval, jet), tr.t_range, germ.name() + "/crease");
  tr.crease = arclength_param(tr.raw, 1e-10, 0.0);
  const SpaceCurve raw = tr.raw;
  tr.speed = Chebyshev::fit([&](double t) { return raw.derivatives(t, 1)[1].norm(); }, tr.t_range, 64);
  tr.arc_length = tr.speed.integral(0.0);
  return tr;
}

SectionalCusp sectional_cusp(const CreaseTrace& tr, double s, double halfwidth, int wcount) {
  const Interval sr = tr.s_range();
  if (s < sr.lo - 1e-12 || s > sr.hi + 1e-12)
    throw PreconditionError("station " + num(s) + " is outside the traced singular range [" + num(sr.lo) + ", " +
                            num(sr.hi) + "]");
  if (wcount < 3 || wcount % 2 == 0) throw PreconditionError("w grid size must be odd and at least 3");
  const SurfaceGerm& germ = tr.field.germ();
  SectionalCusp sc;
  sc.s = s;
  const double t = tr.t_of_s(s);
  sc.q = tr.point(t);
  Vec2 eta = null_direction(germ, sc.q);
  if (eta.dot(tr.eta) < 0.0) eta = -eta;
  const SectionJets sj = section_jets(germ, sc.q, eta);
  sc.origin = sj.origin;
  sc.e = sj.e;
  if (sj.sigma2.norm() <= 1e-10) throw PreconditionError("degenerate section at station " + num(s));
  try {
    const FrenetSample fs = frenet(tr.crease, s);
    sc.n = fs.n;
    sc.b = fs.b;
  } catch (const DomainError&) {
    // Straight crease: identify the plane with the cusp opening along n.
    sc.n = (sj.sigma2 - sj.sigma2.dot(sc.e) * sc.e).normalized();
    sc.b = sc.e.cross(sc.n);
  }
  sc.plane = Plane(sc.origin, sc.e);
  auto nb = [&](const Vec3& x) { return Vec2(x.dot(sc.n), x.dot(sc.b)); };
  sc.sigma2 = nb(sj.sigma2);
  sc.sigma3 = nb(sj.sigma3);
  const double m2 = sc.sigma2.norm();
  const Vec2 d = sc.sigma2 / m2;
  sc.theta = std::atan2(-d.y(), d.x());
  const Vec2 dp(std::sin(sc.theta), std::cos(sc.theta));
  sc.b0 = sc.sigma3.dot(dp) / std::pow(m2, 1.5);

  // Section curve beta -> f(q + alpha(beta) xi + beta eta) with (f - origin).e = 0.
  const Vec2 xi = sj.xi;
  constexpr int K = 128;  // nodes per side
  double beta_max = 1.5 * halfwidth / std::sqrt(m2);
  for (int attempt = 0; attempt < 5; ++attempt, beta_max *= 2.0) {
    const double h = beta_max / K;
    std::vector<Vec2> pts(2 * K + 1, Vec2::Zero());
    for (int side : {1, -1}) {
      double a_prev = 0.0, a_prev2 = 0.0;
      for (int m = 1; m <= K; ++m) {
        const double beta = side * m * h;
        auto F = [&](double alpha) { return (germ(sc.q + alpha * xi + beta * eta) - sc.origin).dot(sc.e); };
        double x0 = m <= 2 ? sj.A2 * beta * beta + sj.A3 * beta * beta * beta : 2.0 * a_prev - a_prev2;
        double x1 = x0 + 1e-7 * (1.0 + std::abs(x0));
        double f0 = F(x0), f1 = F(x1);
        bool done = std::abs(f0) < 1e-15;
        for (int it = 0; it < 50 && !done; ++it) {
          if (f1 == f0) break;
          const double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
          x0 = x1, f0 = f1;
          x1 = x2, f1 = F(x1);
          done = std::abs(f1) < 1e-15 || std::abs(x1 - x0) < 1e-15 * std::max(1.0, std::abs(x1));
        }
        if (!done && std::abs(f1) > 1e-12)
          throw ConvergenceError("section solve diverged at station " + num(s) + ", beta = " + num(beta), x1);
        a_prev2 = m == 1 ? 0.0 : a_prev;
        a_prev = x1;
        pts[K + side * m] = nb(germ(sc.q + x1 * xi + beta * eta) - sc.origin);
      }
    }
    std::vector<double> xs(2 * K + 1), ys(2 * K + 1);
    for (int i = 0; i <= 2 * K; ++i) xs[i] = pts[i].x(), ys[i] = pts[i].y();
    const Interval br(-beta_max, beta_max);
    const UniformHermite sx(br, xs), sy(br, ys);
    auto speed = [&](double beta) { return std::hypot(sx.derivative(beta), sy.derivative(beta)); };
    // Cumulative arc length from 0 on each side, by |beta| node.
    std::array<std::vector<double>, 2> L;
    for (int side : {0, 1}) {
      const double sg = side == 0 ? 1.0 : -1.0;
      L[side].assign(K + 1, 0.0);
      for (int m = 1; m <= K; ++m)
        L[side][m] = L[side][m - 1] + integrate([&](double x) { return speed(sg * x); }, {(m - 1) * h, m * h}, 1e-16);
    }
    if (std::min(L[0][K], L[1][K]) < halfwidth * halfwidth * (1.0 + 1e-9)) continue;

    sc.w = linspace(-halfwidth, halfwidth, static_cast<std::size_t>(wcount));
    sc.points.clear();
    sc.a_values.clear();
    sc.b_values.clear();
    for (double w : sc.w) {
      if (w == 0.0) {
        sc.points.emplace_back(0.0, 0.0);
        sc.a_values.push_back(1.0);
        sc.b_values.push_back(sc.b0);
        continue;
      }
      const int side = w > 0 ? 0 : 1;
      const double sg = w > 0 ? 1.0 : -1.0;
      const double target = w * w;
      const auto& Ls = L[side];
      int m = 1;
      while (m < K && Ls[m] < target) ++m;
      const double base = Ls[m - 1];
      auto g = [&](double x) {
        return base + integrate([&](double y) { return speed(sg * y); }, {(m - 1) * h, x}, 1e-16);
      };
      double ab;
      try {
        ab = invert_monotone(g, target, {(m - 1) * h, m * h}, 1e-15 * std::max(1.0, target));
      } catch (const ConvergenceError& e) {
        ab = e.best_estimate();
      }
      const double beta = sg * ab;
      const Vec2 p(sx(beta), sy(beta));
      sc.points.push_back(p);
      sc.a_values.push_back(p.dot(d) / (w * w));
      sc.b_values.push_back(p.dot(dp) / (w * w * w));
    }
    std::vector<double> px, py;
    for (const Vec2& p : sc.points) px.push_back(p.x()), py.push_back(p.y());
    sc.x_spline = UniformHermite({-halfwidth, halfwidth}, px);
    sc.y_spline = UniformHermite({-halfwidth, halfwidth}, py);
    return sc;
  }
  throw ConvergenceError("section at station " + num(s) + " does not reach half-arc-length " + num(halfwidth), beta_max);
}

SectionalCusp sectional_cusp(const SurfaceGerm& germ, double s, double halfwidth) {
  return sectional_cusp(trace_crease(germ), s, halfwidth);
}

EdgeNormalForm to_normal_form(const SurfaceGerm& germ, double halfwidth, int stations, int wcount) {
  if (stations < 2) throw PreconditionError("normal form needs at least two stations");
  const CreaseTrace tr = trace_crease(germ);
  const Interval sr = tr.s_range();
  EdgeNormalForm nf;
  nf.crease = tr.crease;
  nf.halfwidth = halfwidth;
  nf.stations = linspace(sr.lo, sr.hi, static_cast<std::size_t>(stations));
  std::vector<double> theta;
  for (double s : nf.stations) {
    const FrenetSample fs = [&] {
      try {
        return frenet(tr.crease, s);
      } catch (const DomainError&) {
        throw PreconditionError("crease of '" + germ.name() + "' has vanishing curvature at s = " + num(s));
      }
    }();
    if (fs.kappa <= 1e-9)
      throw PreconditionError("crease of '" + germ.name() + "' has vanishing curvature at s = " + num(s));
    const SectionalCusp sc = sectional_cusp(tr, s, halfwidth, wcount);
    double th = sc.theta;
    if (!theta.empty()) {
      while (th - theta.back() > std::numbers::pi) th -= 2 * std::numbers::pi;
      while (th - theta.back() < -std::numbers::pi) th += 2 * std::numbers::pi;
    }
    theta.push_back(th);
    nf.a_grid.push_back(sc.a_values);
    nf.b_grid.push_back(sc.b_values);
    if (nf.w_grid.empty()) nf.w_grid = sc.w;
  }
  nf.theta = Profile::sampled(UniformHermite(sr, theta));
  const Interval wr(-halfwidth, halfwidth);
  nf.a = grid_map(sr, wr, nf.a_grid);
  nf.b = grid_map(sr, wr, nf.b_grid);
  return nf;
}

// ---------------------------------------------------------------------------

SurfaceGerm from_normal_form(const EdgeNormalForm& nf) {
  if (!nf.crease) throw PreconditionError("normal form has no crease");
  if (!nf.a || !nf.b) throw PreconditionError("normal form needs both a and b to be evaluated as a surface");
  const auto form = std::make_shared<EdgeNormalForm>(nf);

  struct Frame {
    std::array<Vec3, 4> c;
    Vec3 d, dp, dd, ddp;
  };
  auto frame = [form](double u) {
    Frame F;
    F.c = form->crease.derivatives(u, 3);
    const FrenetSample fs = frenet(form->crease, u);
    const double th = form->theta(u), dth = form->theta.derivative(u);
    F.d = std::cos(th) * fs.n - std::sin(th) * fs.b;
    F.dp = std::sin(th) * fs.n + std::cos(th) * fs.b;
    F.dd = -fs.kappa * std::cos(th) * fs.e + (fs.tau - dth) * F.dp;
    F.ddp = -fs.kappa * std::sin(th) * fs.e + (dth - fs.tau) * F.d;
    return F;
  };

  auto eval = [form](std::span<const double> x, std::span<double> out) {
    const double u = x[0], v = x[1];
    const FrenetSample fs = frenet(form->crease, u);
    const double th = form->theta(u);
    const Vec3 d = std::cos(th) * fs.n - std::sin(th) * fs.b;
    const Vec3 dp = std::sin(th) * fs.n + std::cos(th) * fs.b;
    const Vec3 p = fs.point + v * v * scalar_at(form->a, u, v) * d + v * v * v * scalar_at(form->b, u, v) * dp;
    out[0] = p[0], out[1] = p[1], out[2] = p[2];
  };

  auto jet = [form, frame, eval](std::span<const double> x, int order) {
    const double u = x[0], v = x[1];
    if (order >= 2 && v != 0.0) return finite_difference_jet(eval, 2, 3, x, order);
    const Frame F = frame(u);
    const std::array<double, 2> q{u, v};
    const Jet aj = eval_jet(form->a, q, 1), bj = eval_jet(form->b, q, 1);
    const Taylor du = Taylor::variable(0.0, 0, order), dv = Taylor::variable(0.0, 1, order);
    const Taylor V = v + dv;
    const Taylor a = aj.value(0) + aj.partial(0, 1, 0) * du + aj.partial(0, 0, 1) * dv;
    const Taylor b = bj.value(0) + bj.partial(0, 1, 0) * du + bj.partial(0, 0, 1) * dv;
    const Taylor V2a = V * V * a, V3b = V * V * V * b;
    Jet out;
    out.nvars = 2;
    out.order = order;
    for (int c = 0; c < 3; ++c) {
      Taylor cc(F.c[0][c], order);
      double fact = 1.0;
      for (int k = 1; k <= order; ++k) {
        fact *= k;
        cc.coeff(k, 0) = F.c[k][c] / fact;
      }
      const Taylor d = F.d[c] + F.dd[c] * du;
      const Taylor dp = F.dp[c] + F.ddp[c] * du;
      out.comps.push_back(cc + V2a * d + V3b * dp);
    }
    return out;
  };

  auto normal = [form, frame](std::span<const double> x, std::span<double> out) {
    const double u = x[0], v = x[1];
    const Frame F = frame(u);
    const std::array<double, 2> q{u, v};
    const Jet aj = eval_jet(form->a, q, 1), bj = eval_jet(form->b, q, 1);
    const double a = aj.value(0), au = aj.partial(0, 1, 0), av = aj.partial(0, 0, 1);
    const double b = bj.value(0), bu = bj.partial(0, 1, 0), bv = bj.partial(0, 0, 1);
    const Vec3 fu = F.c[1] + v * v * (au * F.d + a * F.dd) + v * v * v * (bu * F.dp + b * F.ddp);
    const Vec3 fv_over_v = (2 * a + v * av) * F.d + (3 * v * b + v * v * bv) * F.dp;
    const Vec3 n = fu.cross(fv_over_v).normalized();
    out[0] = n[0], out[1] = n[1], out[2] = n[2];
  };

  const Interval dom = nf.crease.domain();
  const Rect rect{dom, Interval(-nf.halfwidth, nf.halfwidth)};
  const Vec2 base(dom.contains(0.0) ? 0.0 : dom.mid(), 0.0);
  return SurfaceGerm("normal_form", Map(2, 3, eval, jet), rect, base, Map(2, 3, normal), GermKind::normal_form);
}

EdgeInvariants edge_invariants(double kappa, double theta) {
  return {theta, kappa, kappa * std::cos(theta), kappa * std::sin(theta)};
}

EdgeInvariants edge_invariants(const EdgeNormalForm& nf, double u) {
  return edge_invariants(frenet(nf.crease, u).kappa, nf.theta(u));
}

bool is_cuspidal_edge(const EdgeNormalForm& nf, double u, double tol) {
  if (!nf.b) return false;
  return std::abs(scalar_at(nf.b, u, 0.0)) > tol;
}

}  // namespace frontal
