#include "frontal/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

namespace frontal {

namespace {

constexpr double kFactorial[] = {1.0, 1.0, 2.0, 6.0};

Jet jet_from_derivatives(const std::array<Vec3, 4>& d, int order) {
  Jet j;
  j.nvars = 1;
  j.order = order;
  for (int c = 0; c < 3; ++c) {
    Taylor t(0.0, order);
    for (int k = 0; k <= order; ++k) t.coeff(k, 0) = d[k][c] / kFactorial[k];
    j.comps.push_back(t);
  }
  return j;
}

}  // namespace

SpaceCurve::SpaceCurve(Map map, Interval domain, std::string name)
    : map_(std::move(map)), domain_(domain), name_(std::move(name)) {
  if (map_.in_dim() != 1 || map_.out_dim() != 3) throw PreconditionError("space curve must map R -> R^3");
}

Vec3 SpaceCurve::operator()(double u) const {
  double out[3];
  map_.eval(std::span<const double>(&u, 1), out);
  return {out[0], out[1], out[2]};
}

std::array<Vec3, 4> SpaceCurve::derivatives(double u, int order) const {
  const Jet j = eval_jet(map_, std::span<const double>(&u, 1), order);
  std::array<Vec3, 4> d{Vec3::Zero(), Vec3::Zero(), Vec3::Zero(), Vec3::Zero()};
  for (int k = 0; k <= order; ++k) d[k] = Vec3(j.partial(0, k), j.partial(1, k), j.partial(2, k));
  return d;
}

FrenetSample frenet(const SpaceCurve& curve, double u) {
  const auto d = curve.derivatives(u, 3);
  FrenetSample s;
  s.u = u;
  s.point = d[0];
  s.speed = d[1].norm();
  if (!(s.speed > 1e-14)) throw DomainError("vanishing speed at u = " + std::to_string(u));
  const Vec3 cr = d[1].cross(d[2]);
  const double crn = cr.norm();
  s.kappa = crn / (s.speed * s.speed * s.speed);
  if (!(s.kappa > 1e-12)) throw DomainError("vanishing curvature at u = " + std::to_string(u) + ": Frenet frame undefined");
  s.e = d[1] / s.speed;
  s.b = cr / crn;
  s.n = s.b.cross(s.e);
  s.tau = cr.dot(d[3]) / (crn * crn);
  return s;
}

// ---------------------------------------------------------------------------
// Arc length

namespace {

// Unit-speed curve s -> c(phi(s)) where phi' = 1 / |c'(phi)|.
struct ArcTable {
  SpaceCurve base;
  double anchor_u = 0.0;
  std::vector<double> u_nodes;  // uniform in u
  std::vector<double> s_nodes;  // arc length from anchor

  double speed(double u) const { return base.derivatives(u, 1)[1].norm(); }

  double length_to(double u, std::size_t k) const {
    return s_nodes[k] + integrate([this](double x) { return speed(x); }, {std::min(u_nodes[k], u), std::max(u_nodes[k], u)}, 1e-14) *
                            (u >= u_nodes[k] ? 1.0 : -1.0);
  }

  double phi(double s) const {
    const std::size_t n = s_nodes.size();
    if (s <= s_nodes.front()) return u_nodes.front() + (s - s_nodes.front()) / speed(u_nodes.front());
    if (s >= s_nodes.back()) return u_nodes.back() + (s - s_nodes.back()) / speed(u_nodes.back());
    const std::size_t k = std::min<std::size_t>(
        n - 2, static_cast<std::size_t>(std::upper_bound(s_nodes.begin(), s_nodes.end(), s) - s_nodes.begin()) - 1);
    if (s == s_nodes[k]) return u_nodes[k];
    const double scale = std::max(1.0, std::abs(s_nodes.back() - s_nodes.front()));
    return invert_monotone([&](double u) { return length_to(u, k); }, s, {u_nodes[k], u_nodes[k + 1]}, 1e-14 * scale);
  }

  Jet jet(double s, int order) const {
    const double u0 = phi(s);
    const auto d = base.derivatives(u0, order);
    // delta(s) = phi(s) - u0 as a truncated series, by Picard iteration on
    // delta' = 1 / |c'(u0 + delta)|.
    Taylor delta(0.0, order);
    if (order >= 1) delta.coeff(1, 0) = 1.0 / d[1].norm();
    for (int it = 0; it < order; ++it) {
      Taylor g2(0.0, order);
      for (int c = 0; c < 3; ++c) {
        Taylor dv = Taylor(d[1][c], order) + d[2][c] * delta + (0.5 * d[3][c]) * delta * delta;
        g2 += dv * dv;
      }
      const Taylor inv = 1.0 / sqrt(g2);
      Taylor next(0.0, order);
      for (int k = 1; k <= order; ++k) next.coeff(k, 0) = inv.coeff(k - 1, 0) / k;
      delta = next;
    }
    Jet j;
    j.nvars = 1;
    j.order = order;
    for (int c = 0; c < 3; ++c) {
      Taylor t = Taylor(d[0][c], order);
      Taylor p = delta;
      for (int k = 1; k <= order; ++k) {
        t += (d[k][c] / kFactorial[k]) * p;
        p = p * delta;
      }
      j.comps.push_back(t);
    }
    return j;
  }
};

}  // namespace

SpaceCurve arclength_param(const SpaceCurve& curve, double tol, std::optional<double> anchor) {
  const Interval dom = curve.domain();
  const double a = anchor.value_or(dom.lo);
  const auto probes = linspace(dom.lo, dom.hi, 65);
  double vmin = std::numeric_limits<double>::infinity(), vmax = 0.0;
  for (double u : probes) {
    const double v = curve.derivatives(u, 1)[1].norm();
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  if (!(vmin > 1e-12)) throw DomainError("vanishing speed inside the curve domain");

  const std::string name = curve.name().empty() ? "arclength" : curve.name() + "/arclength";
  if (vmax - vmin <= 1e-9 * vmax) {
    // Constant speed: the reparametrization is affine.
    const double v0 = curve.derivatives(a, 1)[1].norm();
    auto eval = [curve, a, v0](std::span<const double> s, std::span<double> out) {
      const Vec3 p = curve(a + s[0] / v0);
      out[0] = p[0], out[1] = p[1], out[2] = p[2];
    };
    auto jet = [curve, a, v0](std::span<const double> s, int order) {
      auto d = curve.derivatives(a + s[0] / v0, order);
      double scale = 1.0;
      for (int k = 1; k <= order; ++k) d[k] *= (scale /= v0);
      return jet_from_derivatives(d, order);
    };
    return SpaceCurve(Map(1, 3, eval, jet), {(dom.lo - a) * v0, (dom.hi - a) * v0}, name);
  }

  auto table = std::make_shared<ArcTable>();
  table->base = curve;
  table->anchor_u = a;
  constexpr int kSegments = 512;
  table->u_nodes = linspace(dom.lo, dom.hi, kSegments + 1);
  table->s_nodes.assign(kSegments + 1, 0.0);
  const double quad_tol = std::min(tol, 1e-12) / kSegments;
  for (int k = 0; k < kSegments; ++k)
    table->s_nodes[k + 1] = table->s_nodes[k] + integrate([&](double x) { return table->speed(x); },
                                                          {table->u_nodes[k], table->u_nodes[k + 1]}, quad_tol);
  // Shift so that s = 0 at the anchor.
  std::size_t ka = std::min<std::size_t>(kSegments - 1, static_cast<std::size_t>(
                                                            std::max(0.0, std::floor((a - dom.lo) / dom.length() * kSegments))));
  const double s_anchor = table->length_to(a, ka);
  for (double& s : table->s_nodes) s -= s_anchor;

  auto eval = [table](std::span<const double> s, std::span<double> out) {
    const Vec3 p = table->base(table->phi(s[0]));
    out[0] = p[0], out[1] = p[1], out[2] = p[2];
  };
  auto jet = [table](std::span<const double> s, int order) { return table->jet(s[0], order); };
  return SpaceCurve(Map(1, 3, eval, jet), {table->s_nodes.front(), table->s_nodes.back()}, name);
}

std::optional<Plane> curve_plane(const SpaceCurve& curve, double tol) {
  try {
    double worst = 0.0;
    for (double u : linspace(curve.domain().lo, curve.domain().hi, 65)) worst = std::max(worst, std::abs(frenet(curve, u).tau));
    if (worst >= tol) return std::nullopt;
    const FrenetSample m = frenet(curve, curve.domain().mid());
    return Plane(m.point, m.b);
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Profile matching and curve symmetry

std::vector<ProfileShift> match_profiles(const std::vector<std::vector<double>>& A,
                                         const std::vector<std::vector<double>>& B,
                                         const std::vector<int>& signs) {
  if (A.empty() || A.size() != B.size()) throw PreconditionError("profile sets must have equal row counts");
  const int n = static_cast<int>(A[0].size());
  for (std::size_t r = 0; r < A.size(); ++r)
    if (static_cast<int>(A[r].size()) != n || static_cast<int>(B[r].size()) != n)
      throw PreconditionError("profiles must share one sample grid");
  std::vector<ProfileShift> out;
  for (int sign : signs) {
    // j = sign * i + shift; identity shift is 0, reversal shift is n-1.
    const int center = sign > 0 ? 0 : n - 1;
    ProfileShift best{sign, center, std::numeric_limits<double>::infinity()};
    for (int off = 0; off <= n / 2; ++off) {
      for (int dir : {1, -1}) {
        if (off == 0 && dir < 0) continue;
        const int shift = center + dir * off;
        double m = 0.0;
        int count = 0;
        for (int i = 0; i < n; ++i) {
          const int j = sign * i + shift;
          if (j < 0 || j >= n) continue;
          ++count;
          for (std::size_t r = 0; r < A.size(); ++r) m = std::max(m, std::abs(A[r][i] - B[r][j]));
        }
        if (2 * count < n) continue;
        if (m < best.mismatch) best = {sign, shift, m};
      }
    }
    out.push_back(best);
  }
  return out;
}

namespace {

Isometry reconstruct(const FrenetSample& a, const FrenetSample& b, int det) {
  // S maps c(s) to c(2m - s): e -> -e', n -> n', b -> -det b'.
  Mat3 src, dst;
  src << a.e, a.n, a.b;
  dst << -b.e, b.n, -det * b.b;
  Mat3 Q = dst * src.transpose();
  // Re-orthogonalize against sampling noise.
  Eigen::JacobiSVD<Mat3> svd(Q, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Q = svd.matrixU() * svd.matrixV().transpose();
  return Isometry(Q, b.point - Q * a.point);
}

}  // namespace

std::optional<CurveSymmetry> curve_symmetry(const SpaceCurve& input, double tol) {
  SpaceCurve curve;
  try {
    curve = arclength_param(input, std::min(tol, 1e-10));
  } catch (const DomainError&) {
    return std::nullopt;
  }
  const Interval dom = curve.domain();
  constexpr int kIntervals = 512;
  const int n = kIntervals + 1;
  const double h = dom.length() / kIntervals;
  std::vector<FrenetSample> fs;
  fs.reserve(n);
  try {
    for (int i = 0; i < n; ++i) fs.push_back(frenet(curve, dom.lo + i * h));
  } catch (const DomainError&) {
    return std::nullopt;
  }
  std::vector<std::vector<double>> A(2, std::vector<double>(n));
  for (int i = 0; i < n; ++i) A[0][i] = fs[i].kappa, A[1][i] = fs[i].tau;

  std::optional<CurveSymmetry> best;
  for (int det : {1, -1}) {
    auto B = A;
    for (double& t : B[1]) t *= det;
    const ProfileShift m = match_profiles(A, B, {-1})[0];
    if (!std::isfinite(m.mismatch)) continue;
    // j = shift - i, so the fixed parameter sits at (i + j) / 2 = shift / 2.
    double center = dom.lo + 0.5 * m.shift * h;
    auto mismatch_at = [&](double c) {
      double worst = 0.0;
      for (int i = 0; i <= 64; ++i) {
        const double s = dom.lo + i * dom.length() / 64;
        const double r = 2 * c - s;
        if (r < dom.lo || r > dom.hi) continue;
        const FrenetSample p = frenet(curve, s), q = frenet(curve, r);
        worst = std::max({worst, std::abs(p.kappa - q.kappa), std::abs(p.tau - det * q.tau)});
      }
      return worst;
    };
    if (m.mismatch > 1e-12) {
      // Golden-section refinement of the centre within one grid cell.
      double lo = center - h, hi = center + h;
      const double g = 0.5 * (std::sqrt(5.0) - 1.0);
      double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
      double f1 = mismatch_at(x1), f2 = mismatch_at(x2);
      for (int it = 0; it < 60 && hi - lo > 1e-13; ++it) {
        if (f1 < f2) {
          hi = x2, x2 = x1, f2 = f1;
          x1 = hi - g * (hi - lo), f1 = mismatch_at(x1);
        } else {
          lo = x1, x1 = x2, f1 = f2;
          x2 = lo + g * (hi - lo), f2 = mismatch_at(x2);
        }
      }
      const double refined = 0.5 * (lo + hi);
      if (mismatch_at(refined) < mismatch_at(center)) center = refined;
    }
    center = std::clamp(center, dom.lo, dom.hi);
    const FrenetSample mid = frenet(curve, center);
    const Isometry S = reconstruct(mid, mid, det);
    double residual = 0.0;
    for (int i = 0; i <= 256; ++i) {
      const double s = dom.lo + i * dom.length() / 256;
      const double r = 2 * center - s;
      if (r < dom.lo - 1e-12 || r > dom.hi + 1e-12) continue;
      residual = std::max(residual, (S(curve(s)) - curve(std::clamp(r, dom.lo, dom.hi))).norm());
    }
    if (residual <= tol && (!best || residual < best->residual - 1e-15))
      best = CurveSymmetry{S, det, center, residual};
  }
  if (best && (input.domain().lo != dom.lo || input.domain().hi != dom.hi)) {
    // Report the centre in the caller's parameter.
    auto length_to = [&](double u) {
      return integrate([&](double x) { return input.derivatives(x, 1)[1].norm(); }, {input.domain().lo, u}, 1e-13);
    };
    best->center = invert_monotone(length_to, best->center - dom.lo, input.domain(), 1e-12);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Builtins

SpaceCurve reversed(const SpaceCurve& curve) {
  auto eval = [curve](std::span<const double> s, std::span<double> out) {
    const Vec3 p = curve(-s[0]);
    out[0] = p[0], out[1] = p[1], out[2] = p[2];
  };
  auto jet = [curve](std::span<const double> s, int order) {
    auto d = curve.derivatives(-s[0], order);
    d[1] = -d[1];
    d[3] = -d[3];
    return jet_from_derivatives(d, order);
  };
  return SpaceCurve(Map(1, 3, eval, jet), {-curve.domain().hi, -curve.domain().lo},
                    curve.name().empty() ? "reversed" : curve.name() + "/reversed");
}

namespace {

SpaceCurve from_derivative_fn(std::function<std::array<Vec3, 4>(double)> fn, Interval domain, std::string name) {
  auto eval = [fn](std::span<const double> s, std::span<double> out) {
    const Vec3 p = fn(s[0])[0];
    out[0] = p[0], out[1] = p[1], out[2] = p[2];
  };
  auto jet = [fn](std::span<const double> s, int order) {
    auto d = fn(s[0]);
    for (int k = order + 1; k < 4; ++k) d[k].setZero();
    return jet_from_derivatives(d, order);
  };
  return SpaceCurve(Map(1, 3, eval, jet), domain, std::move(name));
}

}  // namespace

SpaceCurve circle(double r, Interval domain) {
  if (!(r > 0.0)) throw PreconditionError("circle radius must be positive");
  return from_derivative_fn(
      [r](double t) {
        const double c = std::cos(t), s = std::sin(t);
        return std::array<Vec3, 4>{Vec3(r * c, r * s, 0), Vec3(-r * s, r * c, 0), Vec3(-r * c, -r * s, 0),
                                   Vec3(r * s, -r * c, 0)};
      },
      domain, "circle(" + std::to_string(r) + ")");
}

SpaceCurve helix(double a, double b, Interval domain) {
  if (!(a > 0.0)) throw PreconditionError("helix radius must be positive");
  return from_derivative_fn(
      [a, b](double t) {
        const double c = std::cos(t), s = std::sin(t);
        return std::array<Vec3, 4>{Vec3(a * c, a * s, b * t), Vec3(-a * s, a * c, b), Vec3(-a * c, -a * s, 0),
                                   Vec3(a * s, -a * c, 0)};
      },
      domain, "helix(" + std::to_string(a) + "," + std::to_string(b) + ")");
}

SpaceCurve segment(const Vec3& from, const Vec3& to) {
  return from_derivative_fn(
      [from, to](double t) {
        return std::array<Vec3, 4>{from + t * (to - from), to - from, Vec3::Zero(), Vec3::Zero()};
      },
      {0.0, 1.0}, "segment");
}

namespace {

// Frenet-Serret state (c, e, n, b) integrated with classical RK4.
struct FrenetState {
  std::array<Vec3, 4> y;
};

FrenetState rhs(const Profile& kappa, const Profile& tau, double s, const FrenetState& x) {
  const double k = kappa(s), t = tau(s);
  const auto& [c, e, n, b] = x.y;
  (void)c;
  return {{e, k * n, -k * e + t * b, -t * n}};
}

FrenetState axpy(const FrenetState& x, double a, const FrenetState& d) {
  FrenetState r = x;
  for (int i = 0; i < 4; ++i) r.y[i] += a * d.y[i];
  return r;
}

FrenetState rk4(const Profile& kappa, const Profile& tau, double s, const FrenetState& x, double h) {
  const FrenetState k1 = rhs(kappa, tau, s, x);
  const FrenetState k2 = rhs(kappa, tau, s + h / 2, axpy(x, h / 2, k1));
  const FrenetState k3 = rhs(kappa, tau, s + h / 2, axpy(x, h / 2, k2));
  const FrenetState k4 = rhs(kappa, tau, s + h, axpy(x, h, k3));
  FrenetState r = x;
  for (int i = 0; i < 4; ++i) r.y[i] += h / 6 * (k1.y[i] + 2 * k2.y[i] + 2 * k3.y[i] + k4.y[i]);
  return r;
}

}  // namespace

SpaceCurve frenet_curve(Profile kappa, Profile tau, Interval domain, std::string name) {
  const int steps = std::max(256, static_cast<int>(std::ceil(domain.length() / 0.002)));
  const double h = domain.length() / steps;
  auto nodes = std::make_shared<std::vector<FrenetState>>();
  nodes->reserve(steps + 1);
  nodes->push_back({{Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()}});
  for (int i = 0; i < steps; ++i) nodes->push_back(rk4(kappa, tau, domain.lo + i * h, nodes->back(), h));

  auto state = [=](double s) {
    const int k = std::clamp(static_cast<int>(std::lround((s - domain.lo) / h)), 0, steps);
    const double sk = domain.lo + k * h;
    return s == sk ? (*nodes)[k] : rk4(kappa, tau, sk, (*nodes)[k], s - sk);
  };
  return from_derivative_fn(
      [=](double s) {
        const FrenetState x = state(s);
        const auto& [c, e, n, b] = x.y;
        const double k = kappa(s), t = tau(s);
        return std::array<Vec3, 4>{c, e, k * n, kappa.derivative(s) * n + k * (-k * e + t * b)};
      },
      domain, std::move(name));
}

}  // namespace frontal
