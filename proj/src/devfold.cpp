#include "frontal/devfold.hpp"

#include <cmath>
#include <numbers>

#include "frontal/isomer.hpp"

namespace frontal {

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

void require_alpha(double a, double u) {
  if (!(std::abs(std::sin(a)) > 1e-12) || !(std::abs(a) < kPi / 2))
    throw PreconditionError("first angular function out of (0, pi/2) in absolute value at u = " + num(u) +
                            ": alpha = " + num(a));
}

}  // namespace

double second_angle(double alpha, double alpha_prime, double kappa, double tau) {
  if (!(kappa > 0.0)) throw PreconditionError("second_angle needs kappa > 0, got " + num(kappa));
  const double s = std::sin(alpha);
  if (std::abs(s) < 1e-14) throw PreconditionError("second_angle needs sin(alpha) != 0");
  // cot(beta) = x  <=>  beta = atan2(1, x) in (0, pi)
  return std::atan2(1.0, (alpha_prime + tau) / (kappa * s));
}

Vec3 DevStrip::ruling(double u) const {
  const FrenetSample fr = frenet(crease, u);
  const double a = alpha(u), b = beta(u);
  return std::cos(b) * fr.e + std::sin(b) * (std::cos(a) * fr.n + std::sin(a) * fr.b);
}

Vec3 DevStrip::operator()(double u, double v) const { return crease(u) + v * ruling(u); }

DevStrip make_strip(const SpaceCurve& crease, Profile alpha, double halfwidth, int stations) {
  DevStrip s;
  s.crease = crease;
  s.alpha = alpha;
  s.halfwidth = halfwidth;
  s.stations = linspace(crease.domain().lo, crease.domain().hi, stations);
  auto beta = [crease, alpha](double u) {
    const FrenetSample fr = frenet(crease, u);
    return second_angle(alpha(u), alpha.derivative(u), fr.kappa, fr.tau);
  };
  const Interval dom = crease.domain();
  auto dbeta = [beta, dom](double u) {
    const double h = 1e-5;
    const double lo = std::max(dom.lo, u - h), hi = std::min(dom.hi, u + h);
    return (beta(hi) - beta(lo)) / (hi - lo);
  };
  s.beta = Profile{beta, dbeta, {}};
  for (double u : s.stations) require_alpha(alpha(u), u);
  return s;
}

DevStrip ist(const EdgeNormalForm& nf) {
  const Admissibility adm = admissible(nf);
  if (!adm.strict) throw PreconditionError("ist needs a strictly admissible edge (kappa_s != 0, |kappa_s| < kappa)");
  for (double u : nf.stations) require_alpha(nf.theta(u), u);
  DevStrip s = make_strip(nf.crease, nf.theta, nf.halfwidth, static_cast<int>(nf.stations.size()));
  s.stations = nf.stations;
  s.source = std::make_shared<const EdgeNormalForm>(nf);
  return s;
}

DevStrip dual_strip(const DevStrip& strip) {
  if (strip.source) return ist(dual(*strip.source));
  const Profile a = strip.alpha;
  Profile neg{[a](double u) { return -a(u); }, [a](double u) { return -a.derivative(u); }, {}};
  DevStrip d = make_strip(strip.crease, neg, strip.halfwidth, static_cast<int>(strip.stations.size()));
  d.stations = strip.stations;
  return d;
}

StripIsomers strip_isomers(const DevStrip& strip) {
  if (!strip.source) throw PreconditionError("strip isomers need the edge the strip was built from");
  const IsomerSet set = isomers(*strip.source);
  return {ist(set.dual), ist(set.inverse), ist(set.inverse_dual)};
}

double gaussian_curvature(const SurfaceFn& f, double u, double v, double h) {
  // first and second partials, central differences refined once
  auto partials = [&](double k) {
    const Vec3 c = f(u, v);
    const Vec3 pu = f(u + k, v), mu = f(u - k, v), pv = f(u, v + k), mv = f(u, v - k);
    std::array<Vec3, 5> d;
    d[0] = (pu - mu) / (2 * k);
    d[1] = (pv - mv) / (2 * k);
    d[2] = (pu - 2 * c + mu) / (k * k);
    d[3] = (f(u + k, v + k) - f(u + k, v - k) - f(u - k, v + k) + f(u - k, v - k)) / (4 * k * k);
    d[4] = (pv - 2 * c + mv) / (k * k);
    return d;
  };
  const auto a = partials(h), b = partials(h / 2);
  std::array<Vec3, 5> d;
  for (int i = 0; i < 5; ++i) d[i] = (4 * b[i] - a[i]) / 3;
  const double E = d[0].dot(d[0]), F = d[0].dot(d[1]), G = d[1].dot(d[1]);
  const double g = E * G - F * F;
  if (!(g > 1e-14 * std::max(1.0, E * G)))
    throw PreconditionError("degenerate first fundamental form at (" + num(u) + ", " + num(v) + ")");
  const Vec3 n = d[0].cross(d[1]) / std::sqrt(g);
  const double L = d[2].dot(n), M = d[3].dot(n), N = d[4].dot(n);
  return (L * N - M * M) / g;
}

double gaussian_curvature(const DevStrip& strip, double u, double v) {
  return gaussian_curvature([&strip](double a, double b) { return strip(a, b); }, u, v);
}

StripCheck check_strip(const DevStrip& strip, int rows, int cols) {
  StripCheck c;
  c.k_rows = rows;
  c.k_cols = cols;
  double max_kappa = 0.0;
  for (double u : strip.stations) {
    const FrenetSample fr = frenet(strip.crease, u);
    const double a = strip.alpha(u), b = strip.beta(u);
    max_kappa = std::max(max_kappa, fr.kappa);
    if (!(std::abs(a) > 0.0 && std::abs(a) < kPi / 2)) c.alpha_ok = false;
    if (!(b > 0.0 && b < kPi)) c.beta_ok = false;
    const double rhs = (strip.alpha.derivative(u) + fr.tau) / (fr.kappa * std::sin(a));
    c.beta_residual = std::max(c.beta_residual, std::abs(std::cos(b) / std::sin(b) - rhs));
    if (!(strip.ruling(u).dot(fr.n) > 0.0)) c.ruling_ok = false;
  }
  if (max_kappa > 0.0 && strip.halfwidth > 0.2 / max_kappa) {
    c.width_ok = false;
    c.warnings.push_back("halfwidth " + num(strip.halfwidth) + " exceeds 0.2 x min radius of curvature " +
                         num(0.2 / max_kappa) + "; the curvature bound may degrade");
  }
  // keep the difference stencil inside the domain
  const Interval dom = strip.crease.domain();
  const double pad = 2e-3;
  const auto us = linspace(dom.lo + pad, dom.hi - pad, rows);
  const auto vs = linspace(-strip.halfwidth, strip.halfwidth, cols);
  for (double u : us)
    for (double v : vs) {
      try {
        c.max_abs_K = std::max(c.max_abs_K, std::abs(gaussian_curvature(strip, u, v)));
      } catch (const PreconditionError& e) {
        c.warnings.push_back(e.what());
      }
    }
  return c;
}

const char* split_name(SplitRule s) { return s == SplitRule::u_split ? "u" : "v"; }

Vec3 CurvedFolding::operator()(double u, double v) const {
  const bool first = split == SplitRule::u_split ? u > 0.0 : v >= 0.0;
  return first ? strip(u, v) : dual(u, v);
}

CurvedFolding curved_folding(const DevStrip& strip, SplitRule split) {
  return {strip, dual_strip(strip), split};
}

MeshGrid mesh(const SurfaceFn& f, Interval u, Interval v, int rows, int cols, std::string name) {
  if (rows < 2 || cols < 2) throw PreconditionError("mesh needs at least 2 x 2 vertices");
  MeshGrid m;
  m.name = std::move(name);
  m.rows = rows;
  m.cols = cols;
  m.u = linspace(u.lo, u.hi, rows);
  m.v = linspace(v.lo, v.hi, cols);
  m.vertices.resize(static_cast<std::size_t>(rows) * cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.vertices[static_cast<std::size_t>(i) * cols + j] = f(m.u[i], m.v[j]);
  return m;
}

MeshGrid mesh(const DevStrip& strip, int rows, int cols, std::string name) {
  return mesh([&strip](double a, double b) { return strip(a, b); }, strip.crease.domain(),
              {-strip.halfwidth, strip.halfwidth}, rows, cols, std::move(name));
}

std::vector<MeshGrid> fold_meshes(const CurvedFolding& fold, int rows, int cols) {
  const Interval dom = fold.strip.crease.domain();
  const double w = fold.strip.halfwidth;
  auto F = [&fold](double a, double b) { return fold.strip(a, b); };
  auto D = [&fold](double a, double b) { return fold.dual(a, b); };
  std::vector<MeshGrid> out;
  if (fold.split == SplitRule::u_split) {
    if (dom.hi > 0.0) out.push_back(mesh(F, {std::max(dom.lo, 0.0), dom.hi}, {-w, w}, rows, cols, "strip"));
    if (dom.lo < 0.0) out.push_back(mesh(D, {dom.lo, std::min(dom.hi, 0.0)}, {-w, w}, rows, cols, "dual"));
  } else {
    out.push_back(mesh(F, dom, {0.0, w}, rows, cols, "strip"));
    out.push_back(mesh(D, dom, {-w, 0.0}, rows, cols, "dual"));
  }
  return out;
}

}  // namespace frontal
