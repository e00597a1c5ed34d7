#include "frontal/match.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "frontal/kernels.hpp"

namespace frontal {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

int default_count(int in_dim, int requested, bool reference) {
  if (requested > 0) return requested;
  if (in_dim == 1) return reference ? 4097 : 1025;
  return reference ? 257 : 65;
}

// Lattice over a box, first axis slowest.
std::vector<std::vector<double>> lattice(const std::vector<Interval>& box, int n) {
  std::vector<std::vector<double>> out;
  if (box.size() == 1) {
    for (double t : linspace(box[0].lo, box[0].hi, n)) out.push_back({t});
  } else {
    const auto us = linspace(box[0].lo, box[0].hi, n), vs = linspace(box[1].lo, box[1].hi, n);
    out.reserve(us.size() * vs.size());
    for (double u : us)
      for (double v : vs) out.push_back({u, v});
  }
  return out;
}

double spacing(const std::vector<Interval>& box, int n) {
  double h = 0.0;
  for (const auto& iv : box) h = std::max(h, iv.length() / std::max(1, n - 1));
  return h;
}

double dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

struct Polished {
  std::vector<double> x;
  double distance = std::numeric_limits<double>::infinity();
};

// min_x |target - g(x)| where g is the image (normals = false) or the lift.
Polished polish(const Lift& f2, const std::vector<double>& target, const std::vector<double>& seed, bool normals,
                int e) {
  const int m = f2.out_dim * (normals ? 2 : 1);
  std::vector<double> point(f2.out_dim), normal(f2.out_dim);
  ResidualFn r = [&](std::span<const double> x, std::span<double> out) {
    f2.fn(x, point, normal);
    for (int i = 0; i < f2.out_dim; ++i) {
      out[i] = target[i] - point[i];
      if (normals) out[f2.out_dim + i] = target[f2.out_dim + i] - e * normal[i];
    }
  };
  const LeastSquares ls = least_squares(r, m, seed, f2.domain, 200);
  return {ls.x, std::sqrt(2.0 * ls.cost)};
}

struct Reference {
  std::vector<std::vector<double>> x;
  kernels::PointCloud cloud;
  double h = 0.0;
  bool normals = false;
  int e = 1;
};

Reference build_reference(const Lift& f2, int n, bool normals, int e = 1) {
  Reference ref{lattice(f2.domain, n), kernels::PointCloud(f2.out_dim * (normals ? 2 : 1)), spacing(f2.domain, n),
                normals, e};
  ref.cloud.reserve(ref.x.size());
  std::vector<double> point(f2.out_dim), normal(f2.out_dim), row;
  for (const auto& x : ref.x) {
    f2.fn(x, point, normal);
    row = point;
    if (normals)
      for (double c : normal) row.push_back(e * c);
    ref.cloud.push_back(row);
  }
  return ref;
}

Polished locate(const Lift& f2, const Reference& ref, const std::vector<double>& target, double tol) {
  const kernels::Nearest nn = kernels::nearest(ref.cloud, target);
  Polished best = polish(f2, target, ref.x[nn.index], ref.normals, ref.e);
  if (best.distance <= tol) return best;
  // the nearest sample may sit on another sheet of the image; try a few more
  std::vector<std::size_t> near = kernels::within_radius(ref.cloud, target, std::max(16.0 * nn.dist2, 1e-20));
  std::vector<std::pair<double, std::size_t>> ranked;
  for (std::size_t i : near) {
    double d2 = 0.0;
    for (int k = 0; k < ref.cloud.dim(); ++k) d2 += std::pow(ref.cloud.at(i, k) - target[k], 2);
    ranked.push_back({d2, i});
  }
  std::sort(ranked.begin(), ranked.end());
  std::vector<std::vector<double>> tried{ref.x[nn.index]};
  for (const auto& [d2, i] : ranked) {
    if (tried.size() >= 8) break;
    bool fresh = true;
    for (const auto& t : tried)
      if (dist(t, ref.x[i]) < 3.0 * ref.h) fresh = false;
    if (!fresh) continue;
    tried.push_back(ref.x[i]);
    Polished p = polish(f2, target, ref.x[i], ref.normals, ref.e);
    if (p.distance < best.distance) best = p;
    if (best.distance <= tol) break;
  }
  return best;
}

std::vector<double> lift_row(const Lift& f, std::span<const double> x, bool normals, int e = 1) {
  std::vector<double> point(f.out_dim), normal(f.out_dim);
  f.fn(x, point, normal);
  if (normals)
    for (double c : normal) point.push_back(e * c);
  return point;
}

}  // namespace

LiftSample Lift::operator()(std::span<const double> x) const {
  LiftSample s{std::vector<double>(x.begin(), x.end()), std::vector<double>(out_dim), std::vector<double>(out_dim)};
  fn(x, s.fx, s.nu);
  return s;
}

LiftSample Lift::operator()(std::initializer_list<double> x) const {
  return (*this)(std::span<const double>(x.begin(), x.size()));
}

Lift Lift::restricted(std::vector<Interval> box) const {
  Lift l = *this;
  l.domain = std::move(box);
  return l;
}

Lift legendrian_lift(const NormalField& field) {
  const SurfaceGerm& g = field.germ();
  Lift l;
  l.name = g.name();
  l.domain = {g.domain().u, g.domain().v};
  l.fn = [field](std::span<const double> x, std::span<double> point, std::span<double> normal) {
    const Vec2 q(x[0], x[1]);
    const Vec3 p = field.germ()(q), n = field(q);
    for (int i = 0; i < 3; ++i) {
      point[i] = p[i];
      normal[i] = n[i];
    }
  };
  return l;
}

Lift legendrian_lift(const SurfaceGerm& germ) { return legendrian_lift(NormalField(germ)); }

Lift curve_lift(const Map& sigma, Interval domain, std::string name) {
  if (sigma.in_dim() != 1 || sigma.out_dim() != 2) throw PreconditionError("curve lift needs a map R -> R^2");
  Lift l;
  l.name = std::move(name);
  l.in_dim = 1;
  l.out_dim = 2;
  l.domain = {domain};
  l.fn = [sigma](std::span<const double> x, std::span<double> point, std::span<double> normal) {
    const Jet j = sigma.jet(x, 3);
    point[0] = j.value(0);
    point[1] = j.value(1);
    Vec2 d = Vec2::Zero();
    for (int k = 1; k <= 3 && d.norm() <= 1e-14; ++k) d = Vec2(j.partial(0, k), j.partial(1, k));
    if (d.norm() <= 1e-14) {
      // flat to third order: average the tangent lines on both sides
      for (double h : {1e-4, -1e-4}) {
        const double t = x[0] + h;
        const Jet a = sigma.jet(std::span<const double>(&t, 1), 1);
        const Vec2 s(a.partial(0, 1), a.partial(1, 1));
        if (s.norm() > 0.0) d += canonical_sign(Vec2(s / s.norm()));
      }
    }
    if (!(d.norm() > 0.0)) throw DomainError("curve lift: tangent line undefined at t = " + num(x[0]));
    d = canonical_sign(Vec2(d / d.norm()));
    normal[0] = -d.y();
    normal[1] = d.x();
  };
  return l;
}

Lift transformed(const Lift& lift, const Isometry& T) {
  if (lift.out_dim != 3) throw PreconditionError("isometries act on 3-space lifts");
  Lift l = lift;
  l.name = "T(" + lift.name + ")";
  l.fn = [lift, T](std::span<const double> x, std::span<double> point, std::span<double> normal) {
    double p[3], n[3];
    lift.fn(x, p, n);
    const Vec3 tp = T(Vec3(p[0], p[1], p[2])), tn = T.Q * Vec3(n[0], n[1], n[2]);
    for (int i = 0; i < 3; ++i) {
      point[i] = tp[i];
      normal[i] = tn[i];
    }
  };
  return l;
}

std::vector<Interval> shrink_box(const std::vector<Interval>& box, double factor) {
  std::vector<Interval> out;
  for (const auto& iv : box) out.push_back({iv.mid() - 0.5 * factor * iv.length(), iv.mid() + 0.5 * factor * iv.length()});
  return out;
}

InclusionResult image_subset(const Lift& f1, const Lift& f2, double tol, SampleOptions opt) {
  if (f1.out_dim != f2.out_dim || f1.in_dim != f2.in_dim) throw PreconditionError("image_subset: dimension mismatch");
  const Reference ref = build_reference(f2, default_count(f2.in_dim, opt.reference, true), false);
  InclusionResult r;
  for (const auto& q : lattice(f1.domain, default_count(f1.in_dim, opt.query, false))) {
    const Polished p = locate(f2, ref, lift_row(f1, q, false), tol);
    ++r.samples;
    if (p.distance > r.max_distance || r.worst_x.empty()) {
      r.max_distance = std::max(r.max_distance, p.distance);
      if (p.distance >= r.max_distance) r.worst_x = q;
    }
    if (opt.stop_early && r.max_distance >= tol) break;
  }
  r.subset = r.max_distance < tol;
  return r;
}

struct ConnectingMap::Index {
  Reference ref;
  double tol = 1e-6;
};

std::vector<double> ConnectingMap::solve(std::span<const double> x) const {
  return locate(*f2_, index_->ref, lift_row(*f1_, x, true), index_->tol).x;
}

ConnectingMap connecting_map(const Lift& f1, const Lift& f2, double tol, SampleOptions opt) {
  if (f1.out_dim != f2.out_dim || f1.in_dim != f2.in_dim) throw PreconditionError("connecting_map: dimension mismatch");
  const int nref = default_count(f2.in_dim, opt.reference, true);
  const auto queries = lattice(f1.domain, default_count(f1.in_dim, opt.query, false));

  // global normal sign: the one whose lifts sit closer overall
  int e = 1;
  {
    double best = std::numeric_limits<double>::infinity();
    for (int s : {1, -1}) {
      const Reference ref = build_reference(f2, std::min(nref, f2.in_dim == 1 ? 1025 : 65), true, s);
      double total = 0.0;
      for (const auto& q : queries) total += std::sqrt(kernels::nearest(ref.cloud, lift_row(f1, q, true)).dist2);
      if (total < best) {
        best = total;
        e = s;
      }
    }
  }

  auto index = std::make_shared<ConnectingMap::Index>(ConnectingMap::Index{build_reference(f2, nref, true, e), tol});
  const Reference& ref = index->ref;

  // injectivity of the sampled lift: no two samples with equal lifts and distant preimages
  const std::size_t stride = std::max<std::size_t>(1, ref.x.size() / 1500);
  std::vector<double> row(ref.cloud.dim());
  for (std::size_t i = 0; i < ref.x.size(); i += stride) {
    for (int k = 0; k < ref.cloud.dim(); ++k) row[k] = ref.cloud.at(i, k);
    for (std::size_t j : kernels::within_radius(ref.cloud, row, 1e-18))
      if (dist(ref.x[i], ref.x[j]) > 4.0 * ref.h)
        throw MatchError("lift of " + f2.name + " is not injective on its samples");
  }

  ConnectingMap cm;
  cm.e = e;
  cm.f1_ = std::make_shared<const Lift>(f1);
  cm.f2_ = std::make_shared<const Lift>(f2);
  cm.index_ = index;
  std::vector<double> p2(f2.out_dim), n2(f2.out_dim);
  for (const auto& q : queries) {
    const std::vector<double> target = lift_row(f1, q, true);
    const Polished p = locate(f2, ref, target, tol);
    f2.fn(p.x, p2, n2);
    double di = 0.0, dn = 0.0;
    for (int i = 0; i < f2.out_dim; ++i) {
      di += std::pow(target[i] - p2[i], 2);
      dn += std::pow(target[f2.out_dim + i] - e * n2[i], 2);
    }
    cm.image_residual = std::max(cm.image_residual, std::sqrt(di));
    cm.normal_residual = std::max(cm.normal_residual, std::sqrt(dn));
    cm.x.push_back(q);
    cm.psi.push_back(p.x);
    cm.residual.push_back(std::sqrt(di) + std::sqrt(dn));
  }
  // neighbouring samples along the lattice
  const int nq = default_count(f1.in_dim, opt.query, false);
  auto quotient = [&cm](std::size_t a, std::size_t b) {
    const double dx = dist(cm.x[a], cm.x[b]);
    return dx > 0.0 ? dist(cm.psi[a], cm.psi[b]) / dx : 0.0;
  };
  for (std::size_t i = 0; i + 1 < cm.x.size(); ++i) {
    if (f1.in_dim == 1 || (i + 1) % nq != 0) cm.max_difference_quotient = std::max(cm.max_difference_quotient, quotient(i, i + 1));
    if (f1.in_dim == 2 && i + nq < cm.x.size())
      cm.max_difference_quotient = std::max(cm.max_difference_quotient, quotient(i, i + nq));
  }
  if (cm.image_residual > tol)
    throw MatchError("image of " + f1.name + " is not inside the image of " + f2.name + " (distance " +
                     num(cm.image_residual) + ")");
  if (cm.normal_residual > tol)
    throw MatchError("normals of " + f1.name + " and " + f2.name + " do not match (residual " +
                     num(cm.normal_residual) + ")");
  return cm;
}

EdgeNormalForm station_reversed(const EdgeNormalForm& nf) {
  EdgeNormalForm r = nf;
  r.crease = reversed(nf.crease);
  const Profile th = nf.theta;
  r.theta = Profile{[th](double u) { return -th(-u); }, [th](double u) { return th.derivative(-u); },
                    [th](double u) { return -th.second_derivative(-u); }};
  auto flip = [](const Map& m, double sign) {
    if (!m) return Map{};
    return Map(2, 1, [m, sign](std::span<const double> x, std::span<double> out) {
      const double y[2] = {-x[0], x[1]};
      m.eval(y, out);
      out[0] *= sign;
    });
  };
  r.a = flip(nf.a, 1.0);
  r.b = flip(nf.b, -1.0);
  r.stations.clear();
  for (auto it = nf.stations.rbegin(); it != nf.stations.rend(); ++it) r.stations.push_back(-*it);
  r.w_grid.clear();
  r.a_grid.clear();
  r.b_grid.clear();
  return r;
}

EdgeNormalForm t_flipped(const EdgeNormalForm& nf) {
  EdgeNormalForm r = nf;
  auto flip = [](const Map& m, double sign) {
    if (!m) return Map{};
    return Map(2, 1, [m, sign](std::span<const double> x, std::span<double> out) {
      const double y[2] = {x[0], -x[1]};
      m.eval(y, out);
      out[0] *= sign;
    });
  };
  r.a = flip(nf.a, 1.0);
  r.b = flip(nf.b, -1.0);
  r.w_grid.clear();
  r.a_grid.clear();
  r.b_grid.clear();
  return r;
}

NormalFormMatch match_normal_forms(const EdgeNormalForm& nf1, const EdgeNormalForm& nf2, double tol) {
  const SurfaceGerm g1 = from_normal_form(nf1), g2 = from_normal_form(nf2);
  const Interval d1 = nf1.crease.domain(), d2 = nf2.crease.domain();

  // crease correspondence
  Lift c2;
  c2.in_dim = 1;
  c2.domain = {d2};
  c2.fn = [&nf2](std::span<const double> x, std::span<double> p, std::span<double> n) {
    const Vec3 c = nf2.crease(x[0]);
    for (int i = 0; i < 3; ++i) {
      p[i] = c[i];
      n[i] = 0.0;
    }
  };
  const Reference ref = build_reference(c2, 2049, false);
  const auto probe = linspace(d1.lo, d1.hi, 17);
  std::vector<double> image;
  NormalFormMatch m;
  for (double s : probe) {
    const Vec3 c = nf1.crease(s);
    const Polished p = locate(c2, ref, {c[0], c[1], c[2]}, tol);
    m.crease_residual = std::max(m.crease_residual, p.distance);
    image.push_back(p.x[0]);
  }
  if (m.crease_residual > tol)
    throw MatchError("creases differ (distance " + num(m.crease_residual) + ")");
  const double sigma = image.back() > image.front() ? 1.0 : -1.0;
  m.u_flip = sigma < 0.0;
  double shift = 0.0;
  for (std::size_t i = 0; i < probe.size(); ++i) shift += image[i] - sigma * probe[i];
  m.shift = shift / static_cast<double>(probe.size());

  const double w = std::min(nf1.halfwidth, nf2.halfwidth);
  auto residual = [&](int e) {
    double r = 0.0;
    for (double s : linspace(d1.lo, d1.hi, 17)) {
      const double u2 = std::clamp(sigma * s + m.shift, d2.lo, d2.hi);
      for (double t : linspace(-w, w, 9)) r = std::max(r, (g1(s, t) - g2(u2, e * t)).norm());
    }
    return r;
  };
  const double rp = residual(1), rm = residual(-1);
  m.e = rp <= rm ? 1 : -1;
  m.residual = std::min(rp, rm);
  if (m.residual > tol) throw MatchError("neither sign of t matches (residual " + num(m.residual) + ")");
  return m;
}

const char* properness_name(Properness p) {
  switch (p) {
    case Properness::finite: return "finite";
    case Properness::suspected_infinite: return "suspected_infinite";
    case Properness::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

// Value with a fallback to the one-sided limits where evaluation fails (0 * sin(1/0)).
std::vector<double> value_or_limit(const Map& f, std::vector<double> x) {
  std::vector<double> out(f.out_dim());
  auto finite = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double c) { return std::isfinite(c); });
  };
  try {
    f.eval(x, out);
    if (finite(out)) return out;
  } catch (const Error&) {
  }
  std::vector<double> acc(f.out_dim(), 0.0);
  int used = 0;
  for (double h : {1e-12, -1e-12}) {
    std::vector<double> y = x, v(f.out_dim());
    for (double& c : y) c += h;
    try {
      f.eval(y, v);
    } catch (const Error&) {
      continue;
    }
    if (!finite(v)) continue;
    for (std::size_t i = 0; i < v.size(); ++i) acc[i] += v[i];
    ++used;
  }
  if (used == 0) throw DomainError("map cannot be evaluated near the probe point");
  for (double& c : acc) c /= used;
  return acc;
}

}  // namespace

PropernessReport properness_probe(const Map& f, std::span<const double> p, double r0, int levels, int grid) {
  const int dim = f.in_dim();
  if (dim != 1 && dim != 2) throw PreconditionError("properness probe handles maps of one or two variables");
  if (static_cast<int>(p.size()) != dim) throw PreconditionError("probe point has wrong arity");
  if (!(r0 > 0.0) || levels < 1 || grid < 4) throw PreconditionError("probe needs r0 > 0, levels >= 1, grid >= 4");
  PropernessReport rep;
  rep.center.assign(p.begin(), p.end());
  const std::vector<double> fp = value_or_limit(f, rep.center);
  const int n = dim == 1 ? grid : std::max(4, static_cast<int>(std::lround(std::sqrt(grid))));
  rep.r0_grid = n;
  for (int k = 0; k < levels; ++k) {
    const double r = r0 * std::ldexp(1.0, -k), eps = 1e-3 * r;
    rep.radii.push_back(r);
    rep.thresholds.push_back(eps);
    // samples on the (n+1)^dim lattice: distance to f(p) and, for scalar maps, the signed gap
    const int m = n + 1;
    const std::size_t total = dim == 1 ? m : static_cast<std::size_t>(m) * m;
    std::vector<double> gap(total), signed_gap(total);
    std::size_t exact = 0;
    for (std::size_t i = 0; i < total; ++i) {
      std::vector<double> x(dim);
      if (dim == 1) {
        x[0] = p[0] - r + 2.0 * r * static_cast<double>(i) / n;
      } else {
        x[0] = p[0] - r + 2.0 * r * static_cast<double>(i / m) / n;
        x[1] = p[1] - r + 2.0 * r * static_cast<double>(i % m) / n;
      }
      const std::vector<double> v = value_or_limit(f, x);
      double d2 = 0.0;
      for (std::size_t c = 0; c < v.size(); ++c) d2 += (v[c] - fp[c]) * (v[c] - fp[c]);
      gap[i] = std::sqrt(d2);
      signed_gap[i] = v[0] - fp[0];
      if (gap[i] == 0.0) ++exact;
    }
    rep.exact_fraction.push_back(static_cast<double>(exact) / static_cast<double>(total));
    const bool scalar = f.out_dim() == 1;
    int count = 0;
    if (dim == 1) {
      bool prev = false;
      for (int c = 0; c < n; ++c) {
        const bool in = gap[c] <= eps || gap[c + 1] <= eps || (scalar && signed_gap[c] * signed_gap[c + 1] < 0.0);
        if (in && !prev) ++count;
        prev = in;
      }
    } else {
      std::vector<int> label(static_cast<std::size_t>(n) * n, -1);
      std::vector<char> in(label.size());
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const std::size_t corners[4] = {static_cast<std::size_t>(a) * m + b, static_cast<std::size_t>(a) * m + b + 1,
                                          static_cast<std::size_t>(a + 1) * m + b,
                                          static_cast<std::size_t>(a + 1) * m + b + 1};
          double lo = std::numeric_limits<double>::infinity();
          for (std::size_t c : corners) lo = std::min(lo, gap[c]);
          in[static_cast<std::size_t>(a) * n + b] = lo <= eps;
        }
      std::vector<std::size_t> stack;
      for (std::size_t s = 0; s < in.size(); ++s) {
        if (!in[s] || label[s] >= 0) continue;
        label[s] = count;
        stack.push_back(s);
        while (!stack.empty()) {
          const std::size_t c = stack.back();
          stack.pop_back();
          const int a = static_cast<int>(c / n), b = static_cast<int>(c % n);
          const int da[4] = {1, -1, 0, 0}, db[4] = {0, 0, 1, -1};
          for (int t = 0; t < 4; ++t) {
            const int x = a + da[t], y = b + db[t];
            if (x < 0 || y < 0 || x >= n || y >= n) continue;
            const std::size_t nb = static_cast<std::size_t>(x) * n + y;
            if (in[nb] && label[nb] < 0) {
              label[nb] = count;
              stack.push_back(nb);
            }
          }
        }
        ++count;
      }
    }
    rep.counts.push_back(count);
  }
  const auto& c = rep.counts;
  const std::size_t L = c.size();
  const bool flat_preimage = *std::max_element(rep.exact_fraction.begin(), rep.exact_fraction.end()) >= 0.5;
  bool increasing = L >= 3;
  for (std::size_t i = 1; i < L; ++i) increasing = increasing && c[i] > c[i - 1];
  const bool stable = L >= 3 && c[L - 1] == c[L - 2] && c[L - 2] == c[L - 3];
  if (flat_preimage || increasing)
    rep.verdict = Properness::suspected_infinite;
  else if (stable)
    rep.verdict = Properness::finite;
  else
    rep.verdict = Properness::inconclusive;
  return rep;
}

Map spliced_example() {
  auto g = [](double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; };
  return Map(1, 1, [g](std::span<const double> x, std::span<double> out) {
    const double s = std::abs(x[0]);
    const double phi = s <= 1.0 ? 0.0 : s >= 2.0 ? 1.0 : g(s - 1.0) / (g(s - 1.0) + g(2.0 - s));
    out[0] = x[0] * phi;
  });
}

}  // namespace frontal
