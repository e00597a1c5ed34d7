#include "frontal/isomer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <sstream>

namespace frontal {

namespace {

std::string num(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

bool symmetric(Interval d) { return std::abs(d.lo + d.hi) <= 1e-9 * std::max(1.0, d.length()); }

}  // namespace

Admissibility admissible(const EdgeNormalForm& nf) {
  Admissibility a;
  a.min_kappa = std::numeric_limits<double>::infinity();
  a.min_abs_kappa_s = std::numeric_limits<double>::infinity();
  for (double u : nf.stations) {
    const EdgeInvariants x = edge_invariants(nf, u);
    a.min_kappa = std::min(a.min_kappa, x.kappa);
    a.max_abs_kappa_s = std::max(a.max_abs_kappa_s, std::abs(x.kappa_s));
    a.min_abs_kappa_s = std::min(a.min_abs_kappa_s, std::abs(x.kappa_s));
  }
  // kappa_s can cross zero between stations without landing on one.
  for (std::size_t i = 1; i < nf.stations.size(); ++i)
    if (std::cos(nf.theta(nf.stations[i - 1])) * std::cos(nf.theta(nf.stations[i])) <= 0.0) a.min_abs_kappa_s = 0.0;
  a.admissible = a.max_abs_kappa_s < a.min_kappa;
  a.strict = a.admissible && a.min_abs_kappa_s > 0.0;
  return a;
}

EdgeNormalForm dual(const EdgeNormalForm& nf) {
  for (std::size_t i = 0; i < nf.stations.size(); ++i) {
    const double s = std::sin(nf.theta(nf.stations[i]));
    const bool crosses = i > 0 && s * std::sin(nf.theta(nf.stations[i - 1])) <= 0.0;
    if (std::abs(s) < 1e-12 || crosses)
      throw PreconditionError("limiting normal curvature vanishes near u = " + num(nf.stations[i]) +
                              "; the dual needs kappa_nu != 0");
  }
  EdgeNormalForm out = nf;
  const Profile t = nf.theta;
  out.theta.f = [t](double u) { return -t(u); };
  out.theta.df = [t](double u) { return -t.derivative(u); };
  out.theta.ddf = [t](double u) { return -t.second_derivative(u); };
  return out;
}

EdgeNormalForm inverse(const EdgeNormalForm& nf, std::vector<double>* flagged) {
  if (!symmetric(nf.crease.domain()))
    throw PreconditionError("the inverse needs a crease parameter interval symmetric about 0");
  const Admissibility adm = admissible(nf);
  if (!adm.admissible)
    throw PreconditionError("normal form is not admissible: max|kappa_s| = " + num(adm.max_abs_kappa_s) +
                            " >= min kappa = " + num(adm.min_kappa));
  const auto base = std::make_shared<EdgeNormalForm>(nf);
  auto kappa = [base](double u) { return frenet(base->crease, u).kappa; };
  auto kappa_prime = [base](double u) {
    const auto d = base->crease.derivatives(u, 3);
    return d[3].dot(frenet(base->crease, u).n);
  };
  auto sign_at = [base](double u) {
    const double t = base->theta(-u);
    return t < 0.0 ? -1.0 : 1.0;
  };
  auto ratio = [base, kappa](double u) { return kappa(u) / kappa(-u) * std::cos(base->theta(u)); };

  EdgeNormalForm out;
  out.crease = reversed(nf.crease);
  out.halfwidth = nf.halfwidth;
  out.stations = nf.stations;
  out.theta.f = [sign_at, ratio, base](double u) {
    const double r = ratio(u);
    if (!(std::abs(r) < 1.0)) throw DomainError("inverse cuspidal angle undefined at u = " + num(u));
    return sign_at(u) * std::acos(r);
  };
  out.theta.df = [sign_at, ratio, kappa, kappa_prime, base](double u) {
    const double r = ratio(u);
    const double k = kappa(u), km = kappa(-u), kp = kappa_prime(u), kmp = kappa_prime(-u);
    const double th = base->theta(u);
    const double dr = (kp * km + k * kmp) / (km * km) * std::cos(th) - k / km * std::sin(th) * base->theta.derivative(u);
    return -sign_at(u) * dr / std::sqrt(1.0 - r * r);
  };
  if (flagged) {
    flagged->clear();
    for (double u : nf.stations)
      if (std::abs(nf.theta(-u)) < 1e-12) flagged->push_back(u);
  }
  return out;
}

EdgeNormalForm inverse_dual(const EdgeNormalForm& nf) { return inverse(dual(nf)); }

IsomerSet isomers(const EdgeNormalForm& nf) {
  IsomerSet set;
  set.base = nf;
  set.dual = dual(nf);
  set.inverse = inverse(nf, &set.flagged);
  set.inverse_dual = inverse_dual(nf);
  return set;
}

int right_equivalence_classes(const IsomerSet& set, double tol) {
  const std::array<const EdgeNormalForm*, 4> members{&set.base, &set.dual, &set.inverse, &set.inverse_dual};
  std::array<std::vector<std::vector<double>>, 4> prof;
  for (int m = 0; m < 4; ++m) {
    const EdgeNormalForm& nf = *members[m];
    prof[m].assign(3, {});
    for (double u : set.base.stations) {
      const FrenetSample f = frenet(nf.crease, u);
      prof[m][0].push_back(f.kappa);
      prof[m][1].push_back(f.tau);
      prof[m][2].push_back(nf.theta(u));
    }
  }
  std::array<int, 4> parent{0, 1, 2, 3};
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      double best = std::numeric_limits<double>::infinity();
      for (const ProfileShift& s : match_profiles(prof[i], prof[j], {1, -1})) best = std::min(best, s.mismatch);
      if (best <= tol) parent[find(j)] = find(i);
    }
  int classes = 0;
  for (int i = 0; i < 4; ++i) classes += find(i) == i;
  return classes;
}

const char* curve_symmetry_name(CurveSymmetryKind k) {
  switch (k) {
    case CurveSymmetryKind::none: return "none";
    case CurveSymmetryKind::positive: return "positive";
    case CurveSymmetryKind::negative: return "negative";
  }
  return "none";
}

const char* metric_symmetry_name(MetricSymmetry m) {
  switch (m) {
    case MetricSymmetry::none: return "none";
    case MetricSymmetry::symmetry: return "symmetry";
    case MetricSymmetry::effective_symmetry: return "effective_symmetry";
  }
  return "none";
}

SymmetryPredicates detect_predicates(const EdgeNormalForm& nf, double tol) {
  SymmetryPredicates p;
  p.planar = curve_plane(nf.crease).has_value();
  const auto cs = curve_symmetry(nf.crease, tol);
  if (cs) p.curve = cs->det > 0 ? CurveSymmetryKind::positive : CurveSymmetryKind::negative;

  const std::size_t n = nf.stations.size();
  std::vector<std::vector<double>> ks(1);
  for (double u : nf.stations) ks[0].push_back(edge_invariants(nf, u).kappa_s);
  const ProfileShift flip = match_profiles(ks, ks, {-1})[0];
  if (flip.mismatch <= tol) {
    p.metric = MetricSymmetry::symmetry;
    const double h = n > 1 ? (nf.stations.back() - nf.stations.front()) / static_cast<double>(n - 1) : 0.0;
    const double center = nf.stations.front() + 0.5 * flip.shift * h;
    if (cs && cs->det > 0 && std::abs(cs->center - center) <= h) p.metric = MetricSymmetry::effective_symmetry;
  }
  return p;
}

CongruenceCount congruence_count(const SymmetryPredicates& p) {
  const bool curve = p.curve != CurveSymmetryKind::none;
  const bool metric = p.metric != MetricSymmetry::none;
  if (!curve && !metric && !p.planar) return {4, true};
  if ((p.planar && curve) || (p.planar && metric) || (p.curve == CurveSymmetryKind::positive && metric))
    return {1, true};
  return {2, false};
}

}  // namespace frontal
