#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "frontal/germ.hpp"
#include "frontal/normalform.hpp"

namespace frontal {

class MatchError : public Error {
 public:
  using Error::Error;
};

struct LiftSample {
  std::vector<double> x, fx, nu;
};

/// Legendrian lift x -> (f(x), nu(x)) of a frontal on a box domain.
struct Lift {
  using Fn = std::function<void(std::span<const double> x, std::span<double> point, std::span<double> normal)>;

  std::string name;
  int in_dim = 2;
  int out_dim = 3;
  std::vector<Interval> domain;
  Fn fn;

  LiftSample operator()(std::span<const double> x) const;
  LiftSample operator()(std::initializer_list<double> x) const;
  Lift restricted(std::vector<Interval> box) const;
};

/// Throws NotFrontal when no continuous normal exists at the base point.
Lift legendrian_lift(const SurfaceGerm& germ);
Lift legendrian_lift(const NormalField& field);
/// Plane curve t -> sigma(t) with the unit normal J(tangent line), the line
/// oriented by the canonical-sign rule so the normal passes through cusps.
Lift curve_lift(const Map& sigma, Interval domain, std::string name = "curve");
/// T o f with normal T nu (3-space only).
Lift transformed(const Lift& lift, const Isometry& T);

/// Box scaled by `factor` about its centre.
std::vector<Interval> shrink_box(const std::vector<Interval>& box, double factor);

/// Samples per axis; 0 picks 1025 / 4097 for curves and 65 / 257 for surfaces.
struct SampleOptions {
  int query = 0;
  int reference = 0;
  bool stop_early = false;  // image_subset: return at the first sample beyond tol
};

struct InclusionResult {
  bool subset = false;
  double max_distance = 0.0;
  std::vector<double> worst_x;
  std::size_t samples = 0;
};

/// Is f1(domain of f1) inside f2(domain of f2)? Each f1 sample is matched to
/// the nearest f2 sample and polished by least squares on |f1(q) - f2(x)|.
InclusionResult image_subset(const Lift& f1, const Lift& f2, double tol, SampleOptions opt = {});

/// psi = L2^-1 o L1 recovered pointwise.
class ConnectingMap {
 public:
  int e = 1;  // nu1 = e nu2 o psi
  std::vector<std::vector<double>> x, psi;
  std::vector<double> residual;  // per sample: |f1 - f2 o psi| + |nu1 - e nu2 o psi|
  double image_residual = 0.0;
  double normal_residual = 0.0;
  /// max |D psi| over neighbouring samples, a smoothness diagnostic
  double max_difference_quotient = 0.0;

  std::vector<double> solve(std::span<const double> x) const;
  const Lift& source() const { return *f1_; }
  const Lift& target() const { return *f2_; }

 private:
  friend ConnectingMap connecting_map(const Lift&, const Lift&, double, SampleOptions);
  std::shared_ptr<const Lift> f1_, f2_;
  struct Index;
  std::shared_ptr<const Index> index_;
};

/// Errors (MatchError): image inclusion fails, the sampled lift of f2 is not
/// injective, or the residual exceeds tol.
ConnectingMap connecting_map(const Lift& f1, const Lift& f2, double tol = 1e-6, SampleOptions opt = {});

struct NormalFormMatch {
  bool u_flip = false;
  int e = 1;
  double shift = 0.0;  // psi(s, t) = (+-s + shift, e t)
  double crease_residual = 0.0;
  double residual = 0.0;
};

NormalFormMatch match_normal_forms(const EdgeNormalForm& nf1, const EdgeNormalForm& nf2, double tol = 1e-6);

/// u -> -u: crease reversed, theta(u) -> -theta(-u), a(u,v) -> a(-u,v),
/// b(u,v) -> -b(-u,v); parametrizes the same surface as f(-u, v).
EdgeNormalForm station_reversed(const EdgeNormalForm& nf);
/// v -> -v: a(u,v) -> a(u,-v), b(u,v) -> -b(u,-v).
EdgeNormalForm t_flipped(const EdgeNormalForm& nf);

enum class Properness { finite, suspected_infinite, inconclusive };
const char* properness_name(Properness p);

struct PropernessReport {
  std::vector<double> center;
  std::vector<double> radii, thresholds;
  std::vector<int> counts;
  std::vector<double> exact_fraction;  // share of samples with f(x) == f(p)
  Properness verdict = Properness::inconclusive;
  int r0_grid = 0;
};

/// Heuristic: at radius r_k = r0 2^-k a grid of `grid` cells (per axis for
/// curves, sqrt(grid) per axis for surfaces) over the r_k ball; cells with
/// |f - f(p)| <= 1e-3 r_k at a sample, or a sign change for scalar maps, are
/// grouped into connected runs.
PropernessReport properness_probe(const Map& f, std::span<const double> p, double r0 = 0.5, int levels = 8,
                                  int grid = 4096);

/// x for |x| >= 2, 0 for |x| <= 1, joined smoothly.
Map spliced_example();

}  // namespace frontal
