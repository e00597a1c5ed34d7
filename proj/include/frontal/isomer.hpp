#pragma once

#include <optional>
#include <vector>

#include "frontal/normalform.hpp"

namespace frontal {

struct Admissibility {
  bool admissible = false;
  bool strict = false;
  double max_abs_kappa_s = 0.0;
  double min_kappa = 0.0;
  double min_abs_kappa_s = 0.0;
};

/// max |kappa_s| < min kappa over the stations; strict also needs min |kappa_s| > 0.
Admissibility admissible(const EdgeNormalForm& nf);

/// theta -> -theta on the same crease; a, b are copied.
EdgeNormalForm dual(const EdgeNormalForm& nf);

/// Crease traversed backwards, cos(theta_*(u)) = kappa(u)/kappa(-u) cos(theta(u)) with
/// theta(-u) theta_*(u) > 0. Stations where theta(-u) = 0 take the + sign and
/// are listed in `flagged`. a and b are left unset.
EdgeNormalForm inverse(const EdgeNormalForm& nf, std::vector<double>* flagged = nullptr);

EdgeNormalForm inverse_dual(const EdgeNormalForm& nf);

struct IsomerSet {
  EdgeNormalForm base, dual, inverse, inverse_dual;
  std::vector<double> flagged;  // stations where the inverse sign rule was undecidable
};

IsomerSet isomers(const EdgeNormalForm& nf);

/// Members are identified when their (kappa, tau, theta) station profiles
/// agree within tol under u -> +-u + c.
int right_equivalence_classes(const IsomerSet& set, double tol = 1e-6);

enum class CurveSymmetryKind { none, positive, negative };
enum class MetricSymmetry { none, symmetry, effective_symmetry };
const char* curve_symmetry_name(CurveSymmetryKind k);
const char* metric_symmetry_name(MetricSymmetry m);

struct SymmetryPredicates {
  bool planar = false;
  CurveSymmetryKind curve = CurveSymmetryKind::none;
  MetricSymmetry metric = MetricSymmetry::none;
};

/// Heuristic detection: planarity and curve symmetry from the crease,
/// metric symmetry from evenness of the kappa_s profile under a flip.
SymmetryPredicates detect_predicates(const EdgeNormalForm& nf, double tol = 1e-6);

struct CongruenceCount {
  int bound = 4;
  bool exact = true;
};

CongruenceCount congruence_count(const SymmetryPredicates& p);

}  // namespace frontal
