#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frontal/match.hpp"

namespace frontal {

struct SymmetryFinding {
  IsoLabel label = IsoLabel::other;
  Isometry T;
  double residual = 0.0;  // one-sided image distance of T f(V) to f(U)
  bool T_involution = false;
  double T_fixes_fp = 0.0;  // |T f(p) - f(p)|

  // connecting involution psi with f o psi = T o f
  ConnectingMap psi;
  double psi_involution_error = 0.0;  // sup |psi o psi - id| on samples
  double f_psi_error = 0.0;           // sup |f o psi - T o f|
  bool orientation_preserving = true;
  bool reverses_singular_curve = false;

  std::string case_name() const { return label_case(label); }
};

struct RejectedCandidate {
  IsoLabel label;
  double distance = 0.0;
};

struct SymmetryReport {
  std::string germ;
  Vec2 p = Vec2::Zero();
  PointClass point = PointClass::regular;
  std::optional<double> kappa_nu;
  FrameReport frame;
  std::vector<SymmetryFinding> findings;
  std::vector<RejectedCandidate> rejected;
  std::vector<std::string> violations;  // consistency checks that failed

  bool valid() const { return violations.empty(); }
  std::vector<std::string> cases() const;
};

struct SymmetryOptions {
  double tol = 1e-6;
  double shrink = 0.5;   // V is the domain scaled about p by this factor
  int query = 33;        // samples per axis on V
  int reference = 257;   // samples per axis on U
  int psi_samples = 17;  // samples per axis for psi
};

/// Tests the four frame involutions and validates the findings against the
/// rules for each singularity type. Throws PreconditionError at points that
/// are not cuspidal edges, swallowtails or cuspidal cross caps.
SymmetryReport detect_symmetries(const SurfaceGerm& germ, const Vec2& p, SymmetryOptions opt = {});
SymmetryReport detect_symmetries(const SurfaceGerm& germ, SymmetryOptions opt = {});

/// Same test for a user-supplied isometry; empty when T f(V) is not inside f(U).
std::optional<SymmetryFinding> test_isometry(const SurfaceGerm& germ, const Vec2& p, const Isometry& T,
                                             SymmetryOptions opt = {});

/// psi with f o psi = T o f on the shrunken neighbourhood.
ConnectingMap connecting_involution(const SurfaceGerm& germ, const Vec2& p, const Isometry& T,
                                    SymmetryOptions opt = {});

struct SelfIntersection {
  Vec2 q, q2;
  Vec3 image;
  double residual = 0.0;
};

struct SelfIntersectionLocus {
  std::vector<SelfIntersection> pairs;  // q < q2 lexicographically, sorted by q
  double grid_step = 0.0;
  std::vector<Vec3> polyline() const;
  bool empty() const { return pairs.empty(); }
};

/// Distinct preimages with equal images: spatial hash of image samples, then
/// least squares on f(q) = f(q2) with |q - q2| bounded below.
SelfIntersectionLocus self_intersections(const SurfaceGerm& germ, const Rect& region, double tol = 1e-12,
                                         int grid = 161);

struct C2Report {
  bool applicable = false;
  bool f_psi_ok = true;
  bool no_fixed_point_ok = true;
  bool fixed_by_T_ok = true;
  std::optional<bool> in_normal_plane_ok;  // cuspidal cross caps
  double f_psi_error = 0.0;
  double min_displacement = 0.0;  // min |psi(q) - q| away from p
  double T_error = 0.0;
  double normal_plane_error = 0.0;
  std::size_t points = 0;
  bool ok() const { return f_psi_ok && no_fixed_point_ok && fixed_by_T_ok && in_normal_plane_ok.value_or(true); }
};

C2Report verify_c2(const SymmetryReport& report, const SymmetryFinding& finding, const SelfIntersectionLocus& locus,
                   const SurfaceGerm& germ, double tol = 1e-8);

struct MsCheck {
  bool parity = false;
  std::vector<std::string> failed_parities;
  SymmetryReport report;
  bool pi1_found = false;
  bool psi_is_u_flip = false;
  double kappa_nu = 0.0;
};

/// Germ (u, a0 + v^2, b0 u^2 + b2 u v^2 + b3 v^3) at the origin.
MsCheck ms_symmetry_check(const std::string& a0, const std::string& b0, const std::string& b2, const std::string& b3,
                          SymmetryOptions opt = {});

}  // namespace frontal
