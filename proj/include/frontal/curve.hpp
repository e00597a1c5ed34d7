#pragma once

#include <array>
#include <optional>
#include <string>

#include "frontal/geom.hpp"
#include "frontal/numkit.hpp"

namespace frontal {

/// A parametrized curve in 3-space over a closed parameter interval.
class SpaceCurve {
 public:
  SpaceCurve() = default;
  SpaceCurve(Map map, Interval domain, std::string name = {});

  const Map& map() const { return map_; }
  Interval domain() const { return domain_; }
  const std::string& name() const { return name_; }
  explicit operator bool() const { return static_cast<bool>(map_); }

  Vec3 operator()(double u) const;
  /// c, c', c'', c''' at u; entries above `order` are zero.
  std::array<Vec3, 4> derivatives(double u, int order = 3) const;

 private:
  Map map_;
  Interval domain_;
  std::string name_;
};

struct FrenetSample {
  double u = 0.0;
  Vec3 point, e, n, b;
  double kappa = 0.0;
  double tau = 0.0;
  double speed = 0.0;
};

FrenetSample frenet(const SpaceCurve& curve, double u);

/// Unit-speed reparametrization. The new parameter is arc length measured
/// from `anchor` (default: the start of the domain).
SpaceCurve arclength_param(const SpaceCurve& curve, double tol = 1e-10, std::optional<double> anchor = {});

/// The osculating plane when the torsion vanishes on a probe grid.
std::optional<Plane> curve_plane(const SpaceCurve& curve, double tol = 1e-8);

struct CurveSymmetry {
  Isometry S;
  int det = 1;
  double center = 0.0;    // parameter of the fixed point: s -> 2*center - s
  double residual = 0.0;  // max |S(c(s)) - c(2*center - s)| on the overlap
};

/// Orientation-reversing ambient symmetry S(c(s)) = c(2*center - s), if any.
std::optional<CurveSymmetry> curve_symmetry(const SpaceCurve& curve, double tol = 1e-6);

/// Curve traversed backwards: u -> c(-u) on [-hi, -lo].
SpaceCurve reversed(const SpaceCurve& curve);

// Builtin curves.
SpaceCurve circle(double r, Interval domain = {0.0, 6.283185307179586});
SpaceCurve helix(double a, double b, Interval domain = {-3.141592653589793, 3.141592653589793});
SpaceCurve segment(const Vec3& from = Vec3::Zero(), const Vec3& to = Vec3::UnitX());
/// Arc-length curve with prescribed curvature and torsion, starting at the
/// origin with the standard frame at domain.lo.
SpaceCurve frenet_curve(Profile kappa, Profile tau, Interval domain, std::string name = "frenet");

/// Matches sampled profiles B(j) against A(i) under i -> sign*i + shift.
struct ProfileShift {
  int sign = 1;
  int shift = 0;
  double mismatch = 0.0;
};

/// Profiles are rows of n uniform samples on a common grid; the mismatch is
/// the max abs row difference over the overlap. Returns the best shift for
/// each requested sign. Only shifts overlapping at least half the samples
/// are considered; ties go to the shift closest to the identity/reversal.
std::vector<ProfileShift> match_profiles(const std::vector<std::vector<double>>& A,
                                         const std::vector<std::vector<double>>& B,
                                         const std::vector<int>& signs);

}  // namespace frontal
