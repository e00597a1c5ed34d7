#pragma once

#include <array>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "frontal/numkit.hpp"

namespace frontal {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline Vec3 to_vec3(std::span<const double> p) { return {p[0], p[1], p[2]}; }

/// Flip v so that its largest-magnitude component is positive (first one on ties).
template <class V>
V canonical_sign(const V& v) {
  Eigen::Index k = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[k]) * (1.0 + 1e-12)) k = i;
  return v[k] < 0 ? V(-v) : v;
}

/// x -> Q x + b with Q orthogonal.
struct Isometry {
  Mat3 Q = Mat3::Identity();
  Vec3 b = Vec3::Zero();

  Isometry() = default;
  Isometry(const Mat3& q, const Vec3& t = Vec3::Zero());

  Vec3 operator()(const Vec3& x) const { return Q * x + b; }
  Isometry operator*(const Isometry& o) const { return {Q * o.Q, Q * o.b + b}; }
  Isometry inverse() const { return {Q.transpose(), -(Q.transpose() * b)}; }

  /// Row-major Q followed by b.
  std::array<double, 12> to_array() const;
  static Isometry from_array(const std::array<double, 12>& a);
};

struct Plane {
  Vec3 anchor = Vec3::Zero();
  Vec3 normal = Vec3::UnitZ();

  Plane() = default;
  Plane(const Vec3& anchor, const Vec3& normal);  // normalizes
  double signed_distance(const Vec3& x) const { return normal.dot(x - anchor); }
};

struct Line {
  Vec3 anchor = Vec3::Zero();
  Vec3 direction = Vec3::UnitX();

  Line() = default;
  Line(const Vec3& anchor, const Vec3& direction);  // normalizes
  double distance(const Vec3& x) const;
};

/// Orthonormal frame at a co-rank one singular point: tangent t, normal nu,
/// co-normal w = t x nu.
struct GermFrame {
  Vec3 origin = Vec3::Zero();
  Vec3 t = Vec3::UnitX();
  Vec3 nu = Vec3::UnitZ();
  Vec3 w = -Vec3::UnitY();

  /// Builds w and checks orthonormality of (t, nu) to `tol`.
  static GermFrame make(const Vec3& origin, const Vec3& t, const Vec3& nu, double tol = 1e-10);
  bool orthonormal(double tol) const;
};

struct DistinguishedPlanes {
  Plane pi0;  // limiting tangent plane, normal nu
  Plane pi1;  // normal plane, normal t
  Plane pi2;  // co-normal plane, normal w
  Line l1;    // tangent line
  Line l2;    // co-normal line, pi0 ∩ pi1
};

DistinguishedPlanes distinguished_planes(const GermFrame& frame);

enum class IsoLabel { identity, refl_Pi0, refl_Pi1, refl_Pi2, rot180_l2, other };

const char* label_name(IsoLabel label);
/// Roman-numeral case for the four nontrivial symmetries ("i".."iv"), empty otherwise.
std::string label_case(IsoLabel label);

Isometry make_reflection(const Plane& plane);
Isometry make_rotation180(const Line& line);

struct Candidate {
  IsoLabel label;
  Isometry T;
};

/// The four involutions refl Pi0, refl Pi1, refl Pi2, rot l2 of a frame.
std::array<Candidate, 4> frame_candidates(const GermFrame& frame);

IsoLabel classify_isometry(const Isometry& T, const GermFrame& frame, double tol = 1e-8);

bool is_involution(const Isometry& T, double tol);

}  // namespace frontal
