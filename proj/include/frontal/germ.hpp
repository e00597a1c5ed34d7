#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frontal/geom.hpp"
#include "frontal/numkit.hpp"

namespace frontal {

/// No continuous unit normal exists at a point (directional limits disagree).
class NotFrontal : public Error {
 public:
  using Error::Error;
};

struct Rect {
  Interval u{-1.0, 1.0};
  Interval v{-1.0, 1.0};

  bool contains(const Vec2& q) const { return u.contains(q.x()) && v.contains(q.y()); }
  Vec2 clamp(const Vec2& q) const;
  Vec2 center() const { return {u.mid(), v.mid()}; }
  /// Rectangle scaled by `factor` about `c`, clipped to this one.
  Rect shrunk(const Vec2& c, double factor) const;
};

enum class GermKind { generic, cuspidal_edge, swallowtail, cuspidal_cross_cap, cross_cap, normal_form };
const char* kind_name(GermKind kind);

/// A map from a rectangle in the (u,v)-plane to 3-space with a base point.
class SurfaceGerm {
 public:
  SurfaceGerm() = default;
  SurfaceGerm(std::string name, Map map, Rect domain, Vec2 base = Vec2::Zero(), Map normal = {},
              GermKind kind = GermKind::generic);

  const std::string& name() const { return name_; }
  const Map& map() const { return map_; }
  Rect domain() const { return domain_; }
  Vec2 base() const { return base_; }
  const Map& analytic_normal() const { return normal_; }
  GermKind kind() const { return kind_; }

  /// Component formulas, when the germ came from text (for reports).
  std::vector<std::string> formula;

  Vec3 operator()(const Vec2& q) const;
  Vec3 operator()(double u, double v) const { return (*this)(Vec2(u, v)); }
  Jet jet(const Vec2& q, int order) const;
  /// (f_u, f_v)
  std::pair<Vec3, Vec3> tangents(const Vec2& q) const;

  SurfaceGerm with_domain(Rect domain) const;
  SurfaceGerm with_kind(GermKind kind) const;

 private:
  std::string name_;
  Map map_;
  Rect domain_;
  Vec2 base_ = Vec2::Zero();
  Map normal_;
  GermKind kind_ = GermKind::generic;
};

/// Continuous unit normal of a frontal, oriented so that its value at the
/// base point has a positive largest component.
class NormalField {
 public:
  NormalField() = default;
  explicit NormalField(SurfaceGerm germ);

  const SurfaceGerm& germ() const { return germ_; }
  Vec3 at_base() const { return nu_p_; }
  Vec3 operator()(const Vec2& q) const;
  /// Extension through a singular point by directional limits.
  Vec3 limit(const Vec2& q) const;
  /// lambda = det(f_u, f_v, nu)
  double lambda(const Vec2& q) const;
  /// Gradient of lambda by central differences with one Richardson level.
  Vec2 lambda_gradient(const Vec2& q) const;

 private:
  Vec3 raw(const Vec2& q) const;
  SurfaceGerm germ_;
  Vec3 nu_p_ = Vec3::UnitZ();
  double near_singular_ = 1e-13;
  double limit_step_ = 1e-4;
};

NormalField normal_field(const SurfaceGerm& germ);

double area_density(const NormalField& field, const Vec2& q);
double area_density(const SurfaceGerm& germ, const Vec2& q);

struct FundamentalForm {
  double E = 0.0, F = 0.0, G = 0.0;
};
FundamentalForm first_fundamental_form(const SurfaceGerm& germ, const Vec2& q);

/// Smallest right singular vector of df at q, largest component positive.
/// Throws if df vanishes at q.
Vec2 null_direction(const SurfaceGerm& germ, const Vec2& q, double tol = 1e-8);

struct SingularSample {
  Vec2 q;
  Vec2 grad;      // gradient of lambda
  Vec2 null_dir;  // kernel of df
  Vec2 tangent;   // (-lambda_v, lambda_u), normalized
  bool nondegenerate = false;
  int type = 1;   // 1: null direction transverse to the curve, 2: tangent
};

struct SingularCurve {
  std::vector<SingularSample> samples;
  /// Index of the first sample of each connected branch.
  std::vector<std::size_t> branches;
  bool empty() const { return samples.empty(); }
};

/// Zero set of lambda from grid sign changes and Newton refinement.
SingularCurve singular_curve(const NormalField& field, double tol = 1e-8, int grid = 256);

/// Null direction transverse (1) or tangent (2) to the singular curve at q.
int singular_type(const NormalField& field, const Vec2& q, double tol = 1e-6);

/// Limiting normal curvature at a type I singular point.
double limiting_normal_curvature(const NormalField& field, const Vec2& q);

/// Taylor data of the section of the image by the plane through f(q)
/// orthogonal to df(xi), where xi is perpendicular to the null direction
/// eta: sigma(beta) = f(q) + sigma2 beta^2 + sigma3 beta^3 + ...
struct SectionJets {
  Vec2 eta, xi;
  Vec3 origin;
  Vec3 e;  // unit normal of the section plane
  Vec3 sigma2, sigma3;
  double A2 = 0.0, A3 = 0.0;  // alpha = A2 beta^2 + A3 beta^3 along the section
};
SectionJets section_jets(const SurfaceGerm& germ, const Vec2& q, const Vec2& eta);

struct FrameReport {
  GermFrame frame;
  DistinguishedPlanes planes;
  std::optional<Vec3> cuspidal_direction;
  Vec2 null_dir;
  Vec2 xi;
};

/// Frame and distinguished planes at a co-rank one singular point.
FrameReport distinguished_frame(const NormalField& field, const Vec2& p);

enum class PointClass { regular, cuspidal_edge, swallowtail, cuspidal_cross_cap, degenerate, corank_two };
const char* point_class_name(PointClass c);

/// Numerical recognition: type II nondegenerate -> swallowtail; type I with
/// a nondegenerate sectional cusp -> cuspidal edge, otherwise cuspidal cross cap.
PointClass classify_point(const NormalField& field, const Vec2& p, double tol = 1e-8);

}  // namespace frontal
