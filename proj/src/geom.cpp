#include "frontal/geom.hpp"

namespace frontal {

Isometry::Isometry(const Mat3& q, const Vec3& t) : Q(q), b(t) {
  if (!((Q.transpose() * Q - Mat3::Identity()).cwiseAbs().maxCoeff() <= 1e-10))
    throw PreconditionError("isometry part is not orthogonal");
}

std::array<double, 12> Isometry::to_array() const {
  std::array<double, 12> a{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[3 * i + j] = Q(i, j);
  for (int i = 0; i < 3; ++i) a[9 + i] = b[i];
  return a;
}

Isometry Isometry::from_array(const std::array<double, 12>& a) {
  Mat3 q;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) q(i, j) = a[3 * i + j];
  return {q, Vec3(a[9], a[10], a[11])};
}

namespace {

Vec3 unit(const Vec3& v, const char* what) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw PreconditionError(std::string(what) + " must be a nonzero vector");
  return v / n;
}

}  // namespace

Plane::Plane(const Vec3& a, const Vec3& n) : anchor(a), normal(unit(n, "plane normal")) {}

Line::Line(const Vec3& a, const Vec3& d) : anchor(a), direction(unit(d, "line direction")) {}

double Line::distance(const Vec3& x) const {
  const Vec3 r = x - anchor;
  return (r - r.dot(direction) * direction).norm();
}

GermFrame GermFrame::make(const Vec3& origin, const Vec3& t, const Vec3& nu, double tol) {
  GermFrame f;
  f.origin = origin;
  f.t = t;
  f.nu = nu;
  f.w = t.cross(nu);
  if (!f.orthonormal(tol)) throw PreconditionError("frame is not orthonormal");
  return f;
}

bool GermFrame::orthonormal(double tol) const {
  Mat3 m;
  m << t, nu, w;
  return (m.transpose() * m - Mat3::Identity()).cwiseAbs().maxCoeff() <= tol && m.determinant() > 0.0;
}

DistinguishedPlanes distinguished_planes(const GermFrame& f) {
  return {Plane(f.origin, f.nu), Plane(f.origin, f.t), Plane(f.origin, f.w), Line(f.origin, f.t),
          Line(f.origin, f.w)};
}

const char* label_name(IsoLabel label) {
  switch (label) {
    case IsoLabel::identity: return "identity";
    case IsoLabel::refl_Pi0: return "refl_Pi0";
    case IsoLabel::refl_Pi1: return "refl_Pi1";
    case IsoLabel::refl_Pi2: return "refl_Pi2";
    case IsoLabel::rot180_l2: return "rot180_l2";
    case IsoLabel::other: return "other";
  }
  return "other";
}

std::string label_case(IsoLabel label) {
  switch (label) {
    case IsoLabel::refl_Pi0: return "i";
    case IsoLabel::refl_Pi1: return "ii";
    case IsoLabel::refl_Pi2: return "iii";
    case IsoLabel::rot180_l2: return "iv";
    default: return "";
  }
}

Isometry make_reflection(const Plane& plane) {
  const Vec3& n = plane.normal;
  const Mat3 Q = Mat3::Identity() - 2.0 * n * n.transpose();
  return {Q, plane.anchor - Q * plane.anchor};
}

Isometry make_rotation180(const Line& line) {
  const Vec3& d = line.direction;
  const Mat3 Q = 2.0 * d * d.transpose() - Mat3::Identity();
  return {Q, line.anchor - Q * line.anchor};
}

std::array<Candidate, 4> frame_candidates(const GermFrame& frame) {
  const DistinguishedPlanes p = distinguished_planes(frame);
  return {{{IsoLabel::refl_Pi0, make_reflection(p.pi0)},
           {IsoLabel::refl_Pi1, make_reflection(p.pi1)},
           {IsoLabel::refl_Pi2, make_reflection(p.pi2)},
           {IsoLabel::rot180_l2, make_rotation180(p.l2)}}};
}

IsoLabel classify_isometry(const Isometry& T, const GermFrame& frame, double tol) {
  if (!frame.orthonormal(std::max(tol, 1e-10))) throw PreconditionError("frame is not orthonormal");
  if ((T(frame.origin) - frame.origin).cwiseAbs().maxCoeff() > tol) return IsoLabel::other;
  auto close = [&](const Mat3& a) { return (T.Q - a).cwiseAbs().maxCoeff() <= tol; };
  if (close(Mat3::Identity())) return IsoLabel::identity;
  for (const auto& c : frame_candidates(frame))
    if (close(c.T.Q)) return c.label;
  return IsoLabel::other;
}

bool is_involution(const Isometry& T, double tol) {
  return (T.Q * T.Q - Mat3::Identity()).cwiseAbs().maxCoeff() <= tol &&
         (T.Q * T.b + T.b).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace frontal
