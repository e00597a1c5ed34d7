#pragma once

#include <string>
#include <vector>

#include "frontal/curve.hpp"
#include "frontal/germ.hpp"

namespace frontal {

/// Germ of a generalized cuspidal edge written as
///   f(u,v) = c(u) + v^2 a(u,v) d(u) + v^3 b(u,v) dperp(u),
///   d = cos(theta) n - sin(theta) b_c,  dperp = sin(theta) n + cos(theta) b_c,
/// with c an arc-length crease with Frenet frame (e, n, b_c) and theta the
/// cuspidal angle.
struct EdgeNormalForm {
  SpaceCurve crease;  // unit speed
  Profile theta;
  Map a;  // (u, v) -> R, a(u,0) != 0
  Map b;  // (u, v) -> R; may be empty when only (crease, theta) is known
  double halfwidth = 0.15;
  std::vector<double> stations;

  /// Grids kept from an extraction, for reports.
  std::vector<double> w_grid;
  std::vector<std::vector<double>> a_grid, b_grid;  // [station][w]

  double theta_at(double u) const { return theta(u); }
  Vec3 d(double u) const;
  Vec3 dperp(double u) const;
};

/// A scalar field in (u, v) from an expression.
Map scalar_field(const std::string& text);

/// Build a normal form. A crease that is not unit speed is reparametrized by
/// arc length from u = 0 (or from its start when 0 is outside the domain);
/// theta, a and b are read as functions of that arc length.
EdgeNormalForm make_normal_form(const SpaceCurve& crease, Profile theta, Map a, Map b,
                                double halfwidth = 0.15, int stations = 129);

/// w(t) = sign(t) sqrt(int_0^t |sigma'|) for a plane or space curve with a
/// generalized cusp at t = 0.
double half_arclength(const Map& sigma, double t);

/// The singular curve through the base point as a graph over the direction
/// transverse to the null direction, with its image.
struct CreaseTrace {
  NormalField field;
  Vec2 p, xi, eta;
  Interval t_range;
  Chebyshev offset;      // gamma(t) = p + t xi + offset(t) eta
  SpaceCurve raw;        // t -> f(gamma(t))
  SpaceCurve crease;     // arc length from p
  Chebyshev arc_length;  // s(t)
  Chebyshev speed;       // ds/dt

  Vec2 point(double t) const { return p + t * xi + offset(t) * eta; }
  double t_of_s(double s) const;
  Interval s_range() const { return {arc_length(t_range.lo), arc_length(t_range.hi)}; }
};

CreaseTrace trace_crease(const SurfaceGerm& germ);

/// Section of the image by the normal plane of the crease at station s,
/// reparametrized by half-arc-length w and written in (n, b) coordinates.
struct SectionalCusp {
  double s = 0.0;
  Vec2 q;  // singular point in the parameter plane
  Vec3 origin, e, n, b;
  Plane plane;
  Vec2 sigma2, sigma3;  // beta-jets in (n, b) coordinates
  double theta = 0.0;
  double b0 = 0.0;      // b(u, 0)
  std::vector<double> w;
  std::vector<Vec2> points;  // section at w
  std::vector<double> a_values, b_values;
  UniformHermite x_spline, y_spline;  // points as functions of w

  Vec2 operator()(double w) const { return {x_spline(w), y_spline(w)}; }
};

SectionalCusp sectional_cusp(const CreaseTrace& trace, double s, double halfwidth = 0.15, int wcount = 65);
SectionalCusp sectional_cusp(const SurfaceGerm& germ, double s, double halfwidth = 0.15);

EdgeNormalForm to_normal_form(const SurfaceGerm& germ, double halfwidth = 0.15, int stations = 129,
                              int wcount = 65);

SurfaceGerm from_normal_form(const EdgeNormalForm& nf);

struct EdgeInvariants {
  double theta = 0.0;
  double kappa = 0.0;
  double kappa_s = 0.0;
  double kappa_nu = 0.0;
};
EdgeInvariants edge_invariants(const EdgeNormalForm& nf, double u);
EdgeInvariants edge_invariants(double kappa, double theta);

bool is_cuspidal_edge(const EdgeNormalForm& nf, double u, double tol = 1e-8);

}  // namespace frontal
