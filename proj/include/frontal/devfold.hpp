#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "frontal/normalform.hpp"

namespace frontal {

/// Ruled strip F(u,v) = c(u) + v xi(u) over an arc-length crease with
///   xi = cos(beta) e + sin(beta) (cos(alpha) n + sin(alpha) b).
struct DevStrip {
  SpaceCurve crease;
  Profile alpha;
  Profile beta;
  double halfwidth = 0.15;
  std::vector<double> stations;
  std::shared_ptr<const EdgeNormalForm> source;  // set by ist

  Vec3 ruling(double u) const;
  Vec3 operator()(double u, double v) const;
};

/// beta in (0, pi) with cot(beta) = (alpha' + tau) / (kappa sin(alpha)).
double second_angle(double alpha, double alpha_prime, double kappa, double tau);

/// Strip with first angular function alpha; beta follows from second_angle.
DevStrip make_strip(const SpaceCurve& crease, Profile alpha, double halfwidth = 0.15, int stations = 129);

/// Osculating developable strip of an edge: alpha = theta.
DevStrip ist(const EdgeNormalForm& nf);

/// Same crease, alpha -> -alpha.
DevStrip dual_strip(const DevStrip& strip);

struct StripIsomers {
  DevStrip dual, inverse, inverse_dual;
};
/// Isomers taken at the edge level and mapped through ist.
StripIsomers strip_isomers(const DevStrip& strip);

struct StripCheck {
  bool alpha_ok = true;  // 0 < |alpha| < pi/2
  bool beta_ok = true;   // 0 < beta < pi
  bool ruling_ok = true; // xi . n > 0
  double beta_residual = 0.0;
  double max_abs_K = 0.0;
  int k_rows = 33, k_cols = 9;
  bool width_ok = true;  // halfwidth <= 0.2 min radius of curvature
  std::vector<std::string> warnings;
  bool ok(double ktol = 1e-6) const { return alpha_ok && beta_ok && ruling_ok && beta_residual < 1e-8 && max_abs_K < ktol; }
};

using SurfaceFn = std::function<Vec3(double, double)>;

/// (LN - M^2)/(EG - F^2) from finite differences with one Richardson level.
double gaussian_curvature(const SurfaceFn& f, double u, double v, double h = 1e-3);
double gaussian_curvature(const DevStrip& strip, double u, double v);

StripCheck check_strip(const DevStrip& strip, int rows = 33, int cols = 9);

enum class SplitRule { u_split, v_split };
const char* split_name(SplitRule s);

/// Psi = F on u > 0 (resp. v >= 0) and the dual strip elsewhere.
struct CurvedFolding {
  DevStrip strip, dual;
  SplitRule split = SplitRule::u_split;
  Vec3 operator()(double u, double v) const;
};

CurvedFolding curved_folding(const DevStrip& strip, SplitRule split = SplitRule::u_split);

struct MeshGrid {
  std::string name;
  int rows = 0, cols = 0;        // stations x widths
  std::vector<Vec3> vertices;    // row-major
  std::vector<double> u, v;      // lattice coordinates
};

MeshGrid mesh(const SurfaceFn& f, Interval u, Interval v, int rows, int cols, std::string name = {});
MeshGrid mesh(const DevStrip& strip, int rows = 65, int cols = 9, std::string name = "strip");
/// One mesh per piece of the folding.
std::vector<MeshGrid> fold_meshes(const CurvedFolding& fold, int rows = 65, int cols = 9);

}  // namespace frontal
