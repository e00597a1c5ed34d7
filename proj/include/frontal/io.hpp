#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "frontal/devfold.hpp"
#include "frontal/isomer.hpp"
#include "frontal/symmetry.hpp"

namespace frontal::io {

using Json = nlohmann::json;

/// Plain CSV with a header row; numbers use 12 significant digits.
class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : header_(std::move(header)) {}
  void row(const std::vector<double>& values);
  void row(const std::vector<std::string>& cells);
  std::string str() const;
  std::size_t size() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::string> rows_;
};

std::string format_number(double x, int digits = 12);

/// Wavefront OBJ: one object per mesh, "v x y z" row-major (station then
/// width) with 9 significant digits, 1-based quad faces.
std::string obj(const std::vector<MeshGrid>& meshes);

void write_file(const std::string& path, const std::string& content);

Json to_json(const Vec2& v);
Json to_json(const Vec3& v);
Json to_json(const Isometry& T);  // 12 reals: row-major Q, then b
Json to_json(const Plane& p);
Json to_json(const Line& l);
Json to_json(const FrameReport& f);
Json to_json(const EdgeNormalForm& nf);
Json to_json(const Admissibility& a);
Json to_json(const SymmetryPredicates& p);
Json to_json(const StripCheck& c);
Json to_json(const ConnectingMap& cm, bool samples = true);
Json to_json(const PropernessReport& r);
Json to_json(const SymmetryFinding& f);
Json to_json(const SymmetryReport& r);
Json to_json(const C2Report& c);
Json to_json(const SelfIntersectionLocus& l);

/// Station profiles (u, theta, kappa, tau, kappa_s, kappa_nu).
Csv edge_profile(const EdgeNormalForm& nf);
/// Station profiles (u, alpha, beta, kappa, tau).
Csv strip_profile(const DevStrip& s);
/// psi samples (x1, x2, psi1, psi2, residual); curves leave x2 and psi2 empty.
Csv psi_table(const ConnectingMap& cm);

}  // namespace frontal::io
