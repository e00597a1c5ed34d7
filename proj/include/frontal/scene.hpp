#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "frontal/curve.hpp"
#include "frontal/germ.hpp"
#include "frontal/normalform.hpp"

namespace frontal {

/// Malformed scene or a name that does not resolve.
class SceneError : public Error {
 public:
  using Error::Error;
};

struct SceneGerm {
  SurfaceGerm germ;
  std::optional<EdgeNormalForm> normal_form;  // when declared as a normal form
};

struct Scene {
  std::string source;
  std::map<std::string, SpaceCurve> curves;
  std::map<std::string, SceneGerm> germs;
  std::map<std::string, double> tolerances;
  std::string out;

  double tolerance(const std::string& key, double fallback) const;
};

Scene load_scene(const std::string& path);
Scene parse_scene(const std::string& text, const std::string& source = "<scene>");

/// Scene curve names first, then builtins: circle(r[,lo,hi]), helix(a,b[,lo,hi]), segment.
SpaceCurve resolve_curve(const Scene& scene, const std::string& text);
/// Scene germ names first, then the catalog.
SceneGerm resolve_germ(const Scene& scene, const std::string& text);

/// Replace each "name(...)" or bare "name" by "(definition)".
std::string substitute(const std::string& text, const std::map<std::string, std::string>& defs);

}  // namespace frontal
