#include "frontal/scene.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#include "json.hpp"

#include "frontal/catalog.hpp"
#include "frontal/exprlang.hpp"

namespace frontal {

namespace {

using Json = nlohmann::json;

Interval interval_of(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw SceneError(where + ": expected [lo, hi]");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<std::string> components_of(const Json& j, const std::string& where) {
  if (j.is_string()) return expr::split_components(j.get<std::string>());
  if (!j.is_array()) throw SceneError(where + ": expected an expression list");
  std::vector<std::string> out;
  for (const auto& c : j) {
    if (!c.is_string()) throw SceneError(where + ": components must be strings");
    out.push_back(c.get<std::string>());
  }
  return out;
}

std::map<std::string, std::string> lets_of(const Json& j, const std::string& where) {
  std::map<std::string, std::string> out;
  if (j.is_null()) return out;
  if (!j.is_object()) throw SceneError(where + ": \"let\" must be an object");
  for (const auto& [k, v] : j.items()) {
    if (!v.is_string()) throw SceneError(where + ": let " + k + " must be a string");
    out[k] = v.get<std::string>();
  }
  return out;
}

std::vector<double> numbers_in(const std::string& args) {
  std::vector<double> out;
  for (const auto& a : expr::split_components(args)) {
    const Jet j = expr::evaluate(expr::parse(a), {}, 0);
    out.push_back(j.value(0));
  }
  return out;
}

SpaceCurve builtin_curve(const std::string& text) {
  static const std::regex call(R"(^\s*([A-Za-z_]\w*)\s*(?:\((.*)\))?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, call)) throw SceneError("unresolved curve \"" + text + "\"");
  const std::string name = m[1];
  const std::vector<double> a = m[2].matched ? numbers_in(m[2]) : std::vector<double>{};
  if (name == "circle") {
    if (a.size() == 1) return circle(a[0]);
    if (a.size() == 3) return circle(a[0], {a[1], a[2]});
    throw SceneError("circle takes (r) or (r, lo, hi)");
  }
  if (name == "helix") {
    if (a.size() == 2) return helix(a[0], a[1]);
    if (a.size() == 4) return helix(a[0], a[1], {a[2], a[3]});
    throw SceneError("helix takes (a, b) or (a, b, lo, hi)");
  }
  if (name == "segment" && a.empty()) return segment();
  throw SceneError("unresolved curve \"" + text + "\"");
}

SpaceCurve curve_from_json(const Json& j, const Scene& scene, const std::string& where) {
  if (j.is_string()) return resolve_curve(scene, j.get<std::string>());
  if (!j.is_object()) throw SceneError(where + ": expected a name or an object");
  const Interval dom = j.contains("domain") ? interval_of(j["domain"], where + ".domain") : Interval{-1.0, 1.0};
  SpaceCurve c;
  if (j.contains("map")) {
    const std::string var = j.value("var", "t");
    const auto lets = lets_of(j.value("let", Json()), where);
    std::vector<std::string> comps;
    for (const auto& s : components_of(j["map"], where + ".map")) comps.push_back(substitute(s, lets));
    if (comps.size() != 3) throw SceneError(where + ".map: a space curve needs 3 components");
    c = SpaceCurve(expr::make_mapdef(where, {var}, comps).compile(), dom, where);
  } else if (j.contains("kappa") && j.contains("tau")) {
    c = frenet_curve(expr::make_profile(j["kappa"].get<std::string>()), expr::make_profile(j["tau"].get<std::string>()),
                     dom, where);
  } else if (j.contains("builtin")) {
    c = builtin_curve(j["builtin"].get<std::string>());
    if (j.contains("domain")) c = SpaceCurve(c.map(), dom, c.name());
  } else {
    throw SceneError(where + ": a curve needs \"map\", \"kappa\"/\"tau\" or \"builtin\"");
  }
  if (j.value("arclength", false)) c = arclength_param(c, 1e-12, j.value("anchor", 0.0));
  return c;
}

Rect rect_of(const Json& j, const std::string& where) {
  if (j.is_null()) return {};
  if (!j.is_array() || j.size() != 2) throw SceneError(where + ": expected [[ulo, uhi], [vlo, vhi]]");
  return {interval_of(j[0], where), interval_of(j[1], where)};
}

SceneGerm germ_from_json(const std::string& name, const Json& j, const Scene& scene) {
  const std::string where = "germs." + name;
  if (j.is_string()) return resolve_germ(scene, j.get<std::string>());
  if (!j.is_object()) throw SceneError(where + ": expected a name or an object");
  if (j.contains("catalog")) {
    SceneGerm g = resolve_germ(scene, j["catalog"].get<std::string>());
    if (j.contains("domain")) g.germ = g.germ.with_domain(rect_of(j["domain"], where + ".domain"));
    return g;
  }
  if (j.contains("map")) {
    const auto lets = lets_of(j.value("let", Json()), where);
    std::vector<std::string> comps;
    for (const auto& s : components_of(j["map"], where + ".map")) comps.push_back(substitute(s, lets));
    if (comps.size() != 3) throw SceneError(where + ".map: a germ needs 3 components in u, v");
    Vec2 base = Vec2::Zero();
    if (j.contains("base")) {
      const Interval b = interval_of(j["base"], where + ".base");
      base = Vec2(b.lo, b.hi);
    }
    SurfaceGerm g = catalog::from_expressions(name, comps, rect_of(j.value("domain", Json()), where + ".domain"), base);
    if (j.contains("normal")) {
      std::vector<std::string> ncomps;
      for (const auto& s : components_of(j["normal"], where + ".normal")) ncomps.push_back(substitute(s, lets));
      if (ncomps.size() != 3) throw SceneError(where + ".normal: needs 3 components in u, v");
      const auto formula = g.formula;
      g = SurfaceGerm(name, g.map(), g.domain(), g.base(), expr::make_mapdef(name + ".normal", {"u", "v"}, ncomps).compile());
      g.formula = formula;
    }
    return {g, {}};
  }
  if (j.contains("normal_form")) {
    const Json& n = j["normal_form"];
    if (!n.contains("crease") || !n.contains("theta"))
      throw SceneError(where + ".normal_form: needs \"crease\" and \"theta\"");
    const SpaceCurve crease = curve_from_json(n["crease"], scene, where + ".crease");
    const EdgeNormalForm nf = make_normal_form(
        crease, expr::make_profile(n["theta"].get<std::string>()), scalar_field(n.value("a", std::string("1"))),
        scalar_field(n.value("b", std::string("1"))), n.value("halfwidth", 0.15), n.value("stations", 129));
    SurfaceGerm g = from_normal_form(nf);
    return {g, nf};
  }
  throw SceneError(where + ": a germ needs \"map\", \"catalog\" or \"normal_form\"");
}

}  // namespace

double Scene::tolerance(const std::string& key, double fallback) const {
  const auto it = tolerances.find(key);
  return it == tolerances.end() ? fallback : it->second;
}

std::string substitute(const std::string& text, const std::map<std::string, std::string>& defs) {
  std::string out = text;
  for (const auto& [name, body] : defs) {
    const std::regex call("\\b" + name + "\\s*\\([^()]*\\)");
    out = std::regex_replace(out, call, "(" + body + ")");
    const std::regex bare("\\b" + name + "\\b");
    out = std::regex_replace(out, bare, "(" + body + ")");
  }
  return out;
}

SpaceCurve resolve_curve(const Scene& scene, const std::string& text) {
  const auto it = scene.curves.find(text);
  if (it != scene.curves.end()) return it->second;
  return builtin_curve(text);
}

SceneGerm resolve_germ(const Scene& scene, const std::string& text) {
  const auto it = scene.germs.find(text);
  if (it != scene.germs.end()) return it->second;
  try {
    return {catalog::by_name(text), {}};
  } catch (const PreconditionError& e) {
    throw SceneError("unresolved germ \"" + text + "\": " + e.what());
  }
}

Scene parse_scene(const std::string& text, const std::string& source) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SceneError(source + ": parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!j.is_object()) throw SceneError(source + ": top level must be an object");
  Scene s;
  s.source = source;
  s.out = j.value("out", std::string());
  try {
    if (j.contains("tolerances"))
      for (const auto& [k, v] : j["tolerances"].items()) s.tolerances[k] = v.get<double>();
    // curves may refer to earlier curves; objects keep keys sorted, so resolve in passes
    if (j.contains("curves")) {
      std::map<std::string, Json> pending;
      for (const auto& [k, v] : j["curves"].items()) pending[k] = v;
      while (!pending.empty()) {
        std::size_t before = pending.size();
        std::string last_error;
        for (auto it = pending.begin(); it != pending.end();) {
          try {
            s.curves[it->first] = curve_from_json(it->second, s, "curves." + it->first);
            it = pending.erase(it);
          } catch (const SceneError& e) {
            last_error = e.what();
            ++it;
          }
        }
        if (pending.size() == before) throw SceneError(last_error);
      }
    }
    if (j.contains("germs")) {
      std::map<std::string, Json> pending;
      for (const auto& [k, v] : j["germs"].items()) pending[k] = v;
      while (!pending.empty()) {
        std::size_t before = pending.size();
        std::string last_error;
        for (auto it = pending.begin(); it != pending.end();) {
          try {
            s.germs[it->first] = germ_from_json(it->first, it->second, s);
            it = pending.erase(it);
          } catch (const SceneError& e) {
            last_error = e.what();
            ++it;
          }
        }
        if (pending.size() == before) throw SceneError(last_error);
      }
    }
  } catch (const Json::exception& e) {
    throw SceneError(source + ": " + e.what());
  } catch (const expr::ParseError& e) {
    throw SceneError(source + ": expression error at offset " + std::to_string(e.offset()) + ": " + e.what());
  } catch (const expr::ResolveError& e) {
    throw SceneError(source + ": " + e.what());
  }
  return s;
}

Scene load_scene(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw SceneError("cannot read scene " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_scene(ss.str(), path);
}

}  // namespace frontal
