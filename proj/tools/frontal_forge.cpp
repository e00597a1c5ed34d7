// frontal-forge: command-line front end over the frontal library.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "frontal/catalog.hpp"
#include "frontal/devfold.hpp"
#include "frontal/exprlang.hpp"
#include "frontal/io.hpp"
#include "frontal/isomer.hpp"
#include "frontal/match.hpp"
#include "frontal/scene.hpp"
#include "frontal/symmetry.hpp"

namespace {

using namespace frontal;
using Json = io::Json;

enum Exit { ok = 0, usage = 1, computation = 2, validation = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string scene_path, germ, map, out, vars, at, domain;
  std::optional<double> tol;
  // normal forms
  std::string crease, theta, a = "1", b = "1";
  double halfwidth = 0.15;
  int stations = 129;
  // symmetry
  std::string expect, isometry;
  bool no_c2 = false;
  // match
  std::string f1, f2, domain2;
  // proper
  double r0 = 0.5;
  int levels = 8, grid = 4096;
  // meshes
  std::string what = "germ", split = "u";
  int rows = 65, cols = 9;
};

struct Report {
  std::string subcommand;
  Json inputs = Json::object();
  Json results = Json::object();
  std::vector<std::string> warnings;
  std::vector<std::pair<std::string, std::string>> files;  // name, content
  int exit = ok;

  void warn(std::string w) { warnings.push_back(std::move(w)); }
  void file(std::string name, std::string content) { files.emplace_back(std::move(name), std::move(content)); }
};

std::vector<double> numbers(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      if (cell.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(cell);
    } catch (const std::logic_error&) {
      throw UsageError(std::string(what) + ": not a number list: " + text);
    }
  }
  return out;
}

std::vector<std::string> names(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    cell.erase(0, cell.find_first_not_of(" \t"));
    cell.erase(cell.find_last_not_of(" \t") + 1);
    if (!cell.empty()) out.push_back(cell);
  }
  return out;
}

Scene scene_of(const Flags& f) { return f.scene_path.empty() ? Scene{} : load_scene(f.scene_path); }

double tol_of(const Flags& f, const Scene& s, const std::string& key, double fallback) {
  return f.tol ? *f.tol : s.tolerance(key, fallback);
}

std::optional<Rect> rect_flag(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto d = numbers(text, "--domain");
  if (d.size() != 4) throw UsageError("--domain takes ulo,uhi,vlo,vhi");
  return Rect{{d[0], d[1]}, {d[2], d[3]}};
}

SceneGerm germ_of(const Flags& f, const Scene& s) {
  SceneGerm g;
  if (!f.germ.empty() && !f.map.empty()) throw UsageError("--germ and --map are exclusive");
  if (!f.germ.empty()) {
    g = resolve_germ(s, f.germ);
  } else if (!f.map.empty()) {
    Vec2 base = Vec2::Zero();
    if (!f.at.empty()) {
      const auto p = numbers(f.at, "--at");
      if (p.size() != 2) throw UsageError("--at takes u,v for a germ");
      base = Vec2(p[0], p[1]);
    }
    g.germ = catalog::from_expressions("map", expr::split_components(f.map), {}, base);
  } else {
    throw UsageError("a germ is needed: --germ NAME or --map EXPRS");
  }
  if (const auto r = rect_flag(f.domain)) g.germ = g.germ.with_domain(*r);
  return g;
}

bool has_edge_flags(const Flags& f) { return !f.crease.empty() || !f.theta.empty(); }

EdgeNormalForm normal_form_of(const Flags& f, const Scene& s, Report& rep) {
  if (has_edge_flags(f)) {
    if (f.crease.empty() || f.theta.empty()) throw UsageError("--crease and --theta go together");
    const SpaceCurve c = resolve_curve(s, f.crease);
    return make_normal_form(c, expr::make_profile(f.theta), scalar_field(f.a), scalar_field(f.b), f.halfwidth,
                            f.stations);
  }
  const SceneGerm g = germ_of(f, s);
  if (g.normal_form) return *g.normal_form;
  const PointClass pc = classify_point(normal_field(g.germ), g.germ.base());
  if (pc != PointClass::cuspidal_edge && pc != PointClass::cuspidal_cross_cap)
    throw PreconditionError(std::string("base point is ") + point_class_name(pc) +
                            ", not a generalized cuspidal edge");
  rep.results["extracted_from"] = g.germ.name();
  return to_normal_form(g.germ, f.halfwidth, f.stations);
}

// ---- subcommands ----

void analyze(const Flags& f, Report& rep) {
  const Scene s = scene_of(f);
  const SceneGerm g = germ_of(f, s);
  const double tol = tol_of(f, s, "analyze", 1e-8);
  const NormalField field = normal_field(g.germ);
  const Vec2 p = g.germ.base();
  const PointClass pc = classify_point(field, p, tol);
  Json& r = rep.results;
  r["germ"] = g.germ.name();
  r["formula"] = g.germ.formula;
  r["base"] = io::to_json(p);
  r["point"] = io::to_json(g.germ(p));
  r["class"] = point_class_name(pc);
  r["normal"] = io::to_json(field.at_base());

  const SingularCurve sc = singular_curve(field, tol);
  Json curve = Json::object();
  curve["samples"] = sc.samples.size();
  curve["branches"] = sc.branches.size();
  std::size_t nondeg = 0, type2 = 0;
  for (const auto& smp : sc.samples) {
    nondeg += smp.nondegenerate;
    type2 += smp.type == 2;
  }
  curve["nondegenerate"] = nondeg;
  curve["type_two"] = type2;
  r["singular_curve"] = curve;

  io::Csv sing({"u", "v", "lambda_u", "lambda_v", "type"});
  for (const auto& smp : sc.samples)
    sing.row(std::vector<double>{smp.q.x(), smp.q.y(), smp.grad.x(), smp.grad.y(), double(smp.type)});
  rep.file("singular_curve.csv", sing.str());

  if (pc == PointClass::regular || pc == PointClass::corank_two) return;
  r["frame"] = io::to_json(distinguished_frame(field, p));
  if (pc == PointClass::cuspidal_edge || pc == PointClass::cuspidal_cross_cap) {
    r["kappa_nu"] = limiting_normal_curvature(field, p);
    try {
      const EdgeNormalForm nf = g.normal_form ? *g.normal_form : to_normal_form(g.germ, f.halfwidth, f.stations);
      const EdgeInvariants inv = edge_invariants(nf, 0.0);
      r["invariants"] = Json{{"theta", inv.theta}, {"kappa", inv.kappa}, {"kappa_s", inv.kappa_s},
                             {"kappa_nu", inv.kappa_nu}};
      rep.file("invariants.csv", io::edge_profile(nf).str());
    } catch (const Error& e) {
      rep.warn(std::string("invariants along the edge unavailable: ") + e.what());
    }
  }
}

void normalform(const Flags& f, Report& rep) {
  const Scene s = scene_of(f);
  const EdgeNormalForm nf = normal_form_of(f, s, rep);
  rep.results["normal_form"] = io::to_json(nf);
  rep.results["admissibility"] = io::to_json(admissible(nf));
  rep.results["cuspidal_edge_at_0"] = is_cuspidal_edge(nf, 0.0, tol_of(f, s, "normalform", 1e-8));
  rep.file("profile.csv", io::edge_profile(nf).str());
}

void isomers_cmd(const Flags& f, Report& rep) {
  const Scene s = scene_of(f);
  const double tol = tol_of(f, s, "isomers", 1e-6);
  const EdgeNormalForm nf = normal_form_of(f, s, rep);
  const IsomerSet set = isomers(nf);
  Json& r = rep.results;
  r["admissibility"] = io::to_json(admissible(nf));
  r["base"] = io::to_json(set.base);
  r["dual"] = io::to_json(set.dual);
  r["inverse"] = io::to_json(set.inverse);
  r["inverse_dual"] = io::to_json(set.inverse_dual);
  r["flagged"] = set.flagged;
  r["right_equivalence_classes"] = right_equivalence_classes(set, tol);
  const SymmetryPredicates pred = detect_predicates(nf, tol);
  const CongruenceCount cc = congruence_count(pred);
  r["predicates"] = io::to_json(pred);
  r["congruence"] = Json{{"bound", cc.bound}, {"exact", cc.exact}};
  rep.file("base.csv", io::edge_profile(set.base).str());
  rep.file("dual.csv", io::edge_profile(set.dual).str());
  rep.file("inverse.csv", io::edge_profile(set.inverse).str());
  rep.file("inverse_dual.csv", io::edge_profile(set.inverse_dual).str());
}

DevStrip strip_of(const Flags& f, const Scene& s, Report& rep) {
  return ist(normal_form_of(f, s, rep));
}

void check_into(const StripCheck& c, double ktol, const std::string& key, Report& rep) {
  rep.results[key] = io::to_json(c);
  for (const auto& w : c.warnings) rep.warn(key + ": " + w);
  if (!c.ok(ktol)) {
    rep.warn(key + ": strip fails the developability check");
    rep.exit = validation;
  }
}

void strip(const Flags& f, Report& rep) {
  const Scene s = scene_of(f);
  const double ktol = tol_of(f, s, "strip", 1e-6);
  const DevStrip st = strip_of(f, s, rep);
  check_into(check_strip(st), ktol, "check", rep);
  rep.results["halfwidth"] = st.halfwidth;
  rep.file("strip.csv", io::strip_profile(st).str());
  rep.file("strip.obj", io::obj({mesh(st, f.rows, f.cols, "strip")}));
}

SplitRule split_of(const Flags& f) {
  if (f.split == "u") return SplitRule::u_split;
  if (f.split == "v") return SplitRule::v_split;
  throw UsageError("--split takes u or v");
}

void fold(const Flags& f, Report& rep) {
  const Scene s = scene_of(f);
  const double ktol = tol_of(f, s, "fold", 1e-6);
  const CurvedFolding cf = curved_folding(strip_of(f, s, rep), split_of(f));
  rep.results["split"] = split_name(cf.split);
  check_into(check_strip(cf.strip), ktol, "strip_check", rep);
  check_into(check_strip(cf.dual), ktol, "dual_check", rep);
  rep.file("strip.csv", io::strip_profile(cf.strip).str());
  rep.file("dual.csv", io::strip_profile(cf.dual).str());
  rep.file("fold.obj", io::obj(fold_meshes(cf, f.rows, f.cols)));
}

void symmetry(const Flags& f, Report& rep) {
  const Scene s = scene_of(f);
  const SceneGerm g = germ_of(f, s);
  SymmetryOptions opt;
  opt.tol = tol_of(f, s, "symmetry", opt.tol);
  Json& r = rep.results;

  if (!f.isometry.empty()) {
    const auto m = numbers(f.isometry, "--isometry");
    if (m.size() != 12) throw UsageError("--isometry takes 12 numbers: Q row-major, then b");
    Mat3 Q;
    Q << m[0], m[1], m[2], m[3], m[4], m[5], m[6], m[7], m[8];
    const Isometry T{Q, Vec3(m[9], m[10], m[11])};
    const auto finding = test_isometry(g.germ, g.germ.base(), T, opt);
    r["mode"] = "isometry";
    r["finding"] = finding ? io::to_json(*finding) : Json();
    if (!finding) rep.warn("the given isometry is not a symmetry of the germ");
    return;
  }

  const SymmetryReport report = detect_symmetries(g.germ, opt);
  r["mode"] = "frame";
  r["report"] = io::to_json(report);
  std::vector<std::string> labels;
  for (const auto& x : report.findings) labels.push_back(x.case_name());
  r["labels"] = labels;
  for (const auto& v : report.violations) rep.warn("violation: " + v);
  bool valid = report.valid();

  if (!f.no_c2 && !report.findings.empty()) {
    const SelfIntersectionLocus locus = self_intersections(g.germ, g.germ.domain());
    r["self_intersections"] = io::to_json(locus);
    Json c2 = Json::array();
    for (const auto& x : report.findings) {
      const C2Report c = verify_c2(report, x, locus, g.germ);
      Json j = io::to_json(c);
      j["label"] = x.case_name();
      c2.push_back(j);
      if (c.applicable && !c.ok()) {
        rep.warn("case " + x.case_name() + " fails the self-intersection checks");
        valid = false;
      }
    }
    r["c2"] = c2;
    io::Csv pts({"u1", "v1", "u2", "v2", "x", "y", "z", "residual"});
    for (const auto& q : locus.pairs)
      pts.row(std::vector<double>{q.q.x(), q.q.y(), q.q2.x(), q.q2.y(), q.image.x(), q.image.y(), q.image.z(),
                                  q.residual});
    rep.file("self_intersections.csv", pts.str());
  }
  for (std::size_t i = 0; i < report.findings.size(); ++i)
    rep.file("psi_" + report.findings[i].case_name() + ".csv", io::psi_table(report.findings[i].psi).str());

  if (!f.expect.empty()) {
    auto want = names(f.expect);
    auto got = labels;
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    r["expected"] = want;
    if (want != got) {
      rep.warn("labels differ from --expect");
      valid = false;
    }
  }
  r["valid"] = valid;
  if (!valid) rep.exit = validation;
}

Lift lift_of(const std::string& text, const Flags& f, const Scene& s, const std::string& name,
             const std::string& domain) {
  if (text.empty()) throw UsageError("match needs --f1 and --f2");
  if (s.germs.count(text) || text.find(',') == std::string::npos) {
    SceneGerm g = resolve_germ(s, text);
    if (const auto r = rect_flag(domain)) g.germ = g.germ.with_domain(*r);
    return legendrian_lift(g.germ);
  }
  const auto comps = expr::split_components(text);
  const std::vector<std::string> vars = f.vars.empty() ? std::vector<std::string>{"t"} : names(f.vars);
  if (vars.size() == 1) {
    Interval dom{-0.5, 0.5};
    if (!domain.empty()) {
      const auto d = numbers(domain, "--domain");
      if (d.size() != 2) throw UsageError("a curve domain takes lo,hi");
      dom = {d[0], d[1]};
    }
    return curve_lift(expr::make_mapdef(name, vars, comps).compile(), dom, name);
  }
  if (vars != std::vector<std::string>{"u", "v"}) throw UsageError("--vars takes t or u,v");
  SurfaceGerm g = catalog::from_expressions(name, comps);
  if (const auto r = rect_flag(domain)) g = g.with_domain(*r);
  return legendrian_lift(g);
}

void match(const Flags& f, Report& rep) {
  const Scene s = scene_of(f);
  const double tol = tol_of(f, s, "match", 1e-6);
  const Lift l1 = lift_of(f.f1, f, s, "f1", f.domain);
  const Lift l2 = lift_of(f.f2, f, s, "f2", f.domain2.empty() ? f.domain : f.domain2);
  const ConnectingMap cm = connecting_map(l1, l2, tol);
  rep.results["connecting_map"] = io::to_json(cm);
  rep.file("psi.csv", io::psi_table(cm).str());
}

void proper(const Flags& f, Report& rep) {
  const Scene s = scene_of(f);
  Map m;
  std::vector<double> p;
  if (f.map == "spliced") {
    m = spliced_example();
  } else if (!f.map.empty()) {
    const std::vector<std::string> vars = f.vars.empty() ? std::vector<std::string>{"x"} : names(f.vars);
    m = expr::make_mapdef("map", vars, expr::split_components(f.map)).compile();
  } else if (!f.germ.empty()) {
    const SceneGerm g = resolve_germ(s, f.germ);
    m = g.germ.map();
    p = {g.germ.base().x(), g.germ.base().y()};
  } else {
    throw UsageError("proper needs --map EXPRS, --map spliced or --germ NAME");
  }
  if (!f.at.empty()) p = numbers(f.at, "--at");
  if (p.empty()) p.assign(m.in_dim(), 0.0);
  if (static_cast<int>(p.size()) != m.in_dim()) throw UsageError("--at has the wrong number of coordinates");
  const PropernessReport r = properness_probe(m, p, f.r0, f.levels, f.grid);
  rep.results["properness"] = io::to_json(r);
  rep.results["verdict"] = properness_name(r.verdict);
}

void export_cmd(const Flags& f, Report& rep) {
  const Scene s = scene_of(f);
  if (f.what == "germ") {
    const SceneGerm g = germ_of(f, s);
    const Rect d = g.germ.domain();
    const SurfaceGerm germ = g.germ;
    rep.file(germ.name() + ".obj",
             io::obj({mesh([germ](double u, double v) { return germ(u, v); }, d.u, d.v, f.rows, f.cols, germ.name())}));
  } else if (f.what == "strip") {
    rep.file("strip.obj", io::obj({mesh(strip_of(f, s, rep), f.rows, f.cols, "strip")}));
  } else if (f.what == "fold") {
    rep.file("fold.obj", io::obj(fold_meshes(curved_folding(strip_of(f, s, rep), split_of(f)), f.rows, f.cols)));
  } else {
    throw UsageError("--what takes germ, strip or fold");
  }
  Json files = Json::array();
  for (const auto& [name, content] : rep.files) files.push_back(name);
  rep.results["meshes"] = files;
}

std::string render(const Report& rep) {
  Json j;
  j["subcommand"] = rep.subcommand;
  j["inputs"] = rep.inputs;
  j["results"] = rep.results;
  j["warnings"] = rep.warnings;
  return j.dump(2) + "\n";
}

void echo_flags(const CLI::App& sub, Report& rep) {
  for (const CLI::Option* o : sub.get_options()) {
    if (o->count() == 0 || o->get_name() == "--help") continue;
    std::string key = o->get_name();
    key.erase(0, key.find_first_not_of('-'));
    const auto res = o->results();
    if (o->get_expected_max() == 0)
      rep.inputs[key] = true;
    else
      rep.inputs[key] = res.size() == 1 ? Json(res.front()) : Json(res);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Singular-surface analysis: cuspidal edges, isomers, developable strips, symmetries."};
  app.require_subcommand(1);
  Flags f;

  auto common = [&f](CLI::App* sub) {
    sub->add_option("--scene", f.scene_path, "JSON scene file");
    sub->add_option("--tol", f.tol, "tolerance (module default when omitted)");
    sub->add_option("--out", f.out, "directory for report and data files");
  };
  auto germ_opts = [&f](CLI::App* sub) {
    sub->add_option("--germ", f.germ, "scene or catalog germ name");
    sub->add_option("--map", f.map, "germ components in u, v, comma separated");
    sub->add_option("--at", f.at, "base point u,v");
    sub->add_option("--domain", f.domain, "ulo,uhi,vlo,vhi");
  };
  auto edge_opts = [&f, &germ_opts](CLI::App* sub) {
    germ_opts(sub);
    sub->add_option("--crease", f.crease, "scene curve or circle(r) / helix(a,b) / segment");
    sub->add_option("--theta", f.theta, "cuspidal angle as a function of u");
    sub->add_option("--a", f.a, "a(u,v)");
    sub->add_option("--b", f.b, "b(u,v)");
    sub->add_option("--halfwidth", f.halfwidth, "half width of sections and strips");
    sub->add_option("--stations", f.stations, "stations along the crease");
  };
  auto mesh_opts = [&f](CLI::App* sub) {
    sub->add_option("--rows", f.rows, "mesh rows");
    sub->add_option("--cols", f.cols, "mesh columns");
  };

  std::vector<std::pair<CLI::App*, void (*)(const Flags&, Report&)>> handlers;
  auto add = [&](const char* name, const char* help, void (*fn)(const Flags&, Report&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    common(sub);
    handlers.emplace_back(sub, fn);
    return sub;
  };

  CLI::App* a = add("analyze", "singular curve, point class, frame and edge invariants", analyze);
  germ_opts(a);
  a->add_option("--halfwidth", f.halfwidth);
  a->add_option("--stations", f.stations);
  edge_opts(add("normalform", "cuspidal edge normal form", normalform));
  edge_opts(add("isomers", "dual, inverse and inverse dual with congruence data", isomers_cmd));
  CLI::App* st = add("strip", "osculating developable strip", strip);
  edge_opts(st);
  mesh_opts(st);
  CLI::App* fo = add("fold", "curved folding from a strip and its dual", fold);
  edge_opts(fo);
  mesh_opts(fo);
  fo->add_option("--split", f.split, "u or v");
  CLI::App* sy = add("symmetry", "symmetries of a germ at its base point", symmetry);
  germ_opts(sy);
  sy->add_option("--expect", f.expect, "expected case labels, e.g. i,ii,iv");
  sy->add_option("--isometry", f.isometry, "test one isometry: 9 entries of Q row-major, then b");
  sy->add_flag("--no-c2", f.no_c2, "skip the self-intersection checks");
  CLI::App* ma = add("match", "connecting map psi with f1 = f2 o psi", match);
  ma->add_option("--f1", f.f1, "germ name or components")->required();
  ma->add_option("--f2", f.f2, "germ name or components")->required();
  ma->add_option("--vars", f.vars, "t for curves (default) or u,v");
  ma->add_option("--domain", f.domain, "domain of f1 (and f2 unless --domain2)");
  ma->add_option("--domain2", f.domain2, "domain of f2");
  CLI::App* pr = add("proper", "properness probe at a point", proper);
  pr->add_option("--map", f.map, "components, or spliced");
  pr->add_option("--germ", f.germ, "scene or catalog germ name");
  pr->add_option("--vars", f.vars, "variables (default x)");
  pr->add_option("--at", f.at, "point, comma separated");
  pr->add_option("--r0", f.r0, "initial radius");
  pr->add_option("--levels", f.levels, "zoom levels");
  pr->add_option("--grid", f.grid, "cells per level");
  CLI::App* ex = add("export", "OBJ meshes of a germ, strip or folding", export_cmd);
  edge_opts(ex);
  mesh_opts(ex);
  ex->add_option("--what", f.what, "germ, strip or fold");
  ex->add_option("--split", f.split, "u or v");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }

  Report rep;
  for (auto& [sub, fn] : handlers) {
    if (!sub->parsed()) continue;
    rep.subcommand = sub->get_name();
    echo_flags(*sub, rep);
    try {
      fn(f, rep);
    } catch (const UsageError& e) {
      std::cerr << "usage error: " << e.what() << "\n";
      return usage;
    } catch (const SceneError& e) {
      std::cerr << "scene error: " << e.what() << "\n";
      return usage;
    } catch (const expr::ParseError& e) {
      std::cerr << "expression error: " << e.what() << "\n";
      return usage;
    } catch (const expr::ResolveError& e) {
      std::cerr << "expression error: " << e.what() << "\n";
      return usage;
    } catch (const std::exception& e) {
      std::cerr << "computation failed: " << e.what() << "\n";
      return computation;
    }
  }

  const std::string text = render(rep);
  std::cout << text;
  std::string out = f.out;
  if (out.empty() && !f.scene_path.empty()) {
    try {
      out = load_scene(f.scene_path).out;
    } catch (const SceneError&) {
    }
  }
  if (!out.empty()) {
    try {
      std::filesystem::create_directories(out);
      io::write_file(out + "/" + rep.subcommand + ".json", text);
      for (const auto& [name, content] : rep.files) io::write_file(out + "/" + name, content);
    } catch (const std::exception& e) {
      std::cerr << "cannot write outputs: " << e.what() << "\n";
      return computation;
    }
  }
  return rep.exit;
}
