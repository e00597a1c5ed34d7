#include "frontal/io.hpp"

#include <cstdio>
#include <fstream>

namespace frontal::io {

std::string format_number(double x, int digits) {
  if (x == 0.0) return "0";  // no negative zero in outputs
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

void Csv::row(const std::vector<double>& values) {
  std::string line;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) line += ',';
    line += format_number(values[i]);
  }
  rows_.push_back(std::move(line));
}

void Csv::row(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  rows_.push_back(std::move(line));
}

std::string Csv::str() const {
  std::string out;
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (i) out += ',';
    out += header_[i];
  }
  out += '\n';
  for (const auto& r : rows_) out += r + '\n';
  return out;
}

std::string obj(const std::vector<MeshGrid>& meshes) {
  std::string out = "# frontal-forge mesh\n";
  std::size_t base = 1;
  for (const auto& m : meshes) {
    out += "o " + (m.name.empty() ? std::string("mesh") : m.name) + '\n';
    for (const Vec3& p : m.vertices)
      out += "v " + format_number(p.x(), 9) + ' ' + format_number(p.y(), 9) + ' ' + format_number(p.z(), 9) + '\n';
    for (int i = 0; i + 1 < m.rows; ++i)
      for (int j = 0; j + 1 < m.cols; ++j) {
        const std::size_t a = base + static_cast<std::size_t>(i) * m.cols + j;
        const std::size_t b = a + m.cols;
        out += "f " + std::to_string(a) + ' ' + std::to_string(b) + ' ' + std::to_string(b + 1) + ' ' +
               std::to_string(a + 1) + '\n';
      }
    base += m.vertices.size();
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path);
  f << content;
  if (!f) throw Error("write failed for " + path);
}

// +0.0 folds negative zero so reports do not print "-0.0"
Json to_json(const Vec2& v) { return Json::array({v.x() + 0.0, v.y() + 0.0}); }
Json to_json(const Vec3& v) { return Json::array({v.x() + 0.0, v.y() + 0.0, v.z() + 0.0}); }

Json to_json(const Isometry& T) {
  const auto a = T.to_array();
  std::vector<double> out(a.begin(), a.end());
  for (double& x : out) x += 0.0;
  return Json(out);
}

Json to_json(const Plane& p) { return {{"anchor", to_json(p.anchor)}, {"normal", to_json(p.normal)}}; }
Json to_json(const Line& l) { return {{"anchor", to_json(l.anchor)}, {"direction", to_json(l.direction)}}; }

Json to_json(const FrameReport& f) {
  Json j{{"origin", to_json(f.frame.origin)},
         {"t", to_json(f.frame.t)},
         {"nu", to_json(f.frame.nu)},
         {"w", to_json(f.frame.w)},
         {"pi0", to_json(f.planes.pi0)},
         {"pi1", to_json(f.planes.pi1)},
         {"pi2", to_json(f.planes.pi2)},
         {"l1", to_json(f.planes.l1)},
         {"l2", to_json(f.planes.l2)},
         {"null_direction", to_json(f.null_dir)}};
  j["cuspidal_direction"] = f.cuspidal_direction ? to_json(*f.cuspidal_direction) : Json(nullptr);
  return j;
}

Json to_json(const EdgeNormalForm& nf) {
  Json crease = Json::array(), theta = Json::array(), u = Json::array();
  for (double s : nf.stations) {
    u.push_back(s);
    crease.push_back(to_json(nf.crease(s)));
    theta.push_back(nf.theta(s));
  }
  Json j{{"stations", u}, {"crease", crease}, {"theta", theta}, {"halfwidth", nf.halfwidth},
         {"has_a", static_cast<bool>(nf.a)}, {"has_b", static_cast<bool>(nf.b)}};
  if (!nf.w_grid.empty()) {
    j["w"] = nf.w_grid;
    j["a_grid"] = nf.a_grid;
    j["b_grid"] = nf.b_grid;
  } else if (nf.a && nf.b) {
    // values on the (station, w) lattice, w in [-halfwidth, halfwidth]
    const auto ws = linspace(-nf.halfwidth, nf.halfwidth, 9);
    Json ag = Json::array(), bg = Json::array();
    for (double s : nf.stations) {
      std::vector<double> ar, br;
      for (double w : ws) {
        ar.push_back(nf.a({s, w})[0]);
        br.push_back(nf.b({s, w})[0]);
      }
      ag.push_back(ar);
      bg.push_back(br);
    }
    j["w"] = ws;
    j["a_grid"] = ag;
    j["b_grid"] = bg;
  }
  return j;
}

Json to_json(const Admissibility& a) {
  return {{"admissible", a.admissible},
          {"strict", a.strict},
          {"max_abs_kappa_s", a.max_abs_kappa_s},
          {"min_kappa", a.min_kappa},
          {"min_abs_kappa_s", a.min_abs_kappa_s}};
}

Json to_json(const SymmetryPredicates& p) {
  return {{"planar", p.planar}, {"curve_symmetry", curve_symmetry_name(p.curve)},
          {"metric_symmetry", metric_symmetry_name(p.metric)}};
}

Json to_json(const StripCheck& c) {
  return {{"alpha_ok", c.alpha_ok},       {"beta_ok", c.beta_ok},   {"ruling_ok", c.ruling_ok},
          {"beta_residual", c.beta_residual}, {"max_abs_K", c.max_abs_K}, {"K_grid", {c.k_rows, c.k_cols}},
          {"width_ok", c.width_ok},       {"warnings", c.warnings}, {"ok", c.ok()}};
}

Json to_json(const ConnectingMap& cm, bool samples) {
  Json j{{"e", cm.e},
         {"image_residual", cm.image_residual},
         {"normal_residual", cm.normal_residual},
         {"max_difference_quotient", cm.max_difference_quotient},
         {"sample_count", cm.x.size()}};
  if (samples) {
    j["x"] = cm.x;
    j["psi"] = cm.psi;
    j["residual"] = cm.residual;
  }
  return j;
}

Json to_json(const PropernessReport& r) {
  return {{"center", r.center},
          {"radii", r.radii},
          {"thresholds", r.thresholds},
          {"counts", r.counts},
          {"exact_fraction", r.exact_fraction},
          {"grid", r.r0_grid},
          {"verdict", properness_name(r.verdict)},
          {"method", "heuristic: connected runs of near-preimage cells on shrinking balls"}};
}

Json to_json(const SymmetryFinding& f) {
  return {{"case", f.case_name()},
          {"label", label_name(f.label)},
          {"T", to_json(f.T)},
          {"residual", f.residual},
          {"T_involution", f.T_involution},
          {"T_moves_fp", f.T_fixes_fp},
          {"psi", to_json(f.psi, true)},
          {"psi_involution_error", f.psi_involution_error},
          {"f_psi_error", f.f_psi_error},
          {"psi_orientation_preserving", f.orientation_preserving},
          {"psi_reverses_singular_curve", f.reverses_singular_curve}};
}

Json to_json(const SymmetryReport& r) {
  Json findings = Json::array(), rejected = Json::array();
  for (const auto& f : r.findings) findings.push_back(to_json(f));
  for (const auto& c : r.rejected) rejected.push_back({{"case", label_case(c.label)}, {"distance", c.distance}});
  Json j{{"germ", r.germ},
         {"p", to_json(r.p)},
         {"point", point_class_name(r.point)},
         {"frame", to_json(r.frame)},
         {"findings", findings},
         {"cases", r.cases()},
         {"rejected", rejected},
         {"violations", r.violations},
         {"valid", r.valid()}};
  j["kappa_nu"] = r.kappa_nu ? Json(*r.kappa_nu) : Json(nullptr);
  return j;
}

Json to_json(const C2Report& c) {
  Json j{{"applicable", c.applicable},
         {"points", c.points},
         {"f_psi_ok", c.f_psi_ok},
         {"f_psi_error", c.f_psi_error},
         {"no_fixed_point_ok", c.no_fixed_point_ok},
         {"min_displacement", c.min_displacement},
         {"fixed_by_T_ok", c.fixed_by_T_ok},
         {"T_error", c.T_error},
         {"ok", c.ok()}};
  if (c.in_normal_plane_ok) {
    j["in_normal_plane_ok"] = *c.in_normal_plane_ok;
    j["normal_plane_error"] = c.normal_plane_error;
  }
  return j;
}

Json to_json(const SelfIntersectionLocus& l) {
  Json pairs = Json::array();
  for (const auto& s : l.pairs)
    pairs.push_back({{"q", to_json(s.q)}, {"q2", to_json(s.q2)}, {"image", to_json(s.image)}, {"residual", s.residual}});
  return {{"grid_step", l.grid_step}, {"pairs", pairs}};
}

Csv edge_profile(const EdgeNormalForm& nf) {
  Csv csv({"u", "theta", "kappa", "tau", "kappa_s", "kappa_nu"});
  for (double u : nf.stations) {
    const FrenetSample fr = frenet(nf.crease, u);
    const EdgeInvariants inv = edge_invariants(nf, u);
    csv.row({u, inv.theta, inv.kappa, fr.tau, inv.kappa_s, inv.kappa_nu});
  }
  return csv;
}

Csv strip_profile(const DevStrip& s) {
  Csv csv({"u", "alpha", "beta", "kappa", "tau"});
  for (double u : s.stations) {
    const FrenetSample fr = frenet(s.crease, u);
    csv.row({u, s.alpha(u), s.beta(u), fr.kappa, fr.tau});
  }
  return csv;
}

Csv psi_table(const ConnectingMap& cm) {
  Csv csv({"x1", "x2", "psi1", "psi2", "residual"});
  for (std::size_t i = 0; i < cm.x.size(); ++i) {
    if (cm.x[i].size() == 1)
      csv.row({format_number(cm.x[i][0]), "", format_number(cm.psi[i][0]), "", format_number(cm.residual[i])});
    else
      csv.row({cm.x[i][0], cm.x[i][1], cm.psi[i][0], cm.psi[i][1], cm.residual[i]});
  }
  return csv;
}

}  // namespace frontal::io
