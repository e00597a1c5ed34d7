#include "frontal/catalog.hpp"

#include <cstdlib>

#include "frontal/exprlang.hpp"

namespace frontal::catalog {

namespace {

SurfaceGerm build(const std::string& name, const std::vector<std::string>& comps,
                  const std::vector<std::string>& normal, GermKind kind,
                  std::map<std::string, double> params = {}) {
  const Map f = expr::make_mapdef(name, {"u", "v"}, comps, params).compile();
  Map nu;
  if (!normal.empty()) nu = expr::make_mapdef(name + ".normal", {"u", "v"}, normal, params).compile();
  SurfaceGerm g(name, f, Rect{}, Vec2::Zero(), nu, kind);
  g.formula = comps;
  return g;
}

double parse_number(const std::string& s) {
  const Jet j = expr::evaluate(expr::parse(s), {}, 0);
  return j.value(0);
}

}  // namespace

SurfaceGerm cuspidal_edge() {
  return build("cuspidal_edge", {"v^2", "v^3", "u"},
               {"-3*v/sqrt(9*v^2+4)", "2/sqrt(9*v^2+4)", "0"}, GermKind::cuspidal_edge);
}

SurfaceGerm swallowtail() {
  return build("swallowtail", {"3*v^4+u*v^2", "4*v^3+2*u*v", "u"},
               {"1/sqrt(1+v^2+v^4)", "-v/sqrt(1+v^2+v^4)", "v^2/sqrt(1+v^2+v^4)"},
               GermKind::swallowtail);
}

SurfaceGerm cuspidal_cross_cap() {
  const std::string n = "sqrt(9*u^2*v^2+4+4*v^6)";
  return build("cuspidal_cross_cap", {"v^2", "u*v^3", "u"},
               {"-3*u*v/" + n, "2/" + n, "-2*v^3/" + n}, GermKind::cuspidal_cross_cap);
}

SurfaceGerm cross_cap() { return build("cross_cap", {"u*v", "v^2", "u"}, {}, GermKind::cross_cap); }

SurfaceGerm ccr_example() {
  const std::string n = "sqrt(4*(2*u+v^3)^2+9*u^2*v^2+4)";
  return build("ccr_example", {"u", "v^2", "u^2+u*v^3"},
               {"-2*(2*u+v^3)/" + n, "-3*u*v/" + n, "2/" + n}, GermKind::cuspidal_cross_cap);
}

SurfaceGerm sw_example(double b, double c) {
  return build("sw_example", {"u+v^2/2-b^2*u*v^2/2-b^2*v^4/8", "b*v^3/3+b*u*v", "c*u^2/2"}, {},
               GermKind::swallowtail, {{"b", b}, {"c", c}});
}

SurfaceGerm plane() { return build("plane", {"u", "v", "0"}, {"0", "0", "1"}, GermKind::generic); }

SurfaceGerm ms_edge(const std::string& a0, const std::string& b0, const std::string& b2,
                    const std::string& b3) {
  const std::vector<std::string> comps{
      "u", "(" + a0 + ")+v^2", "(" + b0 + ")*u^2+(" + b2 + ")*u*v^2+(" + b3 + ")*v^3"};
  return build("ms_edge", comps, {}, GermKind::cuspidal_edge);
}

SurfaceGerm from_expressions(const std::string& name, const std::vector<std::string>& components,
                             Rect domain, Vec2 base) {
  if (components.size() != 3) throw PreconditionError("germ '" + name + "' needs three components");
  const Map f = expr::make_mapdef(name, {"u", "v"}, components).compile();
  SurfaceGerm g(name, f, domain, base);
  g.formula = components;
  return g;
}

SurfaceGerm by_name(std::string_view text) {
  std::string s(text);
  std::string head = s, args;
  if (const auto open = s.find('('); open != std::string::npos) {
    if (s.back() != ')') throw PreconditionError("malformed germ name '" + s + "'");
    head = s.substr(0, open);
    args = s.substr(open + 1, s.size() - open - 2);
  }
  const std::vector<std::string> a = args.empty() ? std::vector<std::string>{} : expr::split_components(args);
  auto want = [&](std::size_t n) {
    if (a.size() != n)
      throw PreconditionError("germ '" + head + "' takes " + std::to_string(n) + " arguments");
  };
  if (head == "cuspidal_edge" || head == "f_C") { want(0); return cuspidal_edge(); }
  if (head == "swallowtail" || head == "f_S") { want(0); return swallowtail(); }
  if (head == "cuspidal_cross_cap" || head == "f_CW") { want(0); return cuspidal_cross_cap(); }
  if (head == "cross_cap" || head == "f_W") { want(0); return cross_cap(); }
  if (head == "ccr_example") { want(0); return ccr_example(); }
  if (head == "plane") { want(0); return plane(); }
  if (head == "sw_example") {
    if (a.empty()) return sw_example(1.0, 1.0);
    want(2);
    return sw_example(parse_number(a[0]), parse_number(a[1]));
  }
  if (head == "ms_edge") {
    want(4);
    return ms_edge(a[0], a[1], a[2], a[3]);
  }
  throw PreconditionError("unknown germ '" + s + "'; known: cuspidal_edge, swallowtail, cuspidal_cross_cap, "
                          "cross_cap, ccr_example, sw_example(b,c), ms_edge(a0,b0,b2,b3), plane");
}

std::vector<std::string> names() {
  return {"cuspidal_edge", "swallowtail", "cuspidal_cross_cap", "cross_cap", "ccr_example", "sw_example", "ms_edge", "plane"};
}

}  // namespace frontal::catalog
