#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "frontal/germ.hpp"

namespace frontal::catalog {

SurfaceGerm cuspidal_edge();       // (v^2, v^3, u)
SurfaceGerm swallowtail();         // (3v^4 + uv^2, 4v^3 + 2uv, u)
SurfaceGerm cuspidal_cross_cap();  // (v^2, uv^3, u)
SurfaceGerm cross_cap();           // (uv, v^2, u)
SurfaceGerm ccr_example();         // (u, v^2, u^2 + uv^3)
SurfaceGerm sw_example(double b, double c);
SurfaceGerm plane();               // (u, v, 0)
/// (u, a0(u) + v^2, b0(u) u^2 + b2(u) u v^2 + b3(u,v) v^3)
SurfaceGerm ms_edge(const std::string& a0, const std::string& b0, const std::string& b2,
                    const std::string& b3);

/// A germ given by three component expressions in u, v.
SurfaceGerm from_expressions(const std::string& name, const std::vector<std::string>& components,
                             Rect domain = {}, Vec2 base = Vec2::Zero());

/// Resolve "swallowtail", "sw_example(1,1)", "ms_edge(u^2,1,u,1)", ...
SurfaceGerm by_name(std::string_view text);

std::vector<std::string> names();

}  // namespace frontal::catalog
