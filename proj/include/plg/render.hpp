#pragma once

// SVG output for planar scenes.

#include "plg/invariants.hpp"

#include <string>

namespace plg {

/// Points where images of two different components meet (exact, sorted,
/// without repeats).
std::vector<Point> planar_crossings(const Scene& s);

/// One polyline per component, a circle at every inter-component crossing.
/// Throws std::invalid_argument unless ambient_dim == 2.
std::string render_svg(const Scene& s);

}  // namespace plg
