#include "plg/render.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

namespace plg {

namespace {

using Seg = std::array<Point, 2>;

Scalar cross(const Point& a, const Point& b) { return a[0] * b[1] - a[1] * b[0]; }

std::vector<Seg> segments(const PLMap& m) {
  std::vector<Seg> out;
  for (const auto& c : m.domain.cells) {
    if (c.size() == 1) continue;
    for (std::size_t a = 0; a < c.size(); ++a)
      for (std::size_t b = a + 1; b < c.size(); ++b) out.push_back({m.images[c[a]], m.images[c[b]]});
  }
  return out;
}

bool on_segment(const Point& p, const Seg& s) {
  if (cross(s[1] - s[0], p - s[0]) != 0) return false;
  return dot(p - s[0], p - s[1]) <= 0;
}

// Intersection of two closed segments; collinear overlaps contribute their
// endpoints.
void intersect(const Seg& s, const Seg& t, std::set<Point>& out) {
  Point r = s[1] - s[0], q = t[1] - t[0];
  Scalar den = cross(r, q);
  if (den == 0) {
    for (const auto& p : {s[0], s[1]})
      if (on_segment(p, t)) out.insert(p);
    for (const auto& p : {t[0], t[1]})
      if (on_segment(p, s)) out.insert(p);
    return;
  }
  Point w = t[0] - s[0];
  Scalar a = cross(w, q) / den, b = cross(w, r) / den;
  if (a >= 0 && a <= 1 && b >= 0 && b <= 1) out.insert(s[0] + a * r);
}

// Vertex order of a single oriented cycle, or empty if m is not one.
std::vector<int> cycle_order(const PLMap& m) {
  if (m.domain.dim != 1 || m.domain.cells.empty()) return {};
  std::map<int, int> next;
  for (const auto& c : m.domain.cells)
    if (!next.emplace(c[0], c[1]).second) return {};
  std::vector<int> order{m.domain.cells[0][0]};
  while (true) {
    auto it = next.find(order.back());
    if (it == next.end()) return {};
    if (it->second == order.front()) break;
    order.push_back(it->second);
    if (order.size() > next.size()) return {};
  }
  return order.size() == next.size() ? order : std::vector<int>{};
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  std::string s = buf;
  return s == "-0.000" ? "0.000" : s;
}

}  // namespace

std::vector<Point> planar_crossings(const Scene& s) {
  if (s.ambient_dim != 2) throw std::invalid_argument("crossings need a planar scene");
  std::vector<std::vector<Seg>> segs;
  for (const auto& c : s.components) segs.push_back(segments(*c.map));
  std::set<Point> pts;
  for (std::size_t i = 0; i < segs.size(); ++i)
    for (std::size_t j = i + 1; j < segs.size(); ++j)
      for (const auto& a : segs[i])
        for (const auto& b : segs[j]) intersect(a, b, pts);
  return {pts.begin(), pts.end()};
}

std::string render_svg(const Scene& s) {
  if (s.ambient_dim != 2)
    throw std::invalid_argument("render needs ambient_dim 2, scene has " + std::to_string(s.ambient_dim));
  static const char* colours[3] = {"#d62728", "#2ca02c", "#1f77b4"};

  double lo[2] = {0, 0}, hi[2] = {1, 1};
  bool first = true;
  for (const auto& c : s.components)
    for (const auto& p : c.map->images)
      for (int k = 0; k < 2; ++k) {
        double x = p[k].get_d();
        if (first || x < lo[k]) lo[k] = x;
        if (first || x > hi[k]) hi[k] = x;
        if (k == 1) first = false;
      }
  const double span = std::max({hi[0] - lo[0], hi[1] - lo[1], 1e-9});
  const double size = 400, margin = 20, scale = (size - 2 * margin) / span;
  auto X = [&](const Scalar& x) { return num(margin + (x.get_d() - lo[0]) * scale); };
  auto Y = [&](const Scalar& y) { return num(size - margin - (y.get_d() - lo[1]) * scale); };

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" viewBox=\"0 0 400 400\">\n";
  out += "<rect width=\"400\" height=\"400\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < s.components.size(); ++i) {
    const auto& m = *s.components[i].map;
    out += "<g id=\"" + s.components[i].name + "\" stroke=\"" + colours[i % 3] +
           "\" stroke-width=\"2\" fill=\"none\">\n";
    auto order = cycle_order(m);
    if (!order.empty()) {
      out += "<polygon points=\"";
      for (std::size_t k = 0; k < order.size(); ++k)
        out += (k ? " " : "") + X(m.images[order[k]][0]) + "," + Y(m.images[order[k]][1]);
      out += "\"/>\n</g>\n";
      continue;
    }
    for (const auto& seg : segments(m))
      out += "<line x1=\"" + X(seg[0][0]) + "\" y1=\"" + Y(seg[0][1]) + "\" x2=\"" + X(seg[1][0]) + "\" y2=\"" +
             Y(seg[1][1]) + "\"/>\n";
    out += "</g>\n";
  }
  auto crossings = planar_crossings(s);
  out += "<g id=\"crossings\" fill=\"black\">\n";
  for (const auto& p : crossings) out += "<circle class=\"crossing\" cx=\"" + X(p[0]) + "\" cy=\"" + Y(p[1]) + "\" r=\"4\"/>\n";
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace plg
