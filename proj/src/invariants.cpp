#include "plg/invariants.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <sstream>
#include <stdexcept>

namespace plg {

std::string to_string(Role r) {
  switch (r) {
    case Role::LinkComponent: return "link-component";
    case Role::OrnamentComponent: return "ornament-component";
    case Role::SpanningSurface: return "spanning-surface";
    case Role::NullHomotopy: return "null-homotopy";
    case Role::FamilyFace: return "family-face";
  }
  return "unknown";
}

Role parse_role(const std::string& s) {
  for (Role r : {Role::LinkComponent, Role::OrnamentComponent, Role::SpanningSurface, Role::NullHomotopy,
                 Role::FamilyFace})
    if (to_string(r) == s) return r;
  throw std::invalid_argument("unknown role '" + s + "'");
}

std::vector<MapRef> Scene::with_role(Role r) const {
  std::vector<MapRef> out;
  for (const auto& c : components)
    if (c.role == r) out.push_back(c.map);
  return out;
}

const Component* Scene::find(const std::string& name) const {
  for (const auto& c : components)
    if (c.name == name) return &c;
  return nullptr;
}

std::string Validation::describe() const {
  if (ok) return check + ": ok";
  std::ostringstream os;
  os << check << ": violation at " << where;
  for (const auto& p : points) os << " " << to_string(p);
  return os.str();
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void require_shape(const PLMap& m, int dim, int ambient, const std::string& what) {
  if (m.domain.dim != dim || m.ambient_dim != ambient)
    throw std::invalid_argument(what + ": expected a " + std::to_string(dim) + "-dimensional complex in R^" +
                                std::to_string(ambient) + ", got dimension " + std::to_string(m.domain.dim) +
                                " in R^" + std::to_string(m.ambient_dim));
}

void require_direction(const Point& v, int ambient, const std::string& what) {
  if (static_cast<int>(v.size()) != ambient) throw std::invalid_argument(what + " has the wrong dimension");
  if (std::all_of(v.begin(), v.end(), [](const Scalar& s) { return sgn(s) == 0; }))
    throw std::invalid_argument(what + " is zero");
}

bool positive_multiple(const Point& u, const Point& w) {
  // u = c w with c > 0
  Scalar c;
  bool have = false;
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (sgn(w[k]) == 0) {
      if (sgn(u[k]) != 0) return false;
      continue;
    }
    Scalar r = u[k] / w[k];
    if (have && r != c) return false;
    c = r;
    have = true;
  }
  return have && sgn(c) > 0;
}

Validation pair_empty(const MapRef& a, const MapRef& b, const std::string& check, const std::string& where,
                      const EngineOptions& opts) {
  CoincidenceProblem p;
  p.factors = {a, b};
  p.constraints = {Constraint::coincide(0, 1)};
  auto r = verify_empty(p, opts);
  Validation v;
  v.check = check;
  v.tuples_examined = r.tuples_examined;
  if (!r.empty) {
    v.ok = false;
    v.where = where;
    v.points = {r.points[0]};
  }
  return v;
}

std::string pair_name(int i, int j) { return "pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")"; }

void require_ok(const Validation& v) {
  if (!v.ok) throw ValidationError(v);
}

std::string cert(const Validation& v) {
  return v.check + ": certified (" + std::to_string(v.tuples_examined) + " tuples)";
}

void collect(InvariantReport& rep, SignedCountResult r) {
  rep.tuples_examined += r.tuples_examined;
  for (auto& w : r.witnesses) rep.witnesses.push_back(std::move(w));
}

Scalar squared_diameter(const std::array<MapRef, 3>& maps) {
  std::vector<const Point*> pts;
  for (const auto& m : maps)
    for (const auto& p : m->images) pts.push_back(&p);
  Scalar best = 0;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      Point d = *pts[a] - *pts[b];
      Scalar s = dot(d, d);
      if (s > best) best = s;
    }
  return best;
}

}  // namespace

bool point_on_image(const PLMap& m, const Point& p) {
  if (static_cast<int>(p.size()) != m.ambient_dim) throw std::invalid_argument("point has the wrong dimension");
  CoincidenceProblem prob;
  prob.factors = {share(m)};
  for (int c = 0; c < m.ambient_dim; ++c) prob.constraints.push_back(Constraint::pin(0, c, p[c]));
  return !verify_empty(prob).empty;
}

PLMap translation_prism(const PLMap& m, const Point& d) {
  if (static_cast<int>(d.size()) != m.ambient_dim) throw std::invalid_argument("displacement has the wrong dimension");
  Complex dom = product_triangulation(m.domain, path_complex(2));
  std::vector<Point> images(static_cast<std::size_t>(dom.vertex_count));
  for (int v = 0; v < m.domain.vertex_count; ++v)
    for (int t = 0; t < 2; ++t) {
      Point p = t ? m.images[v] + d : m.images[v];
      p.emplace_back(t);
      images[static_cast<std::size_t>(v) * 2 + t] = std::move(p);
    }
  return make_map(std::move(dom), std::move(images));
}

Validation validate_link_map(const std::vector<MapRef>& comps, const EngineOptions& opts) {
  Validation total;
  total.check = "link-map";
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (std::size_t j = i + 1; j < comps.size(); ++j) {
      if (comps[i]->ambient_dim != comps[j]->ambient_dim)
        throw std::invalid_argument("components live in different ambient dimensions");
      auto v = pair_empty(comps[i], comps[j], "link-map", pair_name(static_cast<int>(i), static_cast<int>(j)), opts);
      total.tuples_examined += v.tuples_examined;
      if (!v.ok) {
        v.tuples_examined = total.tuples_examined;
        return v;
      }
    }
  return total;
}

Validation validate_ornament(const std::array<MapRef, 3>& comps, const EngineOptions& opts) {
  CoincidenceProblem p;
  p.factors = {comps[0], comps[1], comps[2]};
  p.constraints = {Constraint::coincide(0, 1), Constraint::coincide(1, 2)};
  auto r = verify_empty(p, opts);
  Validation v;
  v.check = "ornament";
  v.tuples_examined = r.tuples_examined;
  if (!r.empty) {
    v.ok = false;
    v.where = "triple point";
    v.points = {r.points[0]};
  }
  return v;
}

Validation validate_pm_ne_0(const MapRef& plus, const MapRef& minus, const MapRef& zero, const EngineOptions& opts) {
  auto a = pair_empty(plus, zero, "pm-ne-0", "pair (+,0)", opts);
  if (!a.ok) return a;
  auto b = pair_empty(minus, zero, "pm-ne-0", "pair (-,0)", opts);
  b.tuples_examined += a.tuples_examined;
  return b;
}

InvariantReport linking_number(const MapRef& c1, const MapRef& c2, const Point& v, const EngineOptions& opts) {
  auto t0 = Clock::now();
  require_shape(*c1, 1, 3, "linking_number component 1");
  require_shape(*c2, 1, 3, "linking_number component 2");
  require_direction(v, 3, "projection direction");
  auto lm = validate_link_map({c1, c2}, opts);
  require_ok(lm);

  CoincidenceProblem p;
  p.factors = {c1, c2};
  p.aux = {AuxBound::positive()};
  p.constraints = {Constraint::ray_diff(1, 0, v, 0)};
  auto r = signed_count(p, opts);

  InvariantReport rep;
  rep.invariant = "lk";
  rep.value = kLinkingSign * r.total;
  rep.certificates = {cert(lm)};
  rep.directions = {v};
  collect(rep, std::move(r));
  rep.timing_ms = ms_since(t0);
  return rep;
}

std::array<Point, 3> default_displacements(const std::array<MapRef, 3>& doodle, int variant) {
  // integer M with M^2 > 4 diam^2; the base vectors are pairwise at distance >= 1
  Scalar need = 4 * squared_diameter(doodle);
  long m = 1;
  while (Scalar(m * m) <= need) m *= 2;
  static const long base[4][3][2] = {
      {{1, 0}, {-1, 1}, {0, -1}},
      {{2, 1}, {-1, 2}, {-1, -2}},
      {{-1, 0}, {1, 1}, {1, -2}},
      {{0, 1}, {-2, -1}, {2, -1}},
  };
  const auto& b = base[((variant % 4) + 4) % 4];
  std::array<Point, 3> d;
  for (int i = 0; i < 3; ++i) d[i] = Point{Scalar(m * b[i][0]), Scalar(m * b[i][1])};
  return d;
}

InvariantReport doodle_mu_breve_homotopy(const std::array<MapRef, 3>& doodle, const std::array<Point, 3>& d,
                                         const EngineOptions& opts) {
  auto t0 = Clock::now();
  for (int i = 0; i < 3; ++i) {
    require_shape(*doodle[i], 1, 2, "doodle component " + std::to_string(i + 1));
    if (d[i].size() != 2) throw std::invalid_argument("displacement has the wrong dimension");
  }
  Scalar diam2 = squared_diameter(doodle);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      Point diff = d[i] - d[j];
      if (dot(diff, diff) <= 4 * diam2)
        throw std::invalid_argument("displacements too close: the time-1 configuration is not certified split");
    }
  auto orn = validate_ornament(doodle, opts);
  require_ok(orn);

  CoincidenceProblem p;
  for (int i = 0; i < 3; ++i) p.factors.push_back(share(translation_prism(*doodle[i], d[i])));
  p.constraints = {Constraint::coincide(0, 1), Constraint::coincide(1, 2)};
  auto r = signed_count(p, opts);

  InvariantReport rep;
  rep.invariant = "mu-breve";
  rep.value = kDoodleHomotopySign * r.total;
  rep.certificates = {cert(orn), "algorithm: homotopy"};
  rep.directions = {d[0], d[1], d[2]};
  collect(rep, std::move(r));
  rep.timing_ms = ms_since(t0);
  return rep;
}

InvariantReport doodle_mu_breve_degree(const std::array<MapRef, 3>& doodle, const std::array<Point, 3>& w,
                                       const EngineOptions& opts) {
  auto t0 = Clock::now();
  for (int i = 0; i < 3; ++i) {
    require_shape(*doodle[i], 1, 2, "doodle component " + std::to_string(i + 1));
    if (w[i].size() != 2) throw std::invalid_argument("configuration direction has the wrong dimension");
  }
  if (w[0] + w[1] + w[2] != zero_point(2)) throw std::invalid_argument("configuration direction must sum to zero");
  require_direction(w[0] - w[1], 2, "w1 - w2");
  require_direction(w[1] - w[2], 2, "w2 - w3");
  auto orn = validate_ornament(doodle, opts);
  require_ok(orn);

  CoincidenceProblem p;
  p.factors = {doodle[0], doodle[1], doodle[2]};
  p.aux = {AuxBound::positive()};
  p.constraints = {Constraint::ray_diff(0, 1, w[0] - w[1], 0), Constraint::ray_diff(1, 2, w[1] - w[2], 0)};
  auto r = signed_count(p, opts);

  InvariantReport rep;
  rep.invariant = "mu-breve";
  rep.value = kDoodleDegreeSign * r.total;
  rep.certificates = {cert(orn), "algorithm: degree"};
  rep.directions = {w[0], w[1], w[2]};
  collect(rep, std::move(r));
  rep.timing_ms = ms_since(t0);
  return rep;
}

bool boundary_matches(const PLMap& surface, const PLMap& curve) {
  if (surface.domain.dim != curve.domain.dim + 1) return false;
  auto edges = [](const PLMap& m, const std::vector<Cell>& cells) {
    std::vector<std::vector<Point>> out;
    for (const auto& c : cells) {
      std::vector<Point> e;
      for (int v : c) e.push_back(m.images[v]);
      out.push_back(std::move(e));
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  return edges(surface, boundary(surface.domain).cells) == edges(curve, curve.domain.cells);
}

InvariantReport milnor_mu(const std::array<MapRef, 3>& curves, const std::array<MapRef, 3>& surfaces,
                          const EngineOptions& opts) {
  auto t0 = Clock::now();
  InvariantReport rep;
  rep.invariant = "mu";
  for (int i = 0; i < 3; ++i) {
    require_shape(*curves[i], 1, 3, "link component " + std::to_string(i + 1));
    require_shape(*surfaces[i], 2, 3, "spanning surface " + std::to_string(i + 1));
    if (!boundary_matches(*surfaces[i], *curves[i])) {
      Validation v;
      v.ok = false;
      v.check = "spanning-boundary";
      v.where = "surface " + std::to_string(i + 1);
      throw ValidationError(v);
    }
  }
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3;
    auto v = pair_empty(surfaces[i], curves[j], "123-condition",
                        "surface " + std::to_string(i + 1) + " vs curve " + std::to_string(j + 1), opts);
    require_ok(v);
    rep.certificates.push_back(cert(v));
  }
  CoincidenceProblem p;
  p.factors = {surfaces[0], surfaces[1], surfaces[2]};
  p.constraints = {Constraint::coincide(0, 1), Constraint::coincide(1, 2)};
  auto r = signed_count(p, opts);
  rep.value = kMilnorSign * r.total;
  collect(rep, std::move(r));
  rep.timing_ms = ms_since(t0);
  return rep;
}

namespace {

void check_family_shape(const HexFamily& h) {
  if (h.faces.size() != 6) throw std::invalid_argument("hexagonal family needs six faces");
  bool seen[3][2] = {};
  for (const auto& f : h.faces) {
    if (f.k < 0 || f.k > 2 || (f.value != 0 && f.value != 1)) throw std::invalid_argument("bad face label");
    if (seen[f.k][f.value]) throw std::invalid_argument("duplicate face");
    seen[f.k][f.value] = true;
    for (const auto& m : f.maps) require_shape(*m, 3, 5, "family face map");
  }
}

// image coordinate holding cube parameter `t` on face with fixed index k
int chart_coord(int k, int t) {
  int pos = 0;
  for (int a = 0; a < 3; ++a) {
    if (a == k) continue;
    if (a == t) return 3 + pos;
    ++pos;
  }
  throw std::logic_error("parameter is fixed on this face");
}

std::string face_name(const HexFace& f) {
  return "face t" + std::to_string(f.k + 1) + "=" + std::to_string(f.value);
}

}  // namespace

Validation verify_hexagonal(const HexFamily& h, const EngineOptions& opts) {
  check_family_shape(h);
  Validation total;
  total.check = "hexagonal";
  auto fail = [&](Validation v) {
    v.tuples_examined += total.tuples_examined;
    return v;
  };
  std::vector<const HexFace*> order;
  for (const auto& f : h.faces) order.push_back(&f);
  std::sort(order.begin(), order.end(),
            [](const HexFace* a, const HexFace* b) { return std::pair(a->k, a->value) < std::pair(b->k, b->value); });
  for (const HexFace* f : order) {
    int i = (f->k + 1) % 3, j = (f->k + 2) % 3;
    if (i > j) std::swap(i, j);
    auto v = pair_empty(f->maps[i], f->maps[j], "hexagonal", face_name(*f) + " " + pair_name(i, j), opts);
    if (!v.ok) return fail(v);
    total.tuples_examined += v.tuples_examined;
  }
  // edges t_i = t_j = c: the pair (i, j) is checked on face t_i = c
  for (const HexFace* f : order) {
    for (int j = f->k + 1; j < 3; ++j) {
      int i = f->k;
      CoincidenceProblem p;
      p.factors = {f->maps[i], f->maps[j]};
      p.constraints = {Constraint::coincide(0, 1), Constraint::pin(0, chart_coord(i, j), f->value)};
      auto r = verify_empty(p, opts);
      total.tuples_examined += r.tuples_examined;
      if (!r.empty) {
        Validation v;
        v.ok = false;
        v.check = "hexagonal";
        v.where = "edge t" + std::to_string(i + 1) + "=t" + std::to_string(j + 1) + "=" + std::to_string(f->value) +
                  " " + pair_name(i, j);
        v.points = {r.points[0]};
        return v;
      }
    }
  }
  return total;
}

namespace {

using ChartTriangle = std::array<Point, 3>;  // sorted chart vertices

Scalar twice_area(const ChartTriangle& t) {
  Point u = t[1] - t[0], v = t[2] - t[0];
  return abs(Scalar(u[0] * v[1] - u[1] * v[0]));
}

// Interiors are disjoint iff some edge line weakly separates the triangles.
bool interiors_disjoint(const ChartTriangle& a, const ChartTriangle& b) {
  for (const ChartTriangle* t : {&a, &b})
    for (int e = 0; e < 3; ++e) {
      const Point &p = (*t)[e], &q = (*t)[(e + 1) % 3];
      auto side = [&](const Point& x) -> Scalar { return (q[0] - p[0]) * (x[1] - p[1]) - (q[1] - p[1]) * (x[0] - p[0]); };
      Scalar amin = side(a[0]), amax = amin, bmin = side(b[0]), bmax = bmin;
      for (int k = 1; k < 3; ++k) {
        amin = std::min(amin, side(a[k]));
        amax = std::max(amax, side(a[k]));
        bmin = std::min(bmin, side(b[k]));
        bmax = std::max(bmax, side(b[k]));
      }
      if (amax <= bmin || bmax <= amin) return true;
    }
  return false;
}

// Cells of a face map grouped by the chart triangle they lie over, or empty
// when the chart images do not tile the unit square by triangles.
std::map<ChartTriangle, std::vector<int>> chart_cells(const PLMap& m) {
  std::map<ChartTriangle, std::vector<int>> out;
  const std::size_t n = static_cast<std::size_t>(m.ambient_dim);
  for (std::size_t c = 0; c < m.domain.cells.size(); ++c) {
    std::vector<Point> pts;
    for (int v : m.domain.cells[c]) pts.push_back({m.images[v][n - 2], m.images[v][n - 1]});
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() != 3) return {};
    ChartTriangle t{pts[0], pts[1], pts[2]};
    if (sgn(twice_area(t)) == 0) return {};
    for (const auto& p : t)
      for (const auto& x : p)
        if (x < 0 || x > 1) return {};
    out[t].push_back(static_cast<int>(c));
  }
  Scalar area = 0;
  for (auto a = out.begin(); a != out.end(); ++a) {
    area += twice_area(a->first);
    for (auto b = std::next(a); b != out.end(); ++b)
      if (!interiors_disjoint(a->first, b->first)) return {};
  }
  if (area != 2) return {};
  return out;
}

PLMap restrict_cells(const PLMap& m, const std::vector<int>& cells) {
  PLMap r;
  r.domain.vertex_count = m.domain.vertex_count;
  r.domain.dim = m.domain.dim;
  r.domain.kind = ComplexKind::General;
  for (int c : cells) r.domain.cells.push_back(m.domain.cells[c]);
  r.ambient_dim = m.ambient_dim;
  r.images = m.images;
  return r;
}

// Signed count of one face. When the three chart images tile the square by
// the same triangles, an interior solution has its chart point inside one
// triangle for all factors, and a boundary solution lies over a closed
// triangle shared by all three, so the problem splits per triangle.
SignedCountResult face_count(const HexFace& f, const CoincidenceProblem& whole, const EngineOptions& opts) {
  std::array<std::map<ChartTriangle, std::vector<int>>, 3> parts;
  for (int i = 0; i < 3; ++i) parts[i] = chart_cells(*f.maps[i]);
  bool split = !parts[0].empty();
  for (int i = 1; i < 3 && split; ++i) {
    if (parts[i].size() != parts[0].size()) split = false;
    for (auto a = parts[0].begin(), b = parts[i].begin(); split && a != parts[0].end(); ++a, ++b)
      if (a->first != b->first) split = false;
  }
  if (!split) return signed_count(whole, opts);

  SignedCountResult total;
  std::optional<DegeneracyError> first;
  for (const auto& [tri, cells0] : parts[0]) {
    CoincidenceProblem p = whole;
    std::array<const std::vector<int>*, 3> sel{&cells0, &parts[1].at(tri), &parts[2].at(tri)};
    for (int i = 0; i < 3; ++i) p.factors[i] = share(restrict_cells(*f.maps[i], *sel[i]));
    SignedCountResult r;
    try {
      r = signed_count(p, opts);
    } catch (const DegeneracyError& e) {
      // report the lexicographically first offending tuple in face numbering
      DegeneracyReport rep = e.report();
      for (int i = 0; i < 3 && i < static_cast<int>(rep.cells.size()); ++i) rep.cells[i] = (*sel[i])[rep.cells[i]];
      if (!first || rep.cells < first->report().cells) first.emplace(rep);
      continue;
    }
    total.total += r.total;
    total.tuples_examined += r.tuples_examined;
    for (auto& w : r.witnesses) {
      for (int i = 0; i < 3; ++i) w.cells[i] = (*sel[i])[w.cells[i]];
      total.witnesses.push_back(std::move(w));
    }
  }
  if (first) throw *first;
  std::sort(total.witnesses.begin(), total.witnesses.end());
  return total;
}

}  // namespace

InvariantReport mu_star(const HexFamily& h, const std::array<Point, 3>& w, const EngineOptions& opts) {
  auto t0 = Clock::now();
  for (const auto& x : w)
    if (x.size() != 3) throw std::invalid_argument("configuration direction has the wrong dimension");
  if (w[0] + w[1] + w[2] != zero_point(3)) throw std::invalid_argument("configuration direction must sum to zero");
  require_direction(w[0] - w[1], 3, "w1 - w2");
  require_direction(w[1] - w[2], 3, "w2 - w3");
  auto hex = verify_hexagonal(h, opts);
  require_ok(hex);

  InvariantReport rep;
  rep.invariant = "mu-star";
  rep.certificates = {cert(hex)};
  rep.directions = {w[0], w[1], w[2]};
  long total = 0;
  for (const auto& f : h.faces) {
    CoincidenceProblem p;
    p.factors = {f.maps[0], f.maps[1], f.maps[2]};
    p.aux = {AuxBound::positive()};
    p.constraints = {Constraint::ray_diff(0, 1, w[0] - w[1], 0, {0, 1, 2}),
                     Constraint::ray_diff(1, 2, w[1] - w[2], 0, {0, 1, 2}), Constraint::coincide(0, 1, {3, 4}),
                     Constraint::coincide(1, 2, {3, 4})};
    auto r = face_count(f, p, opts);
    total += f.sign * r.total;
    collect(rep, std::move(r));
  }
  rep.value = kMuStarSign * total;
  rep.timing_ms = ms_since(t0);
  return rep;
}

namespace {

void require_sphere_triple(const MapRef& a, const MapRef& b, const MapRef& c) {
  require_shape(*a, 2, 4, "component +");
  require_shape(*b, 2, 4, "component -");
  require_shape(*c, 2, 4, "component 0");
}

void require_apex_off(const Point& apex, const std::vector<MapRef>& maps) {
  if (apex.size() != 4) throw std::invalid_argument("apex has the wrong dimension");
  for (std::size_t k = 0; k < maps.size(); ++k)
    if (point_on_image(*maps[k], apex)) {
      Validation v;
      v.ok = false;
      v.check = "apex";
      v.where = "apex on the image of component " + std::to_string(k + 1);
      v.points = {apex};
      throw ValidationError(v);
    }
}

}  // namespace

InvariantReport beta_hat_rays(const MapRef& plus, const MapRef& minus, const MapRef& zero, const Point& u,
                              const Point& w, const EngineOptions& opts) {
  auto t0 = Clock::now();
  require_sphere_triple(plus, minus, zero);
  require_direction(u, 4, "u");
  require_direction(w, 4, "w");
  if (positive_multiple(u, w)) throw std::invalid_argument("u is a positive multiple of w");
  auto pm = validate_pm_ne_0(plus, minus, zero, opts);
  require_ok(pm);

  CoincidenceProblem p;
  p.factors = {plus, minus, zero};
  p.aux = {AuxBound::positive(), AuxBound::positive()};
  p.constraints = {Constraint::ray_diff(0, 2, u, 0), Constraint::ray_diff(1, 2, w, 1)};
  auto r = signed_count(p, opts);

  InvariantReport rep;
  rep.invariant = "beta-hat";
  rep.value = r.total;
  rep.certificates = {cert(pm), "algorithm: rays"};
  rep.directions = {u, w};
  collect(rep, std::move(r));
  rep.timing_ms = ms_since(t0);
  return rep;
}

InvariantReport beta_hat_homotopy(const MapRef& plus, const MapRef& minus, const MapRef& zero,
                                  const Point& apex_plus, const Point& apex_minus, const EngineOptions& opts) {
  auto t0 = Clock::now();
  require_sphere_triple(plus, minus, zero);
  auto pm = validate_pm_ne_0(plus, minus, zero, opts);
  require_ok(pm);
  require_apex_off(apex_plus, {plus, minus, zero});
  require_apex_off(apex_minus, {plus, minus, zero});

  CoincidenceProblem p;
  p.factors = {share(cone(*plus, apex_plus)), share(cone(*minus, apex_minus)), zero};
  p.constraints = {Constraint::coincide(0, 1), Constraint::coincide(1, 2)};
  auto r = signed_count(p, opts);

  InvariantReport rep;
  rep.invariant = "beta-hat";
  rep.value = r.total;
  rep.certificates = {cert(pm), "algorithm: homotopy"};
  rep.apexes = {apex_plus, apex_minus};
  collect(rep, std::move(r));
  rep.timing_ms = ms_since(t0);
  return rep;
}

InvariantReport beta_parity(const MapRef& g_star, const MapRef& g_zero, const Point& apex, const EngineOptions& opts) {
  auto t0 = Clock::now();
  require_shape(*g_star, 2, 4, "component *");
  require_shape(*g_zero, 2, 4, "component 0");
  auto lm = validate_link_map({g_star, g_zero}, opts);
  require_ok(lm);
  require_apex_off(apex, {g_star, g_zero});

  auto h = share(cone(*g_star, apex));
  CoincidenceProblem p;
  p.factors = {h, h, g_zero};
  p.constraints = {Constraint::coincide(0, 1), Constraint::coincide(0, 2)};
  p.self_pairs = {{0, 1}};
  auto r = signed_count(p, opts);

  InvariantReport rep;
  rep.invariant = "beta";
  rep.is_parity = true;
  rep.value = static_cast<long>((r.witnesses.size() / 2) % 2);
  rep.certificates = {cert(lm), "ordered double points: " + std::to_string(r.witnesses.size())};
  rep.apexes = {apex};
  collect(rep, std::move(r));
  rep.timing_ms = ms_since(t0);
  return rep;
}

InvariantReport beta_star(const MapRef& g_star, const MapRef& g_zero, const Point& u, const Point& w,
                          const EngineOptions& opts) {
  auto t0 = Clock::now();
  require_shape(*g_star, 2, 4, "component *");
  require_shape(*g_zero, 2, 4, "component 0");
  require_direction(u, 4, "u");
  require_direction(w, 4, "w");
  if (positive_multiple(u, w)) throw std::invalid_argument("u is a positive multiple of w");
  auto lm = validate_link_map({g_star, g_zero}, opts);
  require_ok(lm);

  CoincidenceProblem p;
  p.factors = {g_star, g_zero, g_zero};
  p.aux = {AuxBound::positive(), AuxBound::positive()};
  p.constraints = {Constraint::ray_diff(1, 0, u, 0), Constraint::ray_diff(2, 0, w, 1)};
  auto r = signed_count(p, opts);

  InvariantReport rep;
  rep.invariant = "beta-star";
  rep.is_parity = true;
  rep.value = static_cast<long>(r.witnesses.size() % 2);
  rep.certificates = {cert(lm)};
  rep.directions = {u, w};
  collect(rep, std::move(r));
  rep.timing_ms = ms_since(t0);
  return rep;
}

}  // namespace plg
