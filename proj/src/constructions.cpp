#include "plg/constructions.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace plg {

namespace {

Point P(std::initializer_list<Scalar> xs) { return Point(xs); }

// (x,y,z) -> (z,x,y) carries ring 1 to ring 2 and ring 2 to ring 3
Point cyc(const Point& p) { return Point{p[2], p[0], p[1]}; }

void check_ab(const Scalar& a, const Scalar& b) {
  if (!(a > b && b > 0)) throw ConstructionError(ConstructionError::Kind::BadParams, "need a > b > 0");
}

std::array<PLMap, 3> rings(const Scalar& a, const Scalar& b) {
  std::vector<Point> r1{P({a, 0, 0}), P({0, b, 0}), P({-a, 0, 0}), P({0, -b, 0})};
  std::array<PLMap, 3> out;
  for (int i = 0; i < 3; ++i) {
    out[i] = make_map(cycle_complex(4), r1);
    for (auto& p : r1) p = cyc(p);
  }
  return out;
}

Scene rings_scene(const std::array<PLMap, 3>& r) {
  Scene s;
  s.ambient_dim = 3;
  for (int i = 0; i < 3; ++i) s.components.push_back({"L" + std::to_string(i + 1), Role::LinkComponent, share(r[i])});
  return s;
}

Scene with_surfaces(Scene s, const std::array<PLMap, 3>& surf) {
  for (int i = 0; i < 3; ++i)
    s.components.push_back({"D" + std::to_string(i + 1), Role::SpanningSurface, share(surf[i])});
  return s;
}

Scene cone_disks(const Scalar& a, const Scalar& b, Point apex) {
  check_ab(a, b);
  auto r = rings(a, b);
  std::array<PLMap, 3> d;
  for (int i = 0; i < 3; ++i) {
    d[i] = cone(r[i], apex);
    apex = cyc(apex);
  }
  return with_surfaces(rings_scene(r), d);
}

PLMap hexagon_loop(const Point& c, const Scalar& r) {
  std::vector<Point> v;
  const Scalar h = r / 2;
  for (auto [x, y] : std::initializer_list<std::pair<Scalar, Scalar>>{{r, 0}, {h, r}, {-h, r}, {-r, 0}, {-h, -r}, {h, -r}})
    v.push_back(P({c[0] + x, c[1] + y}));
  return make_map(cycle_complex(6), v);
}

std::vector<Point> octahedron_points(const Point& center, const Scalar& radius) {
  std::vector<Point> out;
  for (int a = 0; a < 3; ++a)
    for (int s : {1, -1}) {
      Point p = center;
      p[a] += s * radius;
      out.push_back(std::move(p));
    }
  return out;
}

// sphere with `levels` latitude squares between two poles; vertex 0 is the
// south pole, ring m vertex q is 1 + 4m + q, the north pole is last
Complex latitude_sphere(int levels) {
  const int n = 2 + 4 * levels;
  const int north = n - 1;
  auto ring = [](int m, int q) { return 1 + 4 * m + (q % 4); };
  std::vector<Cell> cells;
  for (int q = 0; q < 4; ++q) cells.push_back({0, ring(0, q + 1), ring(0, q)});
  for (int m = 0; m + 1 < levels; ++m)
    for (int q = 0; q < 4; ++q) {
      cells.push_back({ring(m, q), ring(m, q + 1), ring(m + 1, q + 1)});
      cells.push_back({ring(m, q), ring(m + 1, q + 1), ring(m + 1, q)});
    }
  for (int q = 0; q < 4; ++q) cells.push_back({north, ring(levels - 1, q), ring(levels - 1, q + 1)});
  return Complex{n, 2, std::move(cells), ComplexKind::ClosedPseudomanifold};
}

Scalar rand_unit(std::mt19937_64& rng, long steps) {
  // uniform on k / steps, k in [-steps, steps]
  long k = static_cast<long>(rng() % static_cast<std::uint64_t>(2 * steps + 1)) - steps;
  return ratio(k, steps);
}

}  // namespace

Scene build_borromean_rings(const Scalar& a, const Scalar& b) {
  check_ab(a, b);
  return rings_scene(rings(a, b));
}

Scene build_borromean_disks(const Scalar& a, const Scalar& b) { return cone_disks(a, b, P({a / 5, b / 5, 0})); }

Scene build_borromean_alt_disks(const Scalar& a, const Scalar& b) {
  return cone_disks(a, b, P({-a / 6, b / 7, b / 10}));
}

Scene build_borromean_diagonal_disks(const Scalar& a, const Scalar& b) {
  Scene s = build_borromean_disks(a, b);
  // disk 1 split along the diagonal (a,0,0)-(-a,0,0) through the origin
  const PLMap& ring = *s.components[0].map;
  Complex dom{4, 2, {{0, 1, 2}, {0, 2, 3}}, ComplexKind::PseudomanifoldWithBoundary};
  s.components[3].map = share(make_map(dom, ring.images));
  return s;
}

Scene build_borromean_doodle() {
  Scene s;
  s.ambient_dim = 2;
  const Scalar r(3, 2);
  const std::array<Point, 3> centers{P({0, 0}), P({2, 0}), P({1, Scalar(7, 4)})};
  for (int i = 0; i < 3; ++i)
    s.components.push_back({"X" + std::to_string(i + 1), Role::OrnamentComponent, share(hexagon_loop(centers[i], r))});
  return s;
}

Scene build_hopf_link() {
  Scene s;
  s.ambient_dim = 3;
  auto c1 = make_map(cycle_complex(3), {P({-2, -1, 0}), P({2, -1, 0}), P({0, 2, 0})});
  auto c2 = make_map(cycle_complex(3), {P({1, Scalar(-1, 5), -1}), P({Scalar(6, 5), Scalar(1, 4), 1}), P({5, 0, 0})});
  s.components.push_back({"L1", Role::LinkComponent, share(c1)});
  s.components.push_back({"L2", Role::LinkComponent, share(c2)});
  return s;
}

Scene build_split(int n, int dim) {
  if (n < 1 || dim < 2 || dim > 4) throw ConstructionError(ConstructionError::Kind::BadParams, "split: need n >= 1, dim 2..4");
  Scene s;
  s.ambient_dim = dim;
  for (int k = 0; k < n; ++k) {
    PLMap m;
    Role role = Role::LinkComponent;
    if (dim == 2) {
      m = hexagon_loop(P({4 * k, 0}), 1);
      role = Role::OrnamentComponent;
    } else if (dim == 3) {
      m = make_map(cycle_complex(4), {P({4 * k + 1, 0, 0}), P({4 * k, 1, 0}), P({4 * k - 1, 0, 0}), P({4 * k, -1, 0})});
    } else {
      m = make_map(octahedron_complex(), octahedron_points(P({4 * k, 0, 0, 0}), 1));
    }
    s.components.push_back({"S" + std::to_string(k + 1), role, share(std::move(m))});
  }
  if (dim == 3)
    for (int k = 0; k < n; ++k)
      s.components.push_back({"D" + std::to_string(k + 1), Role::SpanningSurface,
                              share(cone_null_homotopy(*s.components[k].map, P({4 * k, 0, Scalar(1, 2)})))});
  return s;
}

Scene build_cor33_linkmap() {
  // hexagon around c = (1/3,1/3,1/3,0) in the plane spanned by n = (1,1,1,0)
  // and e4; it pierces the solid octahedron bounded by g_0 once
  const Scalar rho(1, 6);
  const Point c = P({Scalar(1, 3), Scalar(1, 3), Scalar(1, 3), 0});
  const std::pair<Scalar, Scalar> dirs[6] = {{1, 0}, {Scalar(1, 2), 1}, {Scalar(-1, 2), 1},
                                             {-1, 0}, {Scalar(-1, 2), -1}, {Scalar(1, 2), -1}};
  std::vector<Point> hex;
  for (const auto& [al, be] : dirs) {
    Point p = c;
    for (int a = 0; a < 3; ++a) p[a] += rho * al;
    p[3] += rho * be;
    hex.push_back(std::move(p));
  }
  // latitude levels map onto consecutive hexagon vertices: a degree-zero
  // map of the sphere onto the circle
  const int levels = 5;
  Complex dom = latitude_sphere(levels);
  std::vector<Point> images(static_cast<std::size_t>(dom.vertex_count));
  images[0] = hex[0];
  for (int m = 0; m < levels; ++m)
    for (int q = 0; q < 4; ++q) images[1 + 4 * m + q] = hex[m + 1];
  images[dom.vertex_count - 1] = hex[0];
  PLMap g_star = perturb(make_map(dom, images), Scalar(1, 100), 33);

  Scene s;
  s.ambient_dim = 4;
  s.components.push_back({"g*", Role::LinkComponent, share(std::move(g_star))});
  s.components.push_back(
      {"g0", Role::LinkComponent, share(make_map(octahedron_complex(), octahedron_points(zero_point(4), 1)))});
  return s;
}

Scene lift_doodle(const Scene& doodle) {
  auto comps = components<3>(doodle, Role::OrnamentComponent);
  for (const auto& m : comps)
    if (m->domain.dim != 1 || m->ambient_dim != 2)
      throw std::invalid_argument("lift_doodle: components must be planar curves");

  struct Mark {
    Scalar t;
    bool over;
  };
  // marks[c][cell] = crossing parameters on that edge
  std::array<std::vector<std::vector<Mark>>, 3> marks;
  for (int c = 0; c < 3; ++c) marks[c].resize(comps[c]->domain.cells.size());
  auto cross2 = [](const Point& u, const Point& v) -> Scalar { return u[0] * v[1] - u[1] * v[0]; };
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const bool i_over = (i + 1) % 3 == j;
      const PLMap& A = *comps[i];
      const PLMap& B = *comps[j];
      for (std::size_t ea = 0; ea < A.domain.cells.size(); ++ea)
        for (std::size_t eb = 0; eb < B.domain.cells.size(); ++eb) {
          const Point& p = A.images[A.domain.cells[ea][0]];
          const Point r = A.images[A.domain.cells[ea][1]] - p;
          const Point& q = B.images[B.domain.cells[eb][0]];
          const Point s = B.images[B.domain.cells[eb][1]] - q;
          const Point qp = q - p;
          Scalar den = cross2(r, s);
          if (sgn(den) == 0) {
            if (sgn(cross2(qp, r)) != 0) continue;  // parallel, disjoint lines
            // collinear: overlap is non-generic
            Scalar rr = dot(r, r);
            Scalar t0 = dot(qp, r) / rr, t1 = dot(qp + s, r) / rr;
            if (std::max(t0, t1) >= 0 && std::min(t0, t1) <= 1)
              throw ConstructionError(ConstructionError::Kind::NonGenericCrossing, "collinear overlapping edges");
            continue;
          }
          Scalar t = cross2(qp, s) / den, u = cross2(qp, r) / den;
          if (t < 0 || t > 1 || u < 0 || u > 1) continue;
          if (sgn(t) == 0 || t == 1 || sgn(u) == 0 || u == 1)
            throw ConstructionError(ConstructionError::Kind::NonGenericCrossing, "crossing at a vertex");
          marks[i][ea].push_back({t, i_over});
          marks[j][eb].push_back({u, !i_over});
        }
    }

  Scene out;
  out.ambient_dim = 3;
  for (int c = 0; c < 3; ++c) {
    const PLMap& m = *comps[c];
    std::vector<Point> images;
    for (const auto& p : m.images) images.push_back(P({p[0], p[1], 0}));
    std::vector<Cell> cells;
    for (std::size_t e = 0; e < m.domain.cells.size(); ++e) {
      auto ms = marks[c][e];
      std::sort(ms.begin(), ms.end(), [](const Mark& x, const Mark& y) { return x.t < y.t; });
      const int v0 = m.domain.cells[e][0], v1 = m.domain.cells[e][1];
      if (ms.empty()) {
        cells.push_back({v0, v1});
        continue;
      }
      Scalar gap = ms.front().t;
      for (std::size_t k = 0; k + 1 < ms.size(); ++k) gap = std::min(gap, Scalar(ms[k + 1].t - ms[k].t));
      gap = std::min(gap, Scalar(1 - ms.back().t));
      const Scalar delta = gap / 4;
      const Point& a = m.images[v0];
      const Point& b = m.images[v1];
      int prev = v0;
      auto add = [&](const Scalar& t, int z) {
        Point p = a + t * (b - a);
        p.emplace_back(z);
        images.push_back(std::move(p));
        int idx = static_cast<int>(images.size()) - 1;
        cells.push_back({prev, idx});
        prev = idx;
      };
      for (const auto& mk : ms) {
        add(mk.t - delta, 0);
        add(mk.t, mk.over ? 1 : 0);
        add(mk.t + delta, 0);
      }
      cells.push_back({prev, v1});
    }
    Complex dom{static_cast<int>(images.size()), 1, std::move(cells), m.domain.kind};
    out.components.push_back({"L" + std::to_string(c + 1), Role::LinkComponent,
                              share(make_map(std::move(dom), std::move(images)))});
  }
  return out;
}

Scene lift_spanning_system(const Scene& lifted) {
  auto curves = components<3>(lifted, Role::LinkComponent);
  std::array<MapRef, 3> planar;
  for (int i = 0; i < 3; ++i)
    planar[i] = share(transform_images(*curves[i], [](const Point& p) { return Point{p[0], p[1]}; }));
  auto d = default_displacements(planar);
  const Scalar wall_top = 2;

  Scene out = lifted;
  for (int i = 0; i < 3; ++i) {
    const PLMap& c = *curves[i];
    Complex dom = product_triangulation(c.domain, path_complex(3));
    dom.kind = ComplexKind::PseudomanifoldWithBoundary;
    std::vector<Point> images(static_cast<std::size_t>(dom.vertex_count));
    for (int v = 0; v < c.domain.vertex_count; ++v) {
      const Point& p = c.images[v];
      images[3 * v] = p;
      images[3 * v + 1] = P({p[0], p[1], wall_top});
      images[3 * v + 2] = P({p[0] + d[i][0], p[1] + d[i][1], wall_top + 1});
    }
    std::vector<Cell> top;
    for (const auto& f : boundary(dom).cells)
      if (std::all_of(f.begin(), f.end(), [](int v) { return v % 3 == 2; })) top.push_back(f);
    Point centre = zero_point(3);
    for (int v = 0; v < c.domain.vertex_count; ++v) centre = centre + images[3 * v + 2];
    centre = Scalar(1, c.domain.vertex_count) * centre;
    centre[2] += 1;
    int apex = cap_faces(dom, top);
    images.resize(static_cast<std::size_t>(dom.vertex_count));
    images[apex] = centre;
    out.components.push_back({"D" + std::to_string(i + 1), Role::SpanningSurface,
                              share(make_map(std::move(dom), std::move(images)))});
  }
  return out;
}

Scene double_link_map(const Scene& g, const Scalar& magnitude, std::uint64_t seed) {
  auto comps = components<2>(g, Role::LinkComponent);
  MapRef plus = comps[0];
  if (sgn(magnitude) != 0) {
    plus = share(perturb(*comps[0], magnitude, seed));
    if (!validate_link_map({plus, comps[1]}).ok)
      throw ConstructionError(ConstructionError::Kind::CertificationFailed,
                              "perturbed copy meets component 0; use a smaller magnitude");
  }
  Scene s;
  s.ambient_dim = g.ambient_dim;
  s.components.push_back({"+", Role::LinkComponent, plus});
  s.components.push_back({"-", Role::LinkComponent, comps[0]});
  s.components.push_back({"0", Role::LinkComponent, comps[1]});
  return s;
}

PLMap cone_null_homotopy(const PLMap& f, const Point& apex) {
  if (point_on_image(f, apex)) throw ConstructionError(ConstructionError::Kind::ApexOnImage, "apex lies on the image");
  return cone(f, apex);
}

std::vector<PLMap> translation_homotopy(const Scene& s, const std::vector<Point>& displacements) {
  if (displacements.size() != s.components.size())
    throw std::invalid_argument("one displacement per component required");
  std::vector<PLMap> out;
  for (std::size_t k = 0; k < s.components.size(); ++k)
    out.push_back(translation_prism(*s.components[k].map, displacements[k]));
  return out;
}

RandomKind parse_random_kind(const std::string& s) {
  if (s == "doodle") return RandomKind::Doodle;
  if (s == "pm0" || s == "pm-triple") return RandomKind::PmTriple;
  if (s == "linkmap4" || s == "linkmap") return RandomKind::LinkMapR4;
  throw std::invalid_argument("unknown random kind '" + s + "'");
}

Scene random_scene(RandomKind kind, std::uint64_t seed) {
  for (std::uint64_t attempt = 0; attempt < 1000; ++attempt) {
    std::mt19937_64 rng(seed * 1000003ULL + attempt);
    Scene s;
    if (kind == RandomKind::Doodle) {
      s.ambient_dim = 2;
      const std::array<Point, 3> centers{P({0, 0}), P({2, 0}), P({1, Scalar(7, 4)})};
      for (int i = 0; i < 3; ++i) {
        Point c = centers[i] + Point{rand_unit(rng, 20) / 2, rand_unit(rng, 20) / 2};
        Scalar r = Scalar(3, 2) + rand_unit(rng, 20) / 2;
        PLMap h = hexagon_loop(c, r);
        for (auto& p : h.images)
          for (auto& x : p) x += rand_unit(rng, 20) / 5;
        s.components.push_back({"X" + std::to_string(i + 1), Role::OrnamentComponent, share(std::move(h))});
      }
      if (validate_ornament(components<3>(s, Role::OrnamentComponent)).ok) return s;
      continue;
    }
    s.ambient_dim = 4;
    auto random_sphere = [&](const Scalar& extent) {
      std::vector<Point> pts;
      for (int v = 0; v < 6; ++v) {
        Point p;
        for (int a = 0; a < 4; ++a) p.push_back(extent * rand_unit(rng, 12));
        pts.push_back(std::move(p));
      }
      return make_map(octahedron_complex(), pts);
    };
    if (kind == RandomKind::PmTriple) {
      auto zero = share(make_map(octahedron_complex(), octahedron_points(zero_point(4), Scalar(1, 2))));
      auto plus = share(random_sphere(3));
      auto minus = share(random_sphere(3));
      if (!validate_pm_ne_0(plus, minus, zero).ok) continue;
      s.components = {{"+", Role::LinkComponent, plus}, {"-", Role::LinkComponent, minus}, {"0", Role::LinkComponent, zero}};
      return s;
    }
    auto g0 = share(make_map(octahedron_complex(), octahedron_points(zero_point(4), 1)));
    auto gs = share(random_sphere(2));
    if (!validate_link_map({gs, g0}).ok) continue;
    s.components = {{"g*", Role::LinkComponent, gs}, {"g0", Role::LinkComponent, g0}};
    return s;
  }
  throw ConstructionError(ConstructionError::Kind::CertificationFailed, "no certified random scene found");
}

}  // namespace plg
