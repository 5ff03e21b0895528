#include "plg/constructions.hpp"

#include <map>

// Borromean family over the boundary of I^3.
//
// Each component i is driven by one scalar r_i in [-1, 1]: r >= 0 draws the
// ring scaled by r (inside the ball of radius 1/3), r <= 0 the point -r * d_i.
// Rings i and i+1 meet exactly on the wall r_{i+1} = (b/a) r_i, r_i >= 0. The
// cube boundary is mapped into r-space: edges at corner 0 sit at (1,1,1),
// edges at corner 1 at (-1,-1,-1), and each hexagon edge lowers the three
// coordinates one after another in an order that crosses only the wall its
// two faces allow. Faces are coned to a point off their forbidden wall.

namespace plg {

namespace {

using RVec = std::array<Scalar, 3>;

struct Setup {
  Scalar scale;               // ring scale
  Scalar k;                   // b / a
  std::array<std::vector<Point>, 3> ring;  // unscaled ring vertex images
  std::array<Point, 3> tip;   // d_i
};

// p such that {p, p+1 mod 3} = {i, j}
int wall_start(int i, int j) { return (i + 1) % 3 == j ? i : j; }

RVec stage_path(int p, const Scalar& t) {
  RVec r{Scalar(1), Scalar(1), Scalar(1)};
  const int order[3] = {(p + 1) % 3, (p + 2) % 3, p};
  for (int s = 0; s < 3; ++s) {
    Scalar local = 3 * t - s;  // progress through stage s
    if (local <= 0) break;
    if (local >= 1) {
      r[order[s]] = -1;
      continue;
    }
    r[order[s]] = 1 - 2 * local;
  }
  return r;
}

// value on a cube edge; T has at least two coordinates in {0, 1}
RVec edge_value(const std::array<Scalar, 3>& T) {
  int fixed[3], nf = 0;
  for (int a = 0; a < 3; ++a)
    if (sgn(T[a]) == 0 || T[a] == 1) fixed[nf++] = a;
  if (nf < 2) throw std::logic_error("edge_value: not on an edge");
  // prefer a hexagon-edge reading only if no corner-0 or corner-1 edge applies
  for (int x = 0; x < nf; ++x)
    for (int y = x + 1; y < nf; ++y) {
      const Scalar& a = T[fixed[x]];
      const Scalar& b = T[fixed[y]];
      if (sgn(a) == 0 && sgn(b) == 0) return {Scalar(1), Scalar(1), Scalar(1)};
      if (a == 1 && b == 1) return {Scalar(-1), Scalar(-1), Scalar(-1)};
    }
  int i = -1, j = -1;
  for (int x = 0; x < nf; ++x) {
    if (T[fixed[x]] == 1 && i < 0) i = fixed[x];
    if (sgn(T[fixed[x]]) == 0 && j < 0) j = fixed[x];
  }
  const int m = 3 - i - j;
  return stage_path(wall_start(i, j), T[m]);
}

RVec face_value(int k, int c, const Scalar& u, const Scalar& v, const Scalar& ratio) {
  const int a = k == 0 ? 1 : 0;
  const int b = k == 2 ? 1 : 2;
  auto full = [&](const Scalar& x, const Scalar& y) {
    std::array<Scalar, 3> T;
    T[k] = c;
    T[a] = x;
    T[b] = y;
    return T;
  };
  const Scalar half(1, 2);
  Scalar du = u - half, dv = v - half;
  Scalar lam = 2 * std::max(abs(du), abs(dv));
  // centre of the face: a point off the wall of the pair (a, b)
  const int p = wall_start(a, b);
  RVec q;
  q[p] = -1;
  q[(p + 1) % 3] = -ratio;
  q[(p + 2) % 3] = 0;
  if (sgn(lam) == 0) return q;
  RVec e = edge_value(full(half + du / lam, half + dv / lam));
  RVec r;
  for (int x = 0; x < 3; ++x) r[x] = (1 - lam) * q[x] + lam * e[x];
  return r;
}

Point position(const Setup& s, int comp, int vertex, const Scalar& r) {
  if (sgn(r) >= 0) return (r * s.scale) * s.ring[comp][vertex];
  return Scalar(-r) * s.tip[comp];
}

Complex grid_complex(int n) {
  Complex c;
  c.vertex_count = (n + 1) * (n + 1);
  c.dim = 2;
  c.kind = ComplexKind::PseudomanifoldWithBoundary;
  auto id = [n](int iu, int iv) { return iu * (n + 1) + iv; };
  for (int iu = 0; iu < n; ++iu)
    for (int iv = 0; iv < n; ++iv) {
      c.cells.push_back({id(iu, iv), id(iu + 1, iv), id(iu + 1, iv + 1)});
      c.cells.push_back({id(iu, iv), id(iu + 1, iv + 1), id(iu, iv + 1)});
    }
  return c;
}

int face_sign(int k, int c) { return (c == 1 ? 1 : -1) * (k == 1 ? -1 : 1); }

template <class NodeImage>
HexFamily assemble(const std::array<const Complex*, 3>& curves, int grid, NodeImage&& node) {
  HexFamily h;
  const Complex g = grid_complex(grid);
  const int nb = g.vertex_count;
  for (int k = 0; k < 3; ++k)
    for (int c = 0; c < 2; ++c) {
      HexFace f;
      f.k = k;
      f.value = c;
      f.sign = face_sign(k, c);
      for (int i = 0; i < 3; ++i) {
        Complex dom = product_triangulation(*curves[i], g);
        dom.kind = ComplexKind::PseudomanifoldWithBoundary;
        std::vector<Point> images(static_cast<std::size_t>(dom.vertex_count));
        for (int x = 0; x < curves[i]->vertex_count; ++x)
          for (int iu = 0; iu <= grid; ++iu)
            for (int iv = 0; iv <= grid; ++iv) {
              Scalar u = ratio(iu, grid), v = ratio(iv, grid);
              Point p = node(k, c, i, x, u, v);
              p.push_back(u);
              p.push_back(v);
              images[static_cast<std::size_t>(x) * nb + iu * (grid + 1) + iv] = std::move(p);
            }
        f.maps[i] = share(make_map(std::move(dom), std::move(images)));
      }
      h.faces.push_back(std::move(f));
    }
  return h;
}

// cube parameter triple of a face-map vertex
std::array<Scalar, 3> vertex_T(const HexFace& f, const Point& img) {
  std::array<Scalar, 3> T;
  T[f.k] = f.value;
  int pos = 0;
  for (int a = 0; a < 3; ++a)
    if (a != f.k) T[a] = img[3 + pos++];
  return T;
}

}  // namespace

HexFamily build_borromean_hexagonal_family(const Scalar& a, const Scalar& b, int grid) {
  if (!(a > b && b > 0)) throw ConstructionError(ConstructionError::Kind::BadParams, "need a > b > 0");
  if (grid <= 0 || grid % 6 != 0)
    throw ConstructionError(ConstructionError::Kind::BadParams, "grid must be a positive multiple of 6");
  Scene rings = build_borromean_rings(a, b);
  Setup s;
  s.scale = 1 / (4 * a);
  s.k = b / a;
  const Scalar e(1, 8);
  s.tip = {Point{1, e, e}, Point{e, 1, e}, Point{e, e, 1}};
  std::array<const Complex*, 3> curves;
  for (int i = 0; i < 3; ++i) {
    s.ring[i] = rings.components[i].map->images;
    curves[i] = &rings.components[i].map->domain;
  }
  return assemble(curves, grid, [&](int k, int c, int i, int x, const Scalar& u, const Scalar& v) {
    RVec r = face_value(k, c, u, v, s.k);
    return position(s, i, x, r[i]);
  });
}

HexFamily build_constant_family(const MapTriple& link, int grid) {
  if (grid <= 0) throw ConstructionError(ConstructionError::Kind::BadParams, "grid must be positive");
  std::array<const Complex*, 3> curves;
  for (int i = 0; i < 3; ++i) {
    if (link[i]->ambient_dim != 3 || link[i]->domain.dim != 1)
      throw std::invalid_argument("constant family needs curves in R^3");
    curves[i] = &link[i]->domain;
  }
  return assemble(curves, grid,
                  [&](int, int, int i, int x, const Scalar&, const Scalar&) { return link[i]->images[x]; });
}

namespace {

// T -> sorted physical points of component i at vertices with that T
using Slice = std::map<std::array<Scalar, 3>, std::vector<Point>>;

Slice slices(const HexFace& f, int i) {
  Slice out;
  for (const auto& img : f.maps[i]->images)
    out[vertex_T(f, img)].push_back(Point(img.begin(), img.begin() + 3));
  return out;
}

}  // namespace

bool family_edges_agree(const HexFamily& h) {
  for (int i = 0; i < 3; ++i) {
    std::map<std::array<Scalar, 3>, std::vector<Point>> seen;
    for (const auto& f : h.faces)
      for (auto& [T, pts] : slices(f, i)) {
        auto it = seen.find(T);
        if (it == seen.end())
          seen.emplace(T, pts);
        else if (it->second != pts)
          return false;
      }
  }
  return true;
}

std::array<std::vector<Point>, 3> family_corner(const HexFamily& h, int t1, int t2, int t3) {
  const std::array<Scalar, 3> T{Scalar(t1), Scalar(t2), Scalar(t3)};
  for (const auto& f : h.faces) {
    if (T[f.k] != f.value) continue;
    std::array<std::vector<Point>, 3> out;
    for (int i = 0; i < 3; ++i) {
      auto sl = slices(f, i);
      auto it = sl.find(T);
      if (it == sl.end()) throw std::invalid_argument("corner is not a grid vertex");
      out[i] = it->second;
    }
    return out;
  }
  throw std::invalid_argument("no face contains the corner");
}

}  // namespace plg
