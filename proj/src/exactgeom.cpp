#include "plg/exactgeom.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace plg {

Scalar parse_scalar(const std::string& text) {
  auto is_int = [](const std::string& s) {
    std::size_t i = 0;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    return std::all_of(s.begin() + static_cast<long>(i), s.end(),
                       [](char ch) { return ch >= '0' && ch <= '9'; });
  };
  auto slash = text.find('/');
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("not an exact rational: '" + text + "'");
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num), d(den);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  Scalar q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Scalar& s) { return s.get_str(); }

std::string to_string(const Point& p) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i].get_str();
  os << ')';
  return os.str();
}

Point operator+(const Point& a, const Point& b) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Point operator-(const Point& a, const Point& b) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Point operator*(const Scalar& s, const Point& p) {
  Point r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = s * p[i];
  return r;
}

Scalar ratio(long n, long d) {
  Scalar q(n, d);
  q.canonicalize();
  return q;
}

Scalar dot(const Point& a, const Point& b) {
  Scalar r = 0;
  for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
  return r;
}

Point zero_point(std::size_t dim) { return Point(dim, Scalar(0)); }

int sort_sign(std::vector<int>& v) {
  int sign = 1;
  // insertion sort; cells are tiny
  for (std::size_t i = 1; i < v.size(); ++i) {
    for (std::size_t j = i; j > 0 && v[j - 1] > v[j]; --j) {
      std::swap(v[j - 1], v[j]);
      sign = -sign;
    }
  }
  return sign;
}

namespace {

struct FaceUse {
  int count = 0;
  int sign_sum = 0;
  Cell oriented;  // induced orientation from the first cell using it
  std::size_t first_cell = 0;
};

// Sorted face -> usage. The induced orientation of face i of (w0..wd) is
// (-1)^i times the orientation of the remaining ordered tuple.
std::map<Cell, FaceUse> collect_faces(const Complex& c) {
  std::map<Cell, FaceUse> faces;
  for (std::size_t ci = 0; ci < c.cells.size(); ++ci) {
    const Cell& cell = c.cells[ci];
    for (std::size_t i = 0; i < cell.size(); ++i) {
      Cell face;
      for (std::size_t k = 0; k < cell.size(); ++k)
        if (k != i) face.push_back(cell[k]);
      Cell key = face;
      int s = sort_sign(key) * ((i % 2) ? -1 : 1);
      auto& use = faces[key];
      if (use.count == 0) {
        use.oriented = face;
        if ((i % 2) && face.size() >= 2) std::swap(use.oriented[0], use.oriented[1]);
        use.first_cell = ci;
      }
      ++use.count;
      use.sign_sum += s;
    }
  }
  return faces;
}

}  // namespace

ValidationReport validate_complex(const Complex& c) {
  if (c.dim < 0) throw GeometryError(GeometryError::Kind::BadIndex, "negative dimension");
  for (std::size_t ci = 0; ci < c.cells.size(); ++ci) {
    const Cell& cell = c.cells[ci];
    if (static_cast<int>(cell.size()) != c.dim + 1)
      throw GeometryError(GeometryError::Kind::BadIndex,
                          "cell " + std::to_string(ci) + " has wrong vertex count");
    for (int v : cell)
      if (v < 0 || v >= c.vertex_count)
        throw GeometryError(GeometryError::Kind::BadIndex,
                            "cell " + std::to_string(ci) + " references vertex " + std::to_string(v));
    Cell sorted = cell;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw GeometryError(GeometryError::Kind::BadIndex,
                          "cell " + std::to_string(ci) + " repeats a vertex");
  }
  ValidationReport report;
  report.cell_count = c.cells.size();
  if (c.dim == 0 || c.kind == ComplexKind::General) return report;

  for (const auto& [key, use] : collect_faces(c)) {
    std::string face_txt;
    for (int v : key) face_txt += (face_txt.empty() ? "" : ",") + std::to_string(v);
    if (use.count > 2)
      throw GeometryError(GeometryError::Kind::NonManifoldFace,
                          "face [" + face_txt + "] lies in " + std::to_string(use.count) + " cells");
    if (use.count == 2 && use.sign_sum != 0)
      throw GeometryError(GeometryError::Kind::OrientationIncoherent,
                          "face [" + face_txt + "] receives the same induced orientation twice");
    if (use.count == 1) ++report.boundary_faces;
  }
  report.closed = report.boundary_faces == 0;
  if (c.kind == ComplexKind::ClosedPseudomanifold && !report.closed)
    throw GeometryError(GeometryError::Kind::NonManifoldFace,
                        "closed pseudomanifold has " + std::to_string(report.boundary_faces) +
                            " boundary faces");
  return report;
}

Complex boundary(const Complex& c) {
  Complex out;
  out.vertex_count = c.vertex_count;
  out.dim = std::max(0, c.dim - 1);
  out.kind = ComplexKind::ClosedPseudomanifold;
  if (c.dim == 0) return out;
  std::vector<std::pair<std::size_t, Cell>> ordered;
  for (const auto& [key, use] : collect_faces(c))
    if (use.count == 1) ordered.emplace_back(use.first_cell, use.oriented);
  // keep the cell order of the input so boundaries of cycles come out in order
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [ci, face] : ordered) out.cells.push_back(face);
  return out;
}

Complex product_triangulation(const Complex& a, const Complex& b) {
  Complex out;
  out.vertex_count = a.vertex_count * b.vertex_count;
  out.dim = a.dim + b.dim;
  bool closed_a = a.kind == ComplexKind::ClosedPseudomanifold;
  bool closed_b = b.kind == ComplexKind::ClosedPseudomanifold;
  bool pm = a.kind != ComplexKind::General && b.kind != ComplexKind::General;
  out.kind = !pm ? ComplexKind::General
                 : (closed_a && closed_b ? ComplexKind::ClosedPseudomanifold
                                         : ComplexKind::PseudomanifoldWithBoundary);
  const int p = a.dim, q = b.dim;
  // all step sequences with p a-steps among p+q steps
  std::vector<std::vector<bool>> paths;
  std::vector<bool> steps(p + q, false);
  std::fill(steps.begin(), steps.begin() + p, true);  // true = a-step
  std::sort(steps.begin(), steps.end());
  do paths.push_back(steps);
  while (std::next_permutation(steps.begin(), steps.end()));

  for (const Cell& ca : a.cells) {
    Cell sa = ca;
    int sign_a = sort_sign(sa);
    for (const Cell& cb : b.cells) {
      Cell sb = cb;
      int sign_b = sort_sign(sb);
      for (const auto& path : paths) {
        // inversions: b-step before a-step
        int inv = 0, bs = 0;
        for (bool st : path) {
          if (st) inv += bs;
          else ++bs;
        }
        Cell simplex;
        int i = 0, j = 0;
        simplex.push_back(sa[0] * b.vertex_count + sb[0]);
        for (bool st : path) {
          if (st) ++i;
          else ++j;
          simplex.push_back(sa[i] * b.vertex_count + sb[j]);
        }
        int sign = sign_a * sign_b * ((inv % 2) ? -1 : 1);
        if (sign < 0 && simplex.size() >= 2) std::swap(simplex[0], simplex[1]);
        out.cells.push_back(std::move(simplex));
      }
    }
  }
  return out;
}

Complex cycle_complex(int n) {
  Complex c;
  c.vertex_count = n;
  c.dim = 1;
  c.kind = ComplexKind::ClosedPseudomanifold;
  for (int i = 0; i < n; ++i) c.cells.push_back({i, (i + 1) % n});
  return c;
}

Complex path_complex(int n) {
  Complex c;
  c.vertex_count = n;
  c.dim = 1;
  c.kind = ComplexKind::PseudomanifoldWithBoundary;
  for (int i = 0; i + 1 < n; ++i) c.cells.push_back({i, i + 1});
  return c;
}

Complex octahedron_complex() {
  // vertex 2a is +e_a, 2a+1 is -e_a
  Complex c;
  c.vertex_count = 6;
  c.dim = 2;
  c.kind = ComplexKind::ClosedPseudomanifold;
  for (int sx = 0; sx < 2; ++sx)
    for (int sy = 0; sy < 2; ++sy)
      for (int sz = 0; sz < 2; ++sz) {
        Cell cell{sx, 2 + sy, 4 + sz};
        // outward orientation: (e1,e2,e3) is positive in the +++ octant,
        // each sign flip reverses it
        if ((sx + sy + sz) % 2) std::swap(cell[0], cell[1]);
        c.cells.push_back(cell);
      }
  return c;
}

PLMap make_map(Complex domain, std::vector<Point> images) {
  if (static_cast<int>(images.size()) != domain.vertex_count)
    throw GeometryError(GeometryError::Kind::BadIndex, "one image per vertex required");
  PLMap m;
  m.ambient_dim = images.empty() ? 0 : static_cast<int>(images.front().size());
  for (const auto& p : images)
    if (static_cast<int>(p.size()) != m.ambient_dim)
      throw GeometryError(GeometryError::Kind::DimensionMismatch, "images of mixed dimension");
  m.domain = std::move(domain);
  m.images = std::move(images);
  return m;
}

Point PLMap::evaluate(std::size_t cell, const std::vector<Scalar>& bary) const {
  if (cell >= domain.cells.size())
    throw GeometryError(GeometryError::Kind::BadIndex, "cell index out of range");
  const Cell& c = domain.cells[cell];
  if (bary.size() != c.size())
    throw GeometryError(GeometryError::Kind::BadBarycentric, "wrong number of barycentric coordinates");
  Scalar sum = 0;
  for (const auto& b : bary) {
    if (b < 0) throw GeometryError(GeometryError::Kind::BadBarycentric, "negative barycentric coordinate");
    sum += b;
  }
  if (sum != 1) throw GeometryError(GeometryError::Kind::BadBarycentric, "barycentric coordinates must sum to 1");
  Point r = zero_point(static_cast<std::size_t>(ambient_dim));
  for (std::size_t k = 0; k < c.size(); ++k)
    for (int a = 0; a < ambient_dim; ++a) r[a] += bary[k] * images[c[k]][a];
  return r;
}

Point pl_evaluate(const PLMap& m, std::size_t cell, const std::vector<Scalar>& bary) {
  return m.evaluate(cell, bary);
}

PLMap cone(const PLMap& m, const Point& apex) {
  if (static_cast<int>(apex.size()) != m.ambient_dim)
    throw GeometryError(GeometryError::Kind::DimensionMismatch, "apex dimension differs from ambient");
  PLMap out;
  out.ambient_dim = m.ambient_dim;
  out.domain.vertex_count = m.domain.vertex_count + 1;
  out.domain.dim = m.domain.dim + 1;
  out.domain.kind = ComplexKind::PseudomanifoldWithBoundary;
  const int a = m.domain.vertex_count;
  for (const Cell& c : m.domain.cells) {
    Cell cc{a};
    cc.insert(cc.end(), c.begin(), c.end());
    out.domain.cells.push_back(std::move(cc));
  }
  out.images = m.images;
  out.images.push_back(apex);
  return out;
}

int cap_faces(Complex& c, const std::vector<Cell>& boundary_faces) {
  const int apex = c.vertex_count++;
  for (Cell f : boundary_faces) {
    // the cap cell must induce the opposite orientation on f
    if (f.size() >= 2) std::swap(f[0], f[1]);
    Cell cell{apex};
    cell.insert(cell.end(), f.begin(), f.end());
    c.cells.push_back(std::move(cell));
  }
  return apex;
}

PLMap barycentric_subdivide(const PLMap& m) {
  const Complex& c = m.domain;
  std::map<Cell, int> face_index;
  std::vector<Point> images;
  auto vertex_for = [&](Cell key) {
    std::sort(key.begin(), key.end());
    auto it = face_index.find(key);
    if (it != face_index.end()) return it->second;
    Point p = zero_point(static_cast<std::size_t>(m.ambient_dim));
    for (int v : key) p = p + m.images[v];
    p = Scalar(1, static_cast<unsigned long>(key.size())) * p;
    int idx = static_cast<int>(images.size());
    images.push_back(std::move(p));
    face_index.emplace(std::move(key), idx);
    return idx;
  };
  // original vertices keep their indices
  for (int v = 0; v < c.vertex_count; ++v) vertex_for({v});

  PLMap out;
  out.ambient_dim = m.ambient_dim;
  out.domain.dim = c.dim;
  out.domain.kind = c.kind;
  for (const Cell& cell : c.cells) {
    std::vector<int> perm(cell.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      Cell flag;
      Cell prefix;
      for (int k : perm) {
        prefix.push_back(cell[k]);
        flag.push_back(vertex_for(prefix));
      }
      std::vector<int> tmp = perm;
      if (sort_sign(tmp) < 0 && flag.size() >= 2) std::swap(flag[0], flag[1]);
      out.domain.cells.push_back(std::move(flag));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  out.domain.vertex_count = static_cast<int>(images.size());
  out.images = std::move(images);
  return out;
}

Complex reversed(const Complex& c) {
  Complex out = c;
  if (c.dim >= 1)
    for (auto& cell : out.cells) std::swap(cell[0], cell[1]);
  return out;
}

PLMap reversed(const PLMap& m) {
  PLMap out = m;
  out.domain = reversed(m.domain);
  return out;
}

}  // namespace plg
