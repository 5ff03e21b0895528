#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "plg/exactgeom.hpp"

using namespace plg;

namespace {

Point pt(std::initializer_list<long> xs) {
  Point p;
  for (long x : xs) p.emplace_back(x);
  return p;
}

long binom(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Complex triangle() { return Complex{3, 2, {{0, 1, 2}}, ComplexKind::PseudomanifoldWithBoundary}; }
Complex edge() { return Complex{2, 1, {{0, 1}}, ComplexKind::PseudomanifoldWithBoundary}; }

}  // namespace

TEST_CASE("scalars parse exactly and reject floats") {
  CHECK(parse_scalar("3/6") == Scalar(1, 2));
  CHECK(parse_scalar("-7") == Scalar(-7));
  CHECK(to_string(parse_scalar("-4/8")) == "-1/2");
  CHECK_THROWS_AS(parse_scalar("0.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scalar("1e3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scalar("1/0"), std::invalid_argument);
}

TEST_CASE("validate_complex examples") {
  auto oct = validate_complex(octahedron_complex());
  CHECK(oct.closed);
  CHECK(oct.cell_count == 8);

  Complex bad{4, 2, {{0, 1, 2}, {0, 1, 3}}, ComplexKind::PseudomanifoldWithBoundary};
  try {
    validate_complex(bad);
    FAIL("expected OrientationIncoherent");
  } catch (const GeometryError& e) {
    CHECK(e.kind() == GeometryError::Kind::OrientationIncoherent);
  }

  Complex tri{3, 1, {{0, 1}, {1, 2}, {2, 0}}, ComplexKind::ClosedPseudomanifold};
  CHECK(validate_complex(tri).closed);

  Complex fan{5, 2, {{0, 1, 2}, {1, 0, 3}, {0, 1, 4}}, ComplexKind::PseudomanifoldWithBoundary};
  try {
    validate_complex(fan);
    FAIL("expected NonManifoldFace");
  } catch (const GeometryError& e) {
    CHECK(e.kind() == GeometryError::Kind::NonManifoldFace);
  }

  Complex idx{2, 1, {{0, 2}}, ComplexKind::General};
  CHECK_THROWS_AS(validate_complex(idx), GeometryError);
}

TEST_CASE("pl_evaluate examples") {
  auto seg = make_map(edge(), {pt({0, 0}), pt({2, 4})});
  CHECK(pl_evaluate(seg, 0, {Scalar(1, 2), Scalar(1, 2)}) == pt({1, 2}));
  CHECK(pl_evaluate(seg, 0, {Scalar(0), Scalar(1)}) == pt({2, 4}));
  auto tri = make_map(triangle(), {pt({0, 0}), pt({3, 0}), pt({0, 3})});
  CHECK(pl_evaluate(tri, 0, {Scalar(1, 3), Scalar(1, 3), Scalar(1, 3)}) == pt({1, 1}));
  CHECK_THROWS_AS(pl_evaluate(tri, 0, {Scalar(1), Scalar(1), Scalar(-1)}), GeometryError);
  CHECK_THROWS_AS(pl_evaluate(tri, 0, {Scalar(1, 2), Scalar(1, 4), Scalar(1, 8)}), GeometryError);
}

TEST_CASE("product_triangulation counts") {
  CHECK(product_triangulation(edge(), edge()).cells.size() == 2);
  CHECK(product_triangulation(triangle(), edge()).cells.size() == 3);
  auto hex = product_triangulation(cycle_complex(6), edge());
  CHECK(hex.cells.size() == 12);
  validate_complex(hex);

  // cell count formula and closedness on closed factors
  auto oct = octahedron_complex();
  auto prod = product_triangulation(oct, cycle_complex(4));
  CHECK(static_cast<long>(prod.cells.size()) == 8 * 4 * binom(3, 2));
  CHECK(validate_complex(prod).closed);
  CHECK(boundary(prod).cells.empty());
}

TEST_CASE("boundary examples") {
  auto b = boundary(triangle());
  CHECK(b.cells.size() == 3);
  CHECK(validate_complex(Complex{b.vertex_count, b.dim, b.cells, ComplexKind::ClosedPseudomanifold}).closed);
  CHECK(boundary(octahedron_complex()).cells.empty());

  // edge x edge square on vertices 0=(0,0),1=(0,1),2=(1,0),3=(1,1):
  // boundary cycle 0->2->3->1->0 (product orientation, a first)
  auto sq = boundary(product_triangulation(edge(), edge()));
  REQUIRE(sq.cells.size() == 4);
  std::vector<Cell> expect{{0, 2}, {2, 3}, {3, 1}, {1, 0}};
  for (const auto& e : expect) CHECK(std::find(sq.cells.begin(), sq.cells.end(), e) != sq.cells.end());
}

TEST_CASE("reversing a cell flips its boundary") {
  auto b = boundary(triangle());
  auto r = boundary(reversed(triangle()));
  REQUIRE(b.cells.size() == r.cells.size());
  for (const auto& e : b.cells)
    CHECK(std::find(r.cells.begin(), r.cells.end(), Cell{e[1], e[0]}) != r.cells.end());
}

TEST_CASE("cone examples") {
  std::vector<Point> oct_images;
  for (int a = 0; a < 3; ++a)
    for (int s : {1, -1}) {
      Point p = zero_point(3);
      p[a] = s;
      oct_images.push_back(p);
    }
  auto oct = make_map(octahedron_complex(), oct_images);
  auto c = cone(oct, pt({0, 0, 0}));
  CHECK(c.domain.cells.size() == 8);
  CHECK(c.domain.vertex_count == 7);
  validate_complex(c.domain);
  auto bd = boundary(c.domain);
  CHECK(bd.cells == oct.domain.cells);
  for (int v = 0; v < 6; ++v) CHECK(c.images[v] == oct.images[v]);

  Complex cyc = cycle_complex(3);
  auto tri = make_map(cyc, {pt({1, 0, 0}), pt({0, 1, 0}), pt({-1, -1, 0})});
  auto tc = cone(tri, pt({0, 0, 5}));
  CHECK(tc.domain.cells.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) CHECK(tc.evaluate(k, {Scalar(1), Scalar(0), Scalar(0)}) == pt({0, 0, 5}));
}

TEST_CASE("barycentric subdivision") {
  auto seg = make_map(edge(), {pt({0, 0}), pt({2, 4})});
  auto s1 = barycentric_subdivide(seg);
  CHECK(s1.domain.cells.size() == 2);
  auto tri = make_map(triangle(), {pt({0, 0}), pt({3, 0}), pt({0, 3})});
  auto s2 = barycentric_subdivide(tri);
  CHECK(s2.domain.cells.size() == 6);
  validate_complex(s2.domain);
  // orientation agrees with the original: boundary of the subdivision runs the same way
  auto bd = boundary(s2.domain);
  CHECK(bd.cells.size() == 6);

  // same underlying map: the centroid lies in every small triangle, and each
  // small triangle's vertices evaluate to points of the original triangle
  for (std::size_t k = 0; k < s2.domain.cells.size(); ++k) {
    Scalar third(1, 3);
    Point p = s2.evaluate(k, {third, third, third});
    // recover barycentrics on the original: p = (3 b1, 3 b2)
    Scalar b1 = p[0] / 3, b2 = p[1] / 3;
    CHECK(pl_evaluate(tri, 0, {1 - b1 - b2, b1, b2}) == p);
  }
}

TEST_CASE("sort_sign") {
  std::vector<int> v{2, 0, 1};
  CHECK(sort_sign(v) == 1);
  CHECK(v == std::vector<int>{0, 1, 2});
  std::vector<int> w{1, 0, 2};
  CHECK(sort_sign(w) == -1);
}
