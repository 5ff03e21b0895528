#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "plg/coincidence.hpp"

using namespace plg;

namespace {

Point pt(std::initializer_list<Scalar> xs) { return Point(xs); }

Complex edge() { return Complex{2, 1, {{0, 1}}, ComplexKind::PseudomanifoldWithBoundary}; }
Complex triangle() { return Complex{3, 2, {{0, 1, 2}}, ComplexKind::PseudomanifoldWithBoundary}; }

MapRef segment(Point a, Point b) { return share(make_map(edge(), {std::move(a), std::move(b)})); }

CoincidenceProblem crossing(MapRef a, MapRef b) {
  CoincidenceProblem p;
  p.factors = {std::move(a), std::move(b)};
  p.constraints = {Constraint::coincide(0, 1)};
  return p;
}

// planar polyline with n segments
MapRef polyline(const std::vector<Point>& pts, bool closed) {
  const int n = static_cast<int>(pts.size());
  Complex c = closed ? cycle_complex(n) : path_complex(n);
  return share(make_map(c, pts));
}

// independent oracle: signed intersections of two polylines using cross
// products; the engine's sign is det[r, -s] = -cross(r, s)
long crossing_oracle(const std::vector<Point>& a, bool ca, const std::vector<Point>& b, bool cb, long* count = nullptr) {
  auto cross = [](const Point& u, const Point& v) -> Scalar { return u[0] * v[1] - u[1] * v[0]; };
  long total = 0;
  const std::size_t na = ca ? a.size() : a.size() - 1, nb = cb ? b.size() : b.size() - 1;
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) {
      Point p = a[i], r = a[(i + 1) % a.size()] - a[i];
      Point q = b[j], s = b[(j + 1) % b.size()] - b[j];
      Scalar den = cross(r, s);
      if (sgn(den) == 0) continue;
      Scalar t = cross(q - p, s) / den, u = cross(q - p, r) / den;
      if (t > 0 && t < 1 && u > 0 && u < 1) {
        total -= sgn(den);
        if (count) ++*count;
      }
    }
  return total;
}

}  // namespace

TEST_CASE("single transversal crossing") {
  auto a = segment(pt({0, 0}), pt({2, 2}));
  auto b = segment(pt({0, 2}), pt({2, 0}));
  auto r = signed_count(crossing(a, b));
  CHECK(std::abs(r.total) == 1);
  REQUIRE(r.witnesses.size() == 1);
  const auto& w = r.witnesses[0];
  CHECK(a->evaluate(w.cells[0], w.bary[0]) == pt({1, 1}));
  CHECK(b->evaluate(w.cells[1], w.bary[1]) == pt({1, 1}));
  CHECK(r.total == w.sign);

  auto rb = signed_count(crossing(a, share(reversed(*b))));
  CHECK(rb.total == -r.total);

  auto far = segment(pt({5, 5}), pt({6, 7}));
  auto rd = signed_count(crossing(a, far));
  CHECK(rd.total == 0);
  CHECK(rd.witnesses.empty());
}

TEST_CASE("sign agrees with the planar cross-product oracle") {
  std::vector<Point> sq{pt({0, 0}), pt({4, 0}), pt({4, 4}), pt({0, 4})};
  std::vector<Point> zig{pt({-1, 1}), pt({2, 5}), pt({3, -1}), pt({6, 3}), pt({Scalar(7, 2), Scalar(1, 7)})};
  auto r = signed_count(crossing(polyline(sq, true), polyline(zig, false)));
  long count = 0;
  CHECK(r.total == crossing_oracle(sq, true, zig, false, &count));
  CHECK(static_cast<long>(r.witnesses.size()) == count);
  CHECK(count > 2);
  // closed curves cross algebraically zero times
  std::vector<Point> tri{pt({-1, 1}), pt({5, 2}), pt({1, 6})};
  auto rc = signed_count(crossing(polyline(sq, true), polyline(tri, true)));
  CHECK(rc.total == 0);
  CHECK(rc.total == crossing_oracle(sq, true, tri, true));
}

TEST_CASE("degeneracies are reported") {
  auto a = segment(pt({0, 0}), pt({2, 2}));
  SUBCASE("crossing at a vertex") {
    auto b = polyline({pt({0, 2}), pt({1, 1}), pt({2, 0})}, false);
    try {
      signed_count(crossing(a, b));
      FAIL("expected degeneracy");
    } catch (const DegeneracyError& e) {
      CHECK(e.report().kind == DegeneracyKind::CellBoundary);
      CHECK(e.report().cells == std::vector<int>{0, 0});
    }
  }
  SUBCASE("overlapping collinear segments") {
    auto b = segment(pt({1, 1}), pt({3, 3}));
    try {
      signed_count(crossing(a, b));
      FAIL("expected degeneracy");
    } catch (const DegeneracyError& e) {
      CHECK(e.report().kind == DegeneracyKind::SingularConsistent);
    }
  }
  SUBCASE("parallel disjoint segments are fine") {
    auto b = segment(pt({1, 0}), pt({3, 2}));
    CHECK(signed_count(crossing(a, b)).total == 0);
  }
}

TEST_CASE("non-square systems are rejected") {
  auto a = segment(pt({0, 0, 0}), pt({2, 2, 0}));
  auto b = segment(pt({0, 2, 0}), pt({2, 0, 0}));
  CHECK_THROWS_AS(signed_count(crossing(a, b)), std::invalid_argument);
}

TEST_CASE("ray constraint counts crossings seen from a direction") {
  // over-strand in 3D above the under-strand; ray from over to under along -z
  auto over = segment(pt({0, 0, 1}), pt({2, 2, 1}));
  auto under = segment(pt({0, 2, 0}), pt({2, 0, 0}));
  CoincidenceProblem p;
  p.factors = {over, under};
  p.aux = {AuxBound::positive()};
  p.constraints = {Constraint::ray_diff(0, 1, pt({0, 0, 1}), 0)};
  auto r = signed_count(p);
  CHECK(std::abs(r.total) == 1);
  REQUIRE(r.witnesses.size() == 1);
  CHECK(r.witnesses[0].aux[0] == 1);
  // opposite direction sees nothing
  p.constraints = {Constraint::ray_diff(0, 1, pt({0, 0, -1}), 0)};
  CHECK(signed_count(p).witnesses.empty());
  // bounded aux excluding the hit
  p.constraints = {Constraint::ray_diff(0, 1, pt({0, 0, 2}), 0)};
  p.aux = {AuxBound{Scalar(0), Scalar(1, 4)}};
  CHECK(signed_count(p).witnesses.empty());
  p.aux = {AuxBound{Scalar(0), Scalar(1, 2)}};
  CHECK_THROWS_AS(signed_count(p), DegeneracyError);
}

TEST_CASE("subdivision invariance and orientation equivariance") {
  std::vector<Point> sq{pt({0, 0}), pt({4, 0}), pt({4, 4}), pt({0, 4})};
  std::vector<Point> zig{pt({-1, 1}), pt({2, 5}), pt({3, -1}), pt({6, 3}), pt({Scalar(7, 2), Scalar(1, 7)})};
  auto a = polyline(sq, true);
  auto b = polyline(zig, false);
  auto base = signed_count(crossing(a, b)).total;
  CHECK(signed_count(crossing(share(barycentric_subdivide(*a)), b)).total == base);
  CHECK(signed_count(crossing(a, share(barycentric_subdivide(*b)))).total == base);
  CHECK(signed_count(crossing(share(reversed(*a)), b)).total == -base);

  // 2-dimensional factor: triangle vs point-like pin in the plane
  auto tri = share(make_map(triangle(), {pt({0, 0}), pt({3, 0}), pt({0, 3})}));
  auto seg = segment(pt({1, 1}), pt({1, 2}));
  CoincidenceProblem p;
  p.factors = {tri, seg};
  p.constraints = {Constraint::coincide(0, 1, {0, 1}), Constraint::pin(1, 1, Scalar(3, 2))};
  auto r = signed_count(p);
  REQUIRE(r.witnesses.size() == 1);
  p.factors[0] = share(reversed(*tri));
  CHECK(signed_count(p).total == -r.total);
  p.factors[0] = share(barycentric_subdivide(*tri));
  CHECK(signed_count(p).total == r.total);
}

TEST_CASE("self coincidence skips the diagonal") {
  // figure-eight-like closed curve with one self crossing
  std::vector<Point> pts{pt({0, 0}), pt({2, 2}), pt({2, 0}), pt({0, 2})};
  auto c = polyline(pts, true);
  CoincidenceProblem p;
  p.factors = {c, c};
  p.constraints = {Constraint::coincide(0, 1)};
  p.self_pairs = {{0, 1}};
  auto r = signed_count(p);
  CHECK(r.witnesses.size() == 2);  // each double point seen as (x,y) and (y,x)
  for (const auto& w : r.witnesses) CHECK(w.cells[0] != w.cells[1]);
}

TEST_CASE("verify_empty") {
  auto t1 = share(make_map(triangle(), {pt({0, 0}), pt({1, 0}), pt({0, 1})}));
  auto t2 = share(make_map(triangle(), {pt({3, 3}), pt({4, 3}), pt({3, 4})}));
  CoincidenceProblem p = crossing(t1, t2);
  auto ok = verify_empty(p);
  CHECK(ok.empty);
  auto t3 = share(make_map(triangle(), {pt({1, 0}), pt({2, 0}), pt({2, 1})}));
  auto bad = verify_empty(crossing(t1, t3));
  REQUIRE_FALSE(bad.empty);
  CHECK(bad.points[0] == pt({1, 0}));
  CHECK(bad.points[1] == pt({1, 0}));
}

TEST_CASE("worker count does not change results") {
  std::vector<Point> sq{pt({0, 0}), pt({4, 0}), pt({4, 4}), pt({0, 4})};
  std::vector<Point> zig{pt({-1, 1}), pt({2, 5}), pt({3, -1}), pt({6, 3}), pt({Scalar(7, 2), Scalar(1, 7)})};
  auto p = crossing(polyline(sq, true), polyline(zig, false));
  auto r1 = signed_count(p, EngineOptions{1});
  auto r4 = signed_count(p, EngineOptions{4});
  CHECK(r1.total == r4.total);
  REQUIRE(r1.witnesses.size() == r4.witnesses.size());
  for (std::size_t k = 0; k < r1.witnesses.size(); ++k) CHECK(r1.witnesses[k].cells == r4.witnesses[k].cells);
}

TEST_CASE("perturb") {
  auto a = make_map(edge(), {pt({0, 0}), pt({2, 4})});
  CHECK(perturb(a, 0, 7) == a);
  CHECK(perturb(a, Scalar(1, 10), 7) == perturb(a, Scalar(1, 10), 7));
  auto q = perturb(a, Scalar(1, 10), 7);
  for (std::size_t v = 0; v < a.images.size(); ++v)
    for (std::size_t k = 0; k < 2; ++k) CHECK(abs(q.images[v][k] - a.images[v][k]) <= Scalar(1, 10));
  CHECK_FALSE(q == a);
}
