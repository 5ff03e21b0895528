#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "plg/constructions.hpp"

using namespace plg;

namespace {

Point pt(std::initializer_list<Scalar> xs) { return Point(xs); }

MapRef loop(const std::vector<Point>& pts) { return share(make_map(cycle_complex(static_cast<int>(pts.size())), pts)); }

// Signed crossings of the projection along z where c2 passes over c1,
// sign (d_over x d_under) . z. Written from the crossing picture, not from
// the engine.
long linking_oracle(const PLMap& c1, const PLMap& c2) {
  auto cross = [](const Point& u, const Point& v) -> Scalar { return u[0] * v[1] - u[1] * v[0]; };
  long total = 0;
  for (const auto& e1 : c1.domain.cells)
    for (const auto& e2 : c2.domain.cells) {
      Point p = c1.images[e1[0]], r = c1.images[e1[1]] - p;
      Point q = c2.images[e2[0]], s = c2.images[e2[1]] - q;
      Scalar den = cross(r, s);
      if (sgn(den) == 0) continue;
      Scalar t = cross(q - p, s) / den, u = cross(q - p, r) / den;
      if (t <= 0 || t >= 1 || u <= 0 || u >= 1) continue;
      Scalar z1 = p[2] + t * r[2], z2 = q[2] + u * s[2];
      if (z2 > z1) total += sgn(cross(s, r));
    }
  return total;
}

std::array<MapRef, 3> doodle() { return components<3>(build_borromean_doodle(), Role::OrnamentComponent); }

const std::array<Point, 3> kW{pt({3, 1}), pt({-1, 2}), pt({-2, -3})};

}  // namespace

TEST_CASE("validate_link_map examples") {
  auto hopf = build_hopf_link().with_role(Role::LinkComponent);
  CHECK(validate_link_map(hopf).ok);

  auto a = loop({pt({0, 0, 0}), pt({1, 0, 0}), pt({0, 1, 0})});
  auto b = loop({pt({1, 0, 0}), pt({2, 0, 1}), pt({2, 1, 0})});
  auto v = validate_link_map({a, b});
  CHECK_FALSE(v.ok);
  REQUIRE(v.points.size() >= 1);
  CHECK(v.points[0] == pt({1, 0, 0}));
  CHECK(v.where.find("1") != std::string::npos);

  CHECK(validate_link_map({a}).ok);
}

TEST_CASE("validate_ornament examples") {
  CHECK(validate_ornament(doodle()).ok);
  CHECK(validate_ornament(components<3>(build_split(3, 2), Role::OrnamentComponent)).ok);

  auto seg = [](Point p, Point q) {
    return share(make_map(Complex{2, 1, {{0, 1}}, ComplexKind::PseudomanifoldWithBoundary}, {p, q}));
  };
  auto v = validate_ornament({seg(pt({-1, 0}), pt({1, 0})), seg(pt({0, -1}), pt({0, 1})), seg(pt({-1, -1}), pt({1, 1}))});
  CHECK_FALSE(v.ok);
  REQUIRE(!v.points.empty());
  CHECK(v.points[0] == pt({0, 0}));
}

TEST_CASE("validate_pm_ne_0 examples") {
  auto s = build_split(3, 4).with_role(Role::LinkComponent);
  CHECK(validate_pm_ne_0(s[0], s[1], s[2]).ok);

  // f_0 shares the vertex (1,0,0,0) with f_+
  auto zero = share(make_map(octahedron_complex(), [] {
    std::vector<Point> p;
    for (int k = 0; k < 6; ++k) {
      Point x = pt({2, 0, 0, 0});
      x[k / 2] += k % 2 ? -1 : 1;
      p.push_back(x);
    }
    return p;
  }()));
  auto plus = share(make_map(octahedron_complex(), [] {
    std::vector<Point> p;
    for (int k = 0; k < 6; ++k) {
      Point x = pt({0, 0, 0, 0});
      x[k / 2] += k % 2 ? -1 : 1;
      p.push_back(x);
    }
    return p;
  }()));
  auto v = validate_pm_ne_0(plus, s[2], zero);
  CHECK_FALSE(v.ok);
  CHECK(v.where.find("+") != std::string::npos);
}

TEST_CASE("linking number of the Hopf link matches the crossing oracle") {
  auto c = build_hopf_link().with_role(Role::LinkComponent);
  auto r = linking_number(c[0], c[1], pt({0, 0, 1}));
  CHECK(std::abs(r.value) == 1);
  CHECK(r.value == linking_oracle(*c[0], *c[1]));

  for (auto v : {pt({3, 5, 7}), pt({-2, 7, 11}), pt({5, -3, 8})}) CHECK(linking_number(c[0], c[1], v).value == r.value);

  auto rev = share(reversed(*c[1]));
  CHECK(linking_number(c[0], rev, pt({0, 0, 1})).value == -r.value);
  CHECK(linking_number(share(reversed(*c[0])), c[1], pt({0, 0, 1})).value == -r.value);

  auto sub = share(barycentric_subdivide(*c[0]));
  CHECK(linking_number(sub, c[1], pt({0, 0, 1})).value == r.value);
}

TEST_CASE("linking number of a split pair is zero") {
  auto c = build_split(2, 3).with_role(Role::LinkComponent);
  CHECK(linking_number(c[0], c[1], pt({0, 0, 1})).value == 0);
  CHECK(linking_number(c[0], c[1], pt({3, 5, 7})).value == 0);
}

TEST_CASE("mu-breve of the Borromean doodle") {
  auto d = doodle();
  auto hom = doodle_mu_breve_homotopy(d, default_displacements(d));
  auto deg = doodle_mu_breve_degree(d, kW);
  CHECK(deg.value == 1);
  CHECK(hom.value == 1);
  CHECK(doodle_mu_breve_degree(d, {pt({5, -4}), pt({-2, 7}), pt({-3, -3})}).value == 1);
  CHECK(doodle_mu_breve_homotopy(d, default_displacements(d, 1)).value == 1);
}

TEST_CASE("mu-breve symmetry") {
  auto d = doodle();
  CHECK(doodle_mu_breve_degree({d[1], d[2], d[0]}, kW).value == 1);
  CHECK(doodle_mu_breve_degree({d[1], d[0], d[2]}, kW).value == -1);
  CHECK(doodle_mu_breve_homotopy({d[0], d[2], d[1]}, default_displacements(d)).value == -1);
}

TEST_CASE("mu-breve of split doodles vanishes") {
  auto d = components<3>(build_split(3, 2), Role::OrnamentComponent);
  CHECK(validate_link_map({d[0], d[1], d[2]}).ok);
  CHECK(doodle_mu_breve_degree(d, kW).value == 0);
  CHECK(doodle_mu_breve_homotopy(d, default_displacements(d)).value == 0);
}

TEST_CASE("mu-breve rejects a non-ornament") {
  auto d = doodle();
  auto seg = [](Point p, Point q) {
    return share(make_map(Complex{2, 1, {{0, 1}}, ComplexKind::PseudomanifoldWithBoundary}, {p, q}));
  };
  std::array<MapRef, 3> bad{seg(pt({-1, 0}), pt({1, 0})), seg(pt({0, -1}), pt({0, 1})), seg(pt({-1, -1}), pt({1, 1}))};
  CHECK_THROWS_AS(doodle_mu_breve_degree(bad, kW), ValidationError);
  CHECK_THROWS_AS(doodle_mu_breve_degree(d, {pt({1, 0}), pt({1, 0}), pt({-2, 0})}), std::invalid_argument);
}

TEST_CASE("mu of the Borromean rings with flat disks") {
  Scene s = build_borromean_disks(2, 1);
  auto curves = components<3>(s, Role::LinkComponent);
  auto disks = components<3>(s, Role::SpanningSurface);
  for (int i = 0; i < 3; ++i) CHECK(boundary_matches(*disks[i], *curves[i]));
  auto r = milnor_mu(curves, disks);
  CHECK(std::abs(r.value) == 1);
  REQUIRE(r.witnesses.size() == 1);
  const Witness& w = r.witnesses[0];
  CHECK(disks[0]->evaluate(w.cells[0], w.bary[0]) == pt({0, 0, 0}));

  Scene alt = build_borromean_alt_disks(2, 1);
  CHECK(milnor_mu(curves, components<3>(alt, Role::SpanningSurface)).value == r.value);
}

TEST_CASE("mu of a split link is zero") {
  Scene s = build_split(3, 3);
  auto r = milnor_mu(components<3>(s, Role::LinkComponent), components<3>(s, Role::SpanningSurface));
  CHECK(r.value == 0);
  CHECK(r.witnesses.empty());
}

TEST_CASE("mu rejects a spanning system violating (123)") {
  Scene s = build_borromean_disks(2, 1);
  auto curves = components<3>(s, Role::LinkComponent);
  auto disks = components<3>(s, Role::SpanningSurface);
  // a disk with the wrong boundary
  CHECK_THROWS_AS(milnor_mu(curves, {disks[1], disks[1], disks[2]}), ValidationError);
  // flat cones from the origin satisfy (123) but meet at their apex vertex
  std::array<MapRef, 3> cones;
  for (int i = 0; i < 3; ++i) cones[i] = share(cone_null_homotopy(*curves[i], pt({0, 0, 0})));
  CHECK_THROWS_AS(milnor_mu(curves, cones), DegeneracyError);
}

TEST_CASE("diagonal disks are degenerate") {
  Scene s = build_borromean_diagonal_disks(2, 1);
  CHECK_THROWS_AS(
      milnor_mu(components<3>(s, Role::LinkComponent), components<3>(s, Role::SpanningSurface)), DegeneracyError);
}

TEST_CASE("hexagonality of constant families") {
  Scene sp = build_split(3, 3);
  auto h = build_constant_family(components<3>(sp, Role::LinkComponent));
  CHECK(family_edges_agree(h));
  CHECK(verify_hexagonal(h).ok);
  CHECK(mu_star(h, {pt({3, 1, -2}), pt({-1, 2, 5}), pt({-2, -3, -3})}).value == 0);

  // components 1 and 2 cross: faces t3 = c must fail
  auto c = components<3>(sp, Role::LinkComponent);
  auto moved = share(transform_images(*c[0], [](Point p) {
    p[0] += 1;
    return p;
  }));
  auto bad = build_constant_family({c[0], moved, c[2]});
  auto v = verify_hexagonal(bad);
  CHECK_FALSE(v.ok);
  CHECK(v.where.find("t3") != std::string::npos);
}

TEST_CASE("beta invariants of split link maps vanish") {
  auto s = build_split(3, 4).with_role(Role::LinkComponent);
  const Point u = pt({2, 3, 5, 7}), w = pt({-3, 1, 4, -2});
  CHECK(beta_hat_rays(s[0], s[1], s[2], u, w).value == 0);
  CHECK(beta_hat_homotopy(s[0], s[1], s[2], pt({1, 2, 3, 40}), pt({4, -3, 1, 41})).value == 0);
  CHECK(beta_parity(s[0], s[1], pt({9, 4, -5, 3})).value == 0);
  CHECK(beta_star(s[0], s[1], u, w).value == 0);
}

TEST_CASE("beta-hat of a doubled map vanishes") {
  auto s = build_split(2, 4);
  Scene d = double_link_map(s);
  auto t = d.with_role(Role::LinkComponent);
  CHECK(validate_pm_ne_0(t[0], t[1], t[2]).ok);
  CHECK(beta_hat_rays(t[0], t[1], t[2], pt({2, 3, 5, 7}), pt({-3, 1, 4, -2})).value == 0);
}

TEST_CASE("apex on an image is rejected") {
  auto s = build_split(2, 4).with_role(Role::LinkComponent);
  CHECK_THROWS_AS(beta_parity(s[0], s[1], pt({1, 0, 0, 0})), ValidationError);
}

TEST_CASE("unsupported dimensions are rejected") {
  auto planar = build_split(2, 2).with_role(Role::OrnamentComponent);
  CHECK_THROWS_AS(linking_number(planar[0], planar[1], pt({0, 1})), std::invalid_argument);
  auto c = build_hopf_link().with_role(Role::LinkComponent);
  CHECK_THROWS_AS(linking_number(c[0], c[1], pt({0, 0, 0})), std::invalid_argument);
}

TEST_CASE("translation prism") {
  auto c = build_hopf_link().with_role(Role::LinkComponent);
  PLMap p = translation_prism(*c[0], pt({1, 0, 0}));
  CHECK(p.ambient_dim == 4);
  CHECK(p.domain.dim == 2);
  CHECK(p.domain.cells.size() == 2 * c[0]->domain.cells.size());
  CHECK(point_on_image(p, pt({-1, -1, 0, 1})));
  CHECK_FALSE(point_on_image(p, pt({-1, -1, 0, 2})));
}

TEST_CASE("beta parity survives subdivision of coplanar cells") {
  // sub-triangles of one triangle cone to cells in a common 3-flat; their
  // singular tuples only touch the diagonal and are not double points
  auto g = build_cor33_linkmap().with_role(Role::LinkComponent);
  const Point apex = pt({9, 4, -5, 3});
  auto r = beta_parity(g[0], g[1], apex);
  auto s = beta_parity(share(barycentric_subdivide(*g[0])), g[1], apex);
  CHECK(s.value == r.value);
  CHECK(s.witnesses.size() == r.witnesses.size());
}
