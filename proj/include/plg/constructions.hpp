#pragma once

// Builders for the standard examples: Borromean rings, disks, doodle, Hopf
// and split links, overpass lifts, doublings, cones and the hexagonal family.

#include "plg/invariants.hpp"

#include <array>
#include <cstdint>
#include <string>

namespace plg {

class ConstructionError : public std::runtime_error {
 public:
  enum class Kind { BadParams, ApexOnImage, NonGenericCrossing, CertificationFailed };
  ConstructionError(Kind k, const std::string& what) : std::runtime_error(what), kind_(k) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

using MapTriple = std::array<MapRef, 3>;
using MapPair = std::array<MapRef, 2>;

/// Components of `s` with role `r`; throws unless there are exactly N.
template <std::size_t N>
std::array<MapRef, N> components(const Scene& s, Role r) {
  auto v = s.with_role(r);
  if (v.size() != N)
    throw std::invalid_argument("scene has " + std::to_string(v.size()) + " components with role " + to_string(r) +
                                ", expected " + std::to_string(N));
  std::array<MapRef, N> out;
  for (std::size_t k = 0; k < N; ++k) out[k] = v[k];
  return out;
}

/// Quadrilaterals (±a,0,0),(0,±b,0) / (0,±a,0),(0,0,±b) / (0,0,±a),(±b,0,0).
Scene build_borromean_rings(const Scalar& a, const Scalar& b);
/// Rings plus flat fan disks from off-axis interior apexes.
Scene build_borromean_disks(const Scalar& a, const Scalar& b);
/// Rings plus a second spanning system: cones with apexes lifted off the
/// coordinate planes.
Scene build_borromean_alt_disks(const Scalar& a, const Scalar& b);
/// Rings plus flat disks split along a diagonal through the origin (the
/// triple point lands on a shared edge).
Scene build_borromean_diagonal_disks(const Scalar& a, const Scalar& b);

Scene build_borromean_doodle();
Scene build_hopf_link();
/// n components in disjoint slabs: closed curves for dim 2 and 3, octahedral
/// spheres for dim 4. For dim 3 each curve also gets a cone disk D_k.
Scene build_split(int n, int dim);
/// g_0 the standard octahedral sphere in R^4; g_* a sphere collapsed onto a
/// hexagon linking g_0, then perturbed by a seeded offset.
Scene build_cor33_linkmap();

/// Overpass lift of a planar ornament into R^3.
Scene lift_doodle(const Scene& doodle);
/// Spanning system of a lifted doodle: vertical walls, a rising translation
/// and cone caps. Satisfies the (123) condition.
Scene lift_spanning_system(const Scene& lifted);

/// Components +, -, 0 from a two-component link map. A nonzero magnitude
/// perturbs the + copy and re-certifies disjointness from g_0.
Scene double_link_map(const Scene& g, const Scalar& magnitude = 0, std::uint64_t seed = 0);

PLMap cone_null_homotopy(const PLMap& f, const Point& apex);
std::vector<PLMap> translation_homotopy(const Scene& s, const std::vector<Point>& displacements);

enum class RandomKind { Doodle, PmTriple, LinkMapR4 };
RandomKind parse_random_kind(const std::string& s);
/// Seeded scene certified by its validator; uncertified draws move on to
/// the next seed deterministically.
Scene random_scene(RandomKind kind, std::uint64_t seed);

/// Hexagonal boundary-of-cube family whose corner (0,0,0) is the Borromean
/// rings scaled into the ball of radius 1/3. `grid` subdivisions per face side
/// (a positive multiple of 6).
HexFamily build_borromean_hexagonal_family(const Scalar& a, const Scalar& b, int grid = 6);
/// The constant family at a link map in R^3.
HexFamily build_constant_family(const MapTriple& link, int grid = 3);
/// Exact agreement of face restrictions on shared cube edges.
bool family_edges_agree(const HexFamily& h);
/// Component images at a cube corner (each coordinate 0 or 1).
std::array<std::vector<Point>, 3> family_corner(const HexFamily& h, int t1, int t2, int t3);

}  // namespace plg
