#pragma once

// Exact rational geometry: scalars, points, oriented simplicial complexes and
// piecewise-linear maps. Everything here is an immutable value type.

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace plg {

using Scalar = mpq_class;
using Point = std::vector<Scalar>;
using Cell = std::vector<int>;

/// Parses "p", "-p" or "p/q" (integers only, q != 0) into a canonical rational.
/// Anything else, including decimal notation, throws std::invalid_argument.
Scalar parse_scalar(const std::string& text);
/// n / d in canonical form (mpq_class(n, d) does not reduce).
Scalar ratio(long n, long d);
std::string to_string(const Scalar& s);
std::string to_string(const Point& p);

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator*(const Scalar& s, const Point& p);
Scalar dot(const Point& a, const Point& b);
Point zero_point(std::size_t dim);

/// Thrown for malformed complexes, maps and construction parameters.
class GeometryError : public std::runtime_error {
 public:
  enum class Kind {
    OrientationIncoherent,
    NonManifoldFace,
    BadIndex,
    BadBarycentric,
    BadParams,
    DimensionMismatch,
  };
  GeometryError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

enum class ComplexKind { ClosedPseudomanifold, PseudomanifoldWithBoundary, General };

/// Purely combinatorial oriented simplicial complex of homogeneous dimension.
/// A cell's orientation is the order of its vertex tuple.
struct Complex {
  int vertex_count = 0;
  int dim = 0;
  std::vector<Cell> cells;
  ComplexKind kind = ComplexKind::General;

  bool operator==(const Complex&) const = default;
};

struct ValidationReport {
  bool closed = false;           // pseudomanifold with empty boundary
  int boundary_faces = 0;
  std::size_t cell_count = 0;
};

/// Checks indices, vertex distinctness, the pseudomanifold face condition and
/// orientation coherence. Throws GeometryError on the first violation.
/// The `kind` flag is checked too: a ClosedPseudomanifold must have no
/// boundary faces.
ValidationReport validate_complex(const Complex& c);

/// Sign of the permutation that sorts `v` ascending (+1 / -1).
int sort_sign(std::vector<int>& v);

/// Oriented codimension-one faces appearing in exactly one cell, with the
/// induced orientation. For dim 1 the result is a 0-complex and the sign of
/// each boundary point is dropped.
Complex boundary(const Complex& c);

/// Staircase triangulation of |a| x |b|; product vertex (i, j) gets index
/// i * b.vertex_count + j. Each p-cell x q-cell yields C(p+q, p) simplices,
/// oriented as the product orientation (a first).
Complex product_triangulation(const Complex& a, const Complex& b);

/// Cycle complex 0 -> 1 -> ... -> n-1 -> 0.
Complex cycle_complex(int n);
/// Path complex 0 -> 1 -> ... -> n-1 (n-1 edges).
Complex path_complex(int n);
/// Boundary of the octahedron on vertices +e1,-e1,+e2,-e2,+e3,-e3 (indices 0..5).
Complex octahedron_complex();

struct PLMap {
  Complex domain;
  int ambient_dim = 0;
  std::vector<Point> images;

  /// Affine combination of the cell's vertex images. `bary` has dim+1
  /// entries, nonnegative and summing to one.
  Point evaluate(std::size_t cell, const std::vector<Scalar>& bary) const;

  bool operator==(const PLMap&) const = default;
};

PLMap make_map(Complex domain, std::vector<Point> images);
Point pl_evaluate(const PLMap& m, std::size_t cell, const std::vector<Scalar>& bary);

/// Cone over a closed pseudomanifold map: apex gets index vertex_count, every
/// cell (v0..vd) becomes (apex, v0..vd), so the base appears in the boundary
/// with its own orientation.
PLMap cone(const PLMap& m, const Point& apex);

/// Attaches cone cells over the given oriented boundary faces of `c`, with
/// orientation chosen so the result stays coherent. Returns the new apex index.
int cap_faces(Complex& c, const std::vector<Cell>& boundary_faces);

/// Barycentric subdivision. New vertices are the barycenters of every face,
/// mapped to the affine images of those barycenters.
PLMap barycentric_subdivide(const PLMap& m);

/// Map with every vertex image replaced by the image under `f`.
template <class F>
PLMap transform_images(const PLMap& m, F&& f) {
  PLMap out = m;
  for (auto& p : out.images) p = f(p);
  if (!out.images.empty()) out.ambient_dim = static_cast<int>(out.images.front().size());
  return out;
}

/// Orientation reversal: swaps the first two vertices of every cell (for
/// dim >= 1).
Complex reversed(const Complex& c);
PLMap reversed(const PLMap& m);

}  // namespace plg
