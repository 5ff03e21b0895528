#pragma once

// Signed counting of isolated solutions of affine coincidence / ray systems
// over tuples of cells of PL maps, plus exact emptiness certificates.

#include "plg/exactgeom.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace plg {

using MapRef = std::shared_ptr<const PLMap>;

inline MapRef share(PLMap m) { return std::make_shared<const PLMap>(std::move(m)); }

/// Interval for an auxiliary scalar. signed_count treats it as open,
/// verify_empty as closed. A missing upper end means +infinity.
struct AuxBound {
  Scalar lo = 0;
  std::optional<Scalar> hi;

  static AuxBound positive() { return {Scalar(0), std::nullopt}; }
  static AuxBound unit() { return {Scalar(0), Scalar(1)}; }
};

struct Constraint {
  enum class Kind { Coincide, RayDiff, Pin };

  Kind kind = Kind::Coincide;
  int i = 0;
  int j = 0;
  std::vector<int> coords;  // ambient coordinates involved; empty = all
  Point direction;          // RayDiff only, indexed like `coords`
  int aux = -1;             // RayDiff only
  Scalar value;             // Pin only

  /// g_i(x_i) - g_j(x_j) = 0 on the selected coordinates.
  static Constraint coincide(int i, int j, std::vector<int> coords = {});
  /// g_i(x_i) - g_j(x_j) - alpha_aux * direction = 0 on the selected coordinates.
  static Constraint ray_diff(int i, int j, Point direction, int aux, std::vector<int> coords = {});
  /// g_i(x_i)[coord] = value.
  static Constraint pin(int i, int coord, Scalar value);
};

struct CoincidenceProblem {
  std::vector<MapRef> factors;
  std::vector<Constraint> constraints;
  std::vector<AuxBound> aux;
  /// Factor pairs that are the same map used twice: identical cell pairs are
  /// skipped and solutions with equal domain points are not double points.
  std::vector<std::pair<int, int>> self_pairs;

  int unknown_count() const;
  int equation_count() const;
  bool well_posed() const { return unknown_count() == equation_count(); }
};

struct Witness {
  std::vector<int> cells;
  std::vector<std::vector<Scalar>> bary;  // per factor, dim+1 entries
  std::vector<Scalar> aux;
  int sign = 0;

  bool operator<(const Witness& o) const { return cells < o.cells; }
};

struct SignedCountResult {
  long total = 0;
  std::vector<Witness> witnesses;  // sorted by cell tuple
  long long tuples_examined = 0;   // tuples surviving the bounding-box filter
  bool generic = true;
};

enum class DegeneracyKind { SingularConsistent, CellBoundary, AuxBoundary };

std::string to_string(DegeneracyKind k);

struct DegeneracyReport {
  std::vector<int> cells;
  DegeneracyKind kind = DegeneracyKind::SingularConsistent;
  std::string describe() const;
};

class DegeneracyError : public std::runtime_error {
 public:
  explicit DegeneracyError(DegeneracyReport r) : std::runtime_error(r.describe()), report_(std::move(r)) {}
  const DegeneracyReport& report() const { return report_; }

 private:
  DegeneracyReport report_;
};

struct EngineOptions {
  unsigned workers = 0;  // 0 = hardware concurrency
};

/// Signed count of interior solutions. Throws DegeneracyError (reporting the
/// lexicographically first offending tuple) when the problem is not generic.
/// Throws std::invalid_argument when the system is not square.
SignedCountResult signed_count(const CoincidenceProblem& p, const EngineOptions& opts = {});

struct EmptinessResult {
  bool empty = true;
  // violation data when !empty
  std::vector<int> cells;
  std::vector<std::vector<Scalar>> bary;
  std::vector<Scalar> aux;
  std::vector<Point> points;  // image of each factor at the feasible point
  long long tuples_examined = 0;
};

/// Exact feasibility of the constraint system over every closed cell tuple.
/// The system may be under- or over-determined.
EmptinessResult verify_empty(const CoincidenceProblem& p, const EngineOptions& opts = {});

/// Adds deterministic pseudo-random offsets k/1000 * magnitude, k in
/// [-1000, 1000], to every coordinate of every vertex image.
PLMap perturb(const PLMap& m, const Scalar& magnitude, std::uint64_t seed);

/// Domain point of a witness factor as sorted (vertex, weight) pairs with
/// positive weight.
std::vector<std::pair<int, Scalar>> domain_point(const PLMap& m, int cell, const std::vector<Scalar>& bary);

}  // namespace plg
