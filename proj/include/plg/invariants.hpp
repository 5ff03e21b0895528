#pragma once

// Gauss-type invariants of PL link maps and ornaments as signed counts of
// coincidence/ray systems, with the side-condition validators.

#include "plg/coincidence.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace plg {

enum class Role { LinkComponent, OrnamentComponent, SpanningSurface, NullHomotopy, FamilyFace };

std::string to_string(Role r);
Role parse_role(const std::string& s);

struct Component {
  std::string name;
  Role role = Role::LinkComponent;
  MapRef map;
};

/// One face t_k = value of the cube boundary. maps[i] is component i over
/// S^1 x (face square); images are R^3 x R^2, the last two coordinates being
/// the free cube parameters in increasing index order.
struct HexFace {
  int k = 0;
  int value = 0;
  int sign = 1;  // orientation of the face chart in the boundary of I^3
  std::array<MapRef, 3> maps;
};

struct HexFamily {
  std::vector<HexFace> faces;  // six faces, any order
};

struct Scene {
  int ambient_dim = 0;
  std::vector<Component> components;
  std::optional<HexFamily> hex;

  std::vector<MapRef> with_role(Role r) const;
  const Component* find(const std::string& name) const;
};

/// Outcome of an emptiness-type validator.
struct Validation {
  bool ok = true;
  std::string check;
  std::string where;             // names the pair / face / edge on failure
  std::vector<Point> points;     // common point(s) on failure
  long long tuples_examined = 0;

  std::string describe() const;
};

/// Thrown when an invariant's preconditions fail.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(Validation v) : std::runtime_error(v.describe()), v_(std::move(v)) {}
  const Validation& validation() const { return v_; }

 private:
  Validation v_;
};

struct InvariantReport {
  std::string invariant;
  long value = 0;
  bool is_parity = false;
  std::vector<Witness> witnesses;
  std::vector<std::string> certificates;
  std::vector<Point> directions;
  std::vector<Point> apexes;
  std::optional<std::uint64_t> seed;
  long long tuples_examined = 0;
  double timing_ms = 0;
};

// Sign normalizations (see README): each algorithm's raw count is multiplied
// by its constant.
inline constexpr int kLinkingSign = -1;
inline constexpr int kDoodleDegreeSign = -1;
inline constexpr int kDoodleHomotopySign = 1;
inline constexpr int kMilnorSign = kDoodleHomotopySign;
inline constexpr int kMuStarSign = -1;

Validation validate_link_map(const std::vector<MapRef>& comps, const EngineOptions& opts = {});
Validation validate_ornament(const std::array<MapRef, 3>& comps, const EngineOptions& opts = {});
Validation validate_pm_ne_0(const MapRef& plus, const MapRef& minus, const MapRef& zero,
                            const EngineOptions& opts = {});

InvariantReport linking_number(const MapRef& c1, const MapRef& c2, const Point& v, const EngineOptions& opts = {});

/// Counts 1=2=3 points of the straight translation homotopy by d1, d2, d3.
InvariantReport doodle_mu_breve_homotopy(const std::array<MapRef, 3>& doodle, const std::array<Point, 3>& d,
                                         const EngineOptions& opts = {});
/// Degree of the Gauss map at the configuration direction (w1, w2, w3).
InvariantReport doodle_mu_breve_degree(const std::array<MapRef, 3>& doodle, const std::array<Point, 3>& w,
                                       const EngineOptions& opts = {});
/// Displacements for the homotopy algorithm satisfying the separation bound.
std::array<Point, 3> default_displacements(const std::array<MapRef, 3>& doodle, int variant = 0);

/// mu from a (123)-null-homotopy given as three spanning surfaces.
InvariantReport milnor_mu(const std::array<MapRef, 3>& curves, const std::array<MapRef, 3>& surfaces,
                          const EngineOptions& opts = {});
/// Checks boundary(surface) = curve as oriented image edges.
bool boundary_matches(const PLMap& surface, const PLMap& curve);

Validation verify_hexagonal(const HexFamily& h, const EngineOptions& opts = {});
InvariantReport mu_star(const HexFamily& h, const std::array<Point, 3>& w, const EngineOptions& opts = {});

InvariantReport beta_hat_rays(const MapRef& plus, const MapRef& minus, const MapRef& zero, const Point& u,
                              const Point& w, const EngineOptions& opts = {});
InvariantReport beta_hat_homotopy(const MapRef& plus, const MapRef& minus, const MapRef& zero,
                                  const Point& apex_plus, const Point& apex_minus, const EngineOptions& opts = {});
/// Parity of double points of cone(g_star) met by g_zero; the witnesses are
/// the ordered double points.
InvariantReport beta_parity(const MapRef& g_star, const MapRef& g_zero, const Point& apex,
                            const EngineOptions& opts = {});
InvariantReport beta_star(const MapRef& g_star, const MapRef& g_zero, const Point& u, const Point& w,
                          const EngineOptions& opts = {});

/// True when p lies on the image of m (closed cells).
bool point_on_image(const PLMap& m, const Point& p);

/// Prism (x, t) -> (m(x) + t d, t) over domain x [0,1].
PLMap translation_prism(const PLMap& m, const Point& d);

}  // namespace plg
