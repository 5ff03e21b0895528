#pragma once

// Retry policy for degenerate auxiliary choices: the primary choice followed
// by three fixed alternates. Inputs are never perturbed.

#include "plg/constructions.hpp"

#include <functional>
#include <string>
#include <vector>

namespace plg {

inline constexpr int kFallbackCount = 3;

/// Every candidate degenerated.
class FallbacksExhausted : public std::runtime_error {
 public:
  FallbacksExhausted(const std::string& what, std::vector<std::string> attempts)
      : std::runtime_error(what), attempts_(std::move(attempts)) {}
  /// Why each attempt was rejected.
  const std::vector<std::string>& attempts() const { return attempts_; }

 private:
  std::vector<std::string> attempts_;
};

/// Fixed generic alternates for a single direction in R^dim.
std::vector<Point> alternate_directions(int dim);
/// Fixed alternates for a configuration direction (w1, w2, w3), summing to 0.
std::vector<std::array<Point, 3>> alternate_configurations(int dim);
/// Fixed alternates for a pair of ray directions in R^dim.
std::vector<std::array<Point, 2>> alternate_direction_pairs(int dim);
/// Fixed apex alternates in R^dim.
std::vector<Point> alternate_apexes(int dim);

/// Spanning system obtained by coning each curve from its vertex centroid
/// shifted by a fixed offset (attempt 0, 1, 2).
std::array<MapRef, 3> recone_spanning_system(const std::array<MapRef, 3>& curves, int attempt);

/// Runs `attempt(k)` for k = 0 (primary) .. kFallbackCount until one is not
/// degenerate. An apex lying on an image counts as degenerate. The report
/// records which attempt succeeded.
InvariantReport with_fallbacks(const std::string& what, const std::function<InvariantReport(int)>& attempt);

}  // namespace plg
