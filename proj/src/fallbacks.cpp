#include "plg/fallbacks.hpp"

namespace plg {

namespace {

Point ints(std::initializer_list<long> xs, int dim) {
  Point p;
  for (long x : xs) {
    if (static_cast<int>(p.size()) == dim) break;
    p.emplace_back(x);
  }
  if (static_cast<int>(p.size()) != dim) throw std::invalid_argument("unsupported dimension for fallbacks");
  return p;
}

}  // namespace

std::vector<Point> alternate_directions(int dim) {
  return {ints({3, 5, 7, 11}, dim), ints({-2, 7, 11, 13}, dim), ints({5, -3, 8, 1}, dim)};
}

std::vector<std::array<Point, 3>> alternate_configurations(int dim) {
  std::vector<std::array<Point, 3>> out;
  const std::initializer_list<long> a[3] = {{3, 1, -2, 4}, {5, -4, 1, 2}, {-1, 6, 3, -5}};
  const std::initializer_list<long> b[3] = {{-1, 2, 5, 1}, {-2, 7, -3, 3}, {4, -1, 2, 7}};
  for (int k = 0; k < 3; ++k) {
    Point w1 = ints(a[k], dim), w2 = ints(b[k], dim);
    Point w3 = zero_point(static_cast<std::size_t>(dim)) - w1 - w2;
    out.push_back({w1, w2, w3});
  }
  return out;
}

std::vector<std::array<Point, 2>> alternate_direction_pairs(int dim) {
  return {{ints({3, 5, 7, 11}, dim), ints({-2, 7, 11, 13}, dim)},
          {ints({5, -3, 8, 1}, dim), ints({1, 9, -4, 6}, dim)},
          {ints({-7, 2, 3, 5}, dim), ints({4, 4, -9, 2}, dim)}};
}

std::vector<Point> alternate_apexes(int dim) {
  return {ints({7, 11, 13, 17}, dim), ints({-9, 5, 14, -11}, dim), ints({12, -13, 6, 19}, dim)};
}

std::array<MapRef, 3> recone_spanning_system(const std::array<MapRef, 3>& curves, int attempt) {
  static const long offs[3][3] = {{3, 2, 1}, {-2, 3, 1}, {1, -3, 2}};
  std::array<MapRef, 3> out;
  for (int i = 0; i < 3; ++i) {
    const PLMap& c = *curves[i];
    Point centre = zero_point(3);
    Scalar extent = 0;
    for (const auto& p : c.images) {
      centre = centre + p;
      for (const auto& x : p) extent = std::max(extent, Scalar(abs(x)));
    }
    centre = Scalar(1, static_cast<long>(c.images.size())) * centre;
    // rotate the offset with the component so cyclic symmetry is kept
    const long* o = offs[((attempt % 3) + 3) % 3];
    Point off{Scalar(o[i % 3]), Scalar(o[(i + 1) % 3]), Scalar(o[(i + 2) % 3])};
    out[i] = share(cone_null_homotopy(c, centre + (extent / 20) * off));
  }
  return out;
}

InvariantReport with_fallbacks(const std::string& what, const std::function<InvariantReport(int)>& attempt) {
  std::vector<std::string> failures;
  for (int k = 0; k <= kFallbackCount; ++k) {
    try {
      InvariantReport r = attempt(k);
      r.certificates.push_back(k == 0 ? "choice: primary" : "choice: fallback " + std::to_string(k));
      return r;
    } catch (const DegeneracyError& e) {
      failures.push_back(e.what());
    } catch (const ValidationError& e) {
      if (e.validation().check != "apex") throw;
      failures.push_back(e.what());
    }
  }
  throw FallbacksExhausted(what + ": degenerate for the primary choice and all " + std::to_string(kFallbackCount) +
                               " fallbacks",
                           std::move(failures));
}

}  // namespace plg
