#pragma once

// Shared fixtures and samplers for the unit and acceptance suites.

#include <cmath>
#include <random>
#include <vector>

#include "bast/builder.hpp"
#include "bast/geom.hpp"
#include "bast/orientation.hpp"

namespace fixtures {

using namespace bast;

// Four collinear points whose natural matchings tie; the canonical worked
// instance throughout the suite.
inline std::vector<Point> c4_points() { return {{0, 0}, {1, 0}, {3, 0}, {4, 0}}; }

inline PathInstance c4_path() { return {c4_points()}; }

// Square traversed along three unit sides; the second matching is lighter
// and leaves both path endpoints unmatched.
inline PathInstance unit_square_path() { return {{{0, 0}, {0, 1}, {1, 1}, {1, 0}}}; }

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(unsigned long long seed) : gen(seed) {}
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
  }
  int pick(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(gen() % static_cast<unsigned long long>(hi - lo + 1));
  }
};

inline Point random_point(Rng& rng, double lo = -10.0, double hi = 10.0) {
  return {rng.uniform(lo, hi), rng.uniform(lo, hi)};
}

// True when q classifies as `want` for the pair (u, v) and keeps doing so
// under compass perturbations of size `margin`: the sample sits at least
// that deep inside the region.
inline bool stably_in_region(const Point& u, const Point& v, const Point& q, RegionId want,
                             double margin) {
  if (distance(q, u) <= margin || distance(q, v) <= margin) return false;
  if (classify_region(u, v, q) != want) return false;
  for (int k = 0; k < 8; ++k) {
    const double a = k * pi / 4.0;
    const Point shifted = {q.x + margin * std::cos(a), q.y + margin * std::sin(a)};
    if (classify_region(u, v, shifted) != want) return false;
  }
  return true;
}

// Rejection-samples a point of the requested region at depth >= margin.
// Candidates come from a box around the segment so every region keeps a
// healthy acceptance rate wherever u and v sit.
inline Point sample_region(Rng& rng, const Point& u, const Point& v, RegionId want,
                           double margin = 1e-6) {
  const Point mid{(u.x + v.x) / 2.0, (u.y + v.y) / 2.0};
  const double w = 10.0 + distance(u, v);
  for (int tries = 0; tries < 100000; ++tries) {
    const Point q{mid.x + rng.uniform(-w, w), mid.y + rng.uniform(-w, w)};
    if (stably_in_region(u, v, q, want, margin)) return q;
  }
  throw std::runtime_error("region sampler starved");
}

// Orientation state over an explicit matching; edges are index pairs into
// `points`.
inline OrientationState make_state(const std::vector<Point>& points,
                                   const std::vector<MatchingEdge>& edges) {
  return OrientationState(points, edges);
}

}  // namespace fixtures
