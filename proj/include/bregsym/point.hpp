#pragma once

#include <cstddef>
#include <vector>

namespace bregsym {

// Finite real vector, optionally carrying nonnegative quadrature weights
// (empty weights = unweighted). Models R, R^n, or a discretized function
// space; weights must match the coordinate dimension when present.
struct Point {
  std::vector<double> coords;
  std::vector<double> weights;

  Point() = default;
  explicit Point(std::vector<double> c) : coords(std::move(c)) {}
  Point(std::vector<double> c, std::vector<double> w)
      : coords(std::move(c)), weights(std::move(w)) {}

  std::size_t dim() const { return coords.size(); }
  bool weighted() const { return !weights.empty(); }
};

inline Point scalar_point(double v) { return Point{{v}}; }

// Throws std::invalid_argument on empty/non-finite coordinates or a
// weight vector of mismatched dimension / negative entries.
void validate_point(const Point& x);

// Strict lexicographic order on (coords, weights); used for deterministic
// tie-breaking in parallel reductions.
bool lex_less(const Point& a, const Point& b);

}  // namespace bregsym
