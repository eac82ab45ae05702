#pragma once

#include <utility>

#include "bregsym/functional.hpp"
#include "bregsym/point.hpp"

namespace bregsym {

// D_{xi_y}(x, y) = J(x) - J(y) - <xi_y, x - y> together with the inputs and
// the subgradient that produced it. value >= 0 for convex J; the computation
// asserts this with a tolerance of -1e-12 relative to the accumulated term
// magnitude (a violation means the functional is not convex).
struct BregmanValue {
  double value = 0.0;
  Point x;
  Point y;
  Point xi_y;
};

// Scale-reduced pair: r = ||x|| / ||y||, theta = <e_y, e_x> with unit vectors
// in the Euclidean sense (0 at the origin). For scalars theta = sign(x)sign(y).
struct RayCoordinates {
  double r = 0.0;
  double theta = 0.0;
};

// Ratio of switched Bregman distances. is_unbounded marks a denominator below
// the degeneracy threshold 1e-14 with a numerator above it (true divergence,
// kept distinct from float overflow).
struct RatioValue {
  double value = 1.0;
  bool is_unbounded = false;
};

BregmanValue bregman(const Functional& f, const Point& x, const Point& y,
                     SubgradientSelection sel = {});

// <xi_x - xi_y, x - y>; equals bregman(x,y) + bregman(y,x).
double symmetric_bregman(const Functional& f, const Point& x, const Point& y,
                         SubgradientSelection sel_x = {},
                         SubgradientSelection sel_y = {});

// D_{xi_y}(x,y) / D_{xi_x}(y,x). Both distances under 1e-14 -> ratio 1
// (degenerate x = y case); denominator alone under 1e-14 -> unbounded.
RatioValue switched_ratio(const Functional& f, const Point& x, const Point& y,
                          SubgradientSelection sel_x = {},
                          SubgradientSelection sel_y = {});

// Evaluates both sides of the conjugate-transport identity
// D_J(x, y) = D_{J*}(xi_y, xi_x); returns (lhs, rhs). Requires a family
// with a closed-form conjugate.
std::pair<double, double> dual_bregman_check(const Functional& f,
                                             const Point& x, const Point& y);

// Reduction to ray coordinates for unweighted p-power functionals, y != 0.
// For scalar points the identities bregman(z, e_y) = f(r, theta) and
// bregman(e_y, z) = g(r, theta) hold against the ratio-function evaluations.
RayCoordinates ray_reduce(const Functional& f, const Point& x, const Point& y);

// Independent oracle: sum of per-coordinate scalar distances, plain-double
// accumulation on purpose (second code path for cross-checking the vector
// computation). PPower only.
double componentwise_bregman(const Functional& f, const Point& x,
                             const Point& y);

}  // namespace bregsym
