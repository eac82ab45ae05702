#pragma once

#include <cstddef>
#include <utility>

#include "bregsym/bregman.hpp"

namespace bregsym {

// Inputs of the scalar ratio functions
//   f(r, theta) = (1/p) r^p + (1 - 1/p) - r theta
//   g(r, theta) = 1/p + (1 - 1/p) r^p - r^(p-1) theta
// with p strictly inside (1, 2); exponents p >= 2 route through the
// conjugate t = p/(p-1) instead of being evaluated here.
struct RatioFunctionParams {
  double p = 1.5;
  double r = 1.0;
  double theta = 0.0;
};

// Theoretical constants for one p-power exponent: the global cap cp, the
// sharper numeric two-sided estimate, and the equivalent contraction factor
// eta = cp / (cp + 1).
struct BoundBundle {
  double cp = 0.0;
  double refined_lower = 0.0;
  double refined_upper = 0.0;
  double eta = 0.0;
};

// Grid specification for the ratio-function sup search: log-spaced r values
// over [r_min, r_max] plus equally spaced theta values, then golden-section
// refinement in log r around the best cell at the boundary thetas.
struct FgGrid {
  double r_min = 1e-9;
  double r_max = 1e6;
  std::size_t r_points = 1000;
  std::size_t theta_points = 21;
  int refine_iterations = 200;
};

struct FgSup {
  double sup = 0.0;
  RayCoordinates argmax;  // r = +inf when the analytic tail candidate wins
};

// cp = 2 max{1/(p-1), p-1}, valid for every p > 1.
double theoretical_cp(double p);

// Two-sided estimate 1/(t-1) <= C_p <= (1/(t-1)) max_{r>=1} h(r) with
// h(r) = (r^(t-1)+1)/(r^(t-1)+r^(t-2)) and t = p for p in (1,2),
// t = p/(p-1) for p >= 2. Upper bound found numerically (log grid plus
// golden-section refinement).
std::pair<double, double> refined_cp_bounds(double p);

// (f, g) at the given parameters; both nonnegative, both zero only at
// (r, theta) = (1, 1).
std::pair<double, double> fg_value(const RatioFunctionParams& params);

// f/g with continuous extension: when both values fall below 1e-12 the
// quotient is numerically meaningless and the limit value 1 is substituted.
double fg_ratio(const RatioFunctionParams& params);

// sup over the grid (plus the analytic r->inf candidate 1/(p-1)) of f/g.
// Result lies in [1/(p-1), 2/(p-1)]; ties broken by smaller r, then smaller
// theta, so partitioned evaluation reduces deterministically.
FgSup fg_ratio_sup(double p, const FgGrid& grid = {});

// Contraction factor <-> symmetry constant: eta = c/(c+1), c = eta/(1-eta).
double eta_from_c(double c);
double c_from_eta(double eta);

// Symmetry constant L/c0 for a strongly monotone (constant c0) subgradient
// that is Lipschitz (constant L).
double monotone_lipschitz_constant(double c0, double L);

// Grid sup/inf of J'' over [a, b]; throws when J'' <= 0 shows up on the grid
// (non-convex input). n >= 100 grid intervals.
double second_derivative_bound(const Functional& f, double a, double b,
                               std::size_t n);

// Constants for the sqrt-smoothed functional on |x| <= R:
// direct = sqrt(1 + R^2/eps), bound = 1 + R/sqrt(eps); direct <= bound.
std::pair<double, double> sqrt_example_constant(double eps, double R);

// Constant transported from a small set of radius eps to a larger one of
// radius R: (R - eps)/eps + R * c_m0 / eps.
double localization_constant(double eps, double R, double c_m0);

// cp + refined bounds + eta for one exponent.
BoundBundle bound_bundle(double p);

}  // namespace bregsym
