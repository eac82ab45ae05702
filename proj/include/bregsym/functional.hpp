#pragma once

#include <functional>
#include <vector>

#include "bregsym/detail/compensated.hpp"
#include "bregsym/point.hpp"

namespace bregsym {

enum class Family {
  PPower,           // J(x) = (1/p) sum_i w_i |x_i|^p, p > 1, w_i >= 0
  HilbertQuadratic, // J(x) = 0.5 ||x||^2
  Abs,              // J(x) = |x|, scalar, kink at 0
  HuberStd,         // x^2/2 for |x| < 1, |x| - 1/2 otherwise; convex C^1
  SqrtSmoothed,     // J(x) = sqrt(x^2 + eps), eps > 0, scalar
  CustomScalar,     // caller-supplied value/first/second derivative, convexity asserted by caller
};

struct CustomScalarFns {
  std::function<double(double)> value;
  std::function<double(double)> d1;
  std::function<double(double)> d2;  // may be empty when unused
};

// Tagged description of a convex functional. Construct through the factory
// functions below; parameter validity is checked there.
struct Functional {
  Family family = Family::HilbertQuadratic;
  double p = 2.0;                // PPower exponent
  std::vector<double> weights;   // PPower, empty = unweighted
  double eps = 1.0;              // SqrtSmoothed
  CustomScalarFns custom;        // CustomScalar

  static Functional ppower(double p);
  static Functional ppower(double p, std::vector<double> weights);
  static Functional hilbert();
  static Functional absolute();
  static Functional huber();
  static Functional sqrt_smoothed(double eps);
  static Functional custom_scalar(CustomScalarFns fns);
};

// Subgradient selection at non-differentiable points: ties the multivalued
// subdifferential of |x| at 0 to the single value s in [-1, 1]. Every other
// family is differentiable and ignores it.
struct SubgradientSelection {
  double s = 0.0;
};

const char* family_name(Family f);

// J(x). Throws on dimension mismatch or non-finite input.
double evaluate(const Functional& f, const Point& x);

// One element of the subdifferential at x; for differentiable families the
// gradient. Satisfies J(y) >= J(x) + <xi, y - x> for all y.
Point subgradient(const Functional& f, const Point& x,
                  SubgradientSelection sel = {});

// Convex conjugate within the catalog: PPower{p,w} -> PPower{q, w^(1-q)}
// with 1/p + 1/q = 1; Hilbert is self-dual. Other families throw
// (no closed-form conjugate).
Functional conjugate(const Functional& f);

// J''(x) for scalar twice-differentiable families (SqrtSmoothed,
// CustomScalar with d2, HilbertQuadratic, PPower away from the origin
// when p < 2). Throws otherwise.
double second_derivative(const Functional& f, double x);

namespace detail {
// J(x) carried as a double-double. Exact (up to one dd rounding) for
// Abs/HuberStd/Hilbert/PPower(p=2); pow-based families are widened from the
// correctly-rounded double value. Backbone of the compensated Bregman cores.
dd evaluate_dd(const Functional& f, const Point& x);
}  // namespace detail

}  // namespace bregsym
