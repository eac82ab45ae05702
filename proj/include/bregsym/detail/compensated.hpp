#pragma once

#include <cmath>

// Double-double helpers used by the Bregman evaluators. The accumulated
// three-term expressions J(x) - J(y) - <xi_y, x-y> cancel almost completely
// for close argument pairs; carrying the error term keeps the final result
// accurate to ~1e-32 absolute instead of ~1e-16 * max|term|.
namespace bregsym::detail {

struct dd {
  double hi = 0.0;
  double lo = 0.0;
};

// Exact sum: hi + lo == a + b with |lo| <= ulp(hi)/2 (Knuth two-sum).
inline dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

// Exact product via fused multiply-add: hi + lo == a * b.
inline dd two_prod(double a, double b) {
  double p = a * b;
  double err = std::fma(a, b, -p);
  return {p, err};
}

// acc + b, renormalized.
inline dd dd_add(dd acc, double b) {
  dd s = two_sum(acc.hi, b);
  s.lo += acc.lo;
  dd r = two_sum(s.hi, s.lo);
  return r;
}

inline dd dd_add(dd a, dd b) {
  dd s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  dd r = two_sum(s.hi, s.lo);
  return r;
}

inline dd dd_sub(dd a, dd b) { return dd_add(a, dd{-b.hi, -b.lo}); }

inline dd dd_scale(dd a, double s) {
  dd p = two_prod(a.hi, s);
  p.lo += a.lo * s;
  dd r = two_sum(p.hi, p.lo);
  return r;
}

inline double collapse(dd a) { return a.hi + a.lo; }

}  // namespace bregsym::detail
