#include "bregsym/bregman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bregsym {

namespace {

using detail::collapse;
using detail::dd;
using detail::dd_add;
using detail::dd_scale;
using detail::dd_sub;
using detail::two_prod;

void check_pair(const Point& x, const Point& y) {
  if (x.dim() != y.dim())
    throw std::invalid_argument("bregman arguments have different dimensions");
}

// 0.5 ||x - y||^2. Both switched distances reduce to the same expression,
// evaluated in the same term order, so their ratio is exactly 1.
dd hilbert_closed_form(const Point& x, const Point& y) {
  dd acc{};
  for (std::size_t i = 0; i < x.dim(); ++i) {
    double d = x.coords[i] - y.coords[i];
    acc = dd_add(acc, dd_scale(two_prod(d, d), 0.5));
  }
  return acc;
}

}  // namespace

BregmanValue bregman(const Functional& f, const Point& x, const Point& y,
                     SubgradientSelection sel) {
  check_pair(x, y);
  BregmanValue out;
  out.x = x;
  out.y = y;
  out.xi_y = subgradient(f, y, sel);

  dd acc{};
  double magnitude = 0.0;
  if (f.family == Family::HilbertQuadratic) {
    acc = hilbert_closed_form(x, y);
  } else {
    dd jx = detail::evaluate_dd(f, x);
    dd jy = detail::evaluate_dd(f, y);
    acc = dd_sub(jx, jy);
    magnitude = std::fabs(jx.hi) + std::fabs(jy.hi);
    // expand <xi_y, x - y> into exact per-term products; never form x - y
    for (std::size_t i = 0; i < x.dim(); ++i) {
      double xi = out.xi_y.coords[i];
      acc = dd_sub(acc, two_prod(xi, x.coords[i]));
      acc = dd_add(acc, two_prod(xi, y.coords[i]));
      magnitude += std::fabs(xi * x.coords[i]) + std::fabs(xi * y.coords[i]);
    }
  }

  out.value = collapse(acc);
  if (!std::isfinite(out.value))
    throw std::runtime_error("bregman distance is non-finite");
  if (out.value < -1e-12 * (1.0 + magnitude))
    throw std::domain_error("negative bregman distance: functional not convex");
  return out;
}

double symmetric_bregman(const Functional& f, const Point& x, const Point& y,
                         SubgradientSelection sel_x, SubgradientSelection sel_y) {
  check_pair(x, y);
  if (f.family == Family::HilbertQuadratic)
    return 2.0 * collapse(hilbert_closed_form(x, y));
  Point xi_x = subgradient(f, x, sel_x);
  Point xi_y = subgradient(f, y, sel_y);
  dd acc{};
  for (std::size_t i = 0; i < x.dim(); ++i) {
    // <xi_x - xi_y, x - y> expanded into four exact products per coordinate
    acc = dd_add(acc, two_prod(xi_x.coords[i], x.coords[i]));
    acc = dd_sub(acc, two_prod(xi_x.coords[i], y.coords[i]));
    acc = dd_sub(acc, two_prod(xi_y.coords[i], x.coords[i]));
    acc = dd_add(acc, two_prod(xi_y.coords[i], y.coords[i]));
  }
  double v = collapse(acc);
  if (!std::isfinite(v))
    throw std::runtime_error("symmetric bregman distance is non-finite");
  return v;
}

RatioValue switched_ratio(const Functional& f, const Point& x, const Point& y,
                          SubgradientSelection sel_x, SubgradientSelection sel_y) {
  constexpr double kDegenerate = 1e-14;
  double num = bregman(f, x, y, sel_y).value;
  double den = bregman(f, y, x, sel_x).value;
  if (std::fabs(num) < kDegenerate && std::fabs(den) < kDegenerate)
    return {1.0, false};
  if (std::fabs(den) < kDegenerate)
    return {std::numeric_limits<double>::infinity(), true};
  return {num / den, false};
}

std::pair<double, double> dual_bregman_check(const Functional& f,
                                             const Point& x, const Point& y) {
  Functional dual = conjugate(f);  // throws for families without one
  double lhs = bregman(f, x, y).value;
  Point xi_x = subgradient(f, x);
  Point xi_y = subgradient(f, y);
  double rhs = bregman(dual, xi_y, xi_x).value;
  return {lhs, rhs};
}

RayCoordinates ray_reduce(const Functional& f, const Point& x, const Point& y) {
  if (f.family != Family::PPower || !f.weights.empty())
    throw std::invalid_argument("ray reduction applies to unweighted p-power functionals");
  check_pair(x, y);
  validate_point(x);
  validate_point(y);
  auto norm2 = [](const Point& v) {
    double s = 0.0;
    for (double c : v.coords) s += c * c;
    return std::sqrt(s);
  };
  double ny = norm2(y);
  if (ny == 0.0) throw std::invalid_argument("ray reduction requires y != 0");
  double nx = norm2(x);
  RayCoordinates rc;
  rc.r = nx / ny;
  if (nx == 0.0) {
    rc.theta = 0.0;  // e_x = 0 at the origin
  } else {
    double dot = 0.0;
    for (std::size_t i = 0; i < x.dim(); ++i) dot += x.coords[i] * y.coords[i];
    rc.theta = std::clamp(dot / (nx * ny), -1.0, 1.0);
  }
  return rc;
}

double componentwise_bregman(const Functional& f, const Point& x,
                             const Point& y) {
  if (f.family != Family::PPower)
    throw std::invalid_argument("componentwise decomposition applies to p-power functionals");
  check_pair(x, y);
  validate_point(x);
  validate_point(y);
  if (!f.weights.empty() && f.weights.size() != x.dim())
    throw std::invalid_argument("functional weight dimension mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    double w = f.weights.empty() ? (x.weighted() ? x.weights[i] : 1.0)
                                 : f.weights[i];
    double xv = x.coords[i], yv = y.coords[i];
    double xi = yv == 0.0 ? 0.0
                          : w * (yv > 0.0 ? 1.0 : -1.0) *
                                std::pow(std::fabs(yv), f.p - 1.0);
    total += w / f.p * std::pow(std::fabs(xv), f.p) -
             w / f.p * std::pow(std::fabs(yv), f.p) - xi * (xv - yv);
  }
  return total;
}

}  // namespace bregsym
