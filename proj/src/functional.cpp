#include "bregsym/functional.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bregsym {

void validate_point(const Point& x) {
  if (x.coords.empty()) throw std::invalid_argument("point must have dimension >= 1");
  for (double v : x.coords) {
    if (!std::isfinite(v)) throw std::invalid_argument("point has non-finite coordinate");
  }
  if (!x.weights.empty()) {
    if (x.weights.size() != x.coords.size())
      throw std::invalid_argument("point weight dimension mismatch");
    for (double w : x.weights) {
      if (!(w >= 0.0) || !std::isfinite(w))
        throw std::invalid_argument("point weights must be finite and nonnegative");
    }
  }
}

bool lex_less(const Point& a, const Point& b) {
  if (a.coords != b.coords) return a.coords < b.coords;
  return a.weights < b.weights;
}

Functional Functional::ppower(double p) {
  if (!(p > 1.0)) throw std::invalid_argument("ppower requires p > 1");
  Functional f;
  f.family = Family::PPower;
  f.p = p;
  return f;
}

Functional Functional::ppower(double p, std::vector<double> weights) {
  Functional f = ppower(p);
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w))
      throw std::invalid_argument("ppower weights must be finite and nonnegative");
  }
  f.weights = std::move(weights);
  return f;
}

Functional Functional::hilbert() {
  Functional f;
  f.family = Family::HilbertQuadratic;
  return f;
}

Functional Functional::absolute() {
  Functional f;
  f.family = Family::Abs;
  return f;
}

Functional Functional::huber() {
  Functional f;
  f.family = Family::HuberStd;
  return f;
}

Functional Functional::sqrt_smoothed(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw std::invalid_argument("sqrt_smoothed requires eps > 0");
  Functional f;
  f.family = Family::SqrtSmoothed;
  f.eps = eps;
  return f;
}

Functional Functional::custom_scalar(CustomScalarFns fns) {
  if (!fns.value || !fns.d1)
    throw std::invalid_argument("custom_scalar requires value and first derivative");
  Functional f;
  f.family = Family::CustomScalar;
  f.custom = std::move(fns);
  return f;
}

const char* family_name(Family f) {
  switch (f) {
    case Family::PPower: return "ppower";
    case Family::HilbertQuadratic: return "hilbert";
    case Family::Abs: return "abs";
    case Family::HuberStd: return "huber";
    case Family::SqrtSmoothed: return "sqrt-smoothed";
    case Family::CustomScalar: return "custom-scalar";
  }
  return "?";
}

namespace {

bool scalar_family(Family f) {
  return f == Family::Abs || f == Family::HuberStd ||
         f == Family::SqrtSmoothed || f == Family::CustomScalar;
}

void check_compatible(const Functional& f, const Point& x) {
  validate_point(x);
  if (scalar_family(f.family) && x.dim() != 1)
    throw std::invalid_argument(std::string(family_name(f.family)) +
                                " is a scalar family, got dimension " +
                                std::to_string(x.dim()));
  if (f.family == Family::PPower && !f.weights.empty() &&
      f.weights.size() != x.dim())
    throw std::invalid_argument("functional weight dimension mismatch");
  if (f.family == Family::PPower && !f.weights.empty() && x.weighted() &&
      f.weights != x.weights)
    throw std::invalid_argument("functional and point carry different weights");
}

// Effective quadrature weight for coordinate i.
double weight_at(const Functional& f, const Point& x, std::size_t i) {
  if (!f.weights.empty()) return f.weights[i];
  if (x.weighted()) return x.weights[i];
  return 1.0;
}

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

double evaluate(const Functional& f, const Point& x) {
  check_compatible(f, x);
  return detail::collapse(detail::evaluate_dd(f, x));
}

namespace detail {

dd evaluate_dd(const Functional& f, const Point& x) {
  switch (f.family) {
    case Family::PPower: {
      dd acc{};
      if (f.p == 2.0) {
        // squares are exact products; keep the full error term
        for (std::size_t i = 0; i < x.dim(); ++i) {
          dd sq = two_prod(x.coords[i], x.coords[i]);
          acc = dd_add(acc, dd_scale(sq, 0.5 * weight_at(f, x, i)));
        }
      } else {
        for (std::size_t i = 0; i < x.dim(); ++i) {
          double term = weight_at(f, x, i) / f.p * std::pow(std::fabs(x.coords[i]), f.p);
          acc = dd_add(acc, term);
        }
      }
      return acc;
    }
    case Family::HilbertQuadratic: {
      dd acc{};
      for (double v : x.coords) acc = dd_add(acc, dd_scale(two_prod(v, v), 0.5));
      return acc;
    }
    case Family::Abs:
      return dd{std::fabs(x.coords[0]), 0.0};
    case Family::HuberStd: {
      double v = x.coords[0];
      if (std::fabs(v) < 1.0) return dd_scale(two_prod(v, v), 0.5);
      return two_sum(std::fabs(v), -0.5);
    }
    case Family::SqrtSmoothed: {
      double v = x.coords[0];
      return dd{std::sqrt(v * v + f.eps), 0.0};
    }
    case Family::CustomScalar:
      return dd{f.custom.value(x.coords[0]), 0.0};
  }
  throw std::logic_error("unreachable family");
}

}  // namespace detail

Point subgradient(const Functional& f, const Point& x, SubgradientSelection sel) {
  check_compatible(f, x);
  if (!(sel.s >= -1.0 && sel.s <= 1.0))
    throw std::invalid_argument("subgradient selection must lie in [-1, 1]");
  Point xi;
  xi.coords.resize(x.dim());
  switch (f.family) {
    case Family::PPower:
      // d/dx (w/p)|x|^p = w sign(x) |x|^(p-1); 0 at the origin for every p > 1
      for (std::size_t i = 0; i < x.dim(); ++i) {
        double v = x.coords[i];
        xi.coords[i] =
            v == 0.0 ? 0.0
                     : weight_at(f, x, i) * sign(v) * std::pow(std::fabs(v), f.p - 1.0);
      }
      break;
    case Family::HilbertQuadratic:
      xi.coords = x.coords;
      break;
    case Family::Abs: {
      double v = x.coords[0];
      xi.coords[0] = v == 0.0 ? sel.s : sign(v);
      break;
    }
    case Family::HuberStd: {
      double v = x.coords[0];
      xi.coords[0] = std::fabs(v) < 1.0 ? v : sign(v);
      break;
    }
    case Family::SqrtSmoothed: {
      double v = x.coords[0];
      xi.coords[0] = v / std::sqrt(v * v + f.eps);
      break;
    }
    case Family::CustomScalar:
      xi.coords[0] = f.custom.d1(x.coords[0]);
      break;
  }
  return xi;
}

Functional conjugate(const Functional& f) {
  switch (f.family) {
    case Family::HilbertQuadratic:
      return Functional::hilbert();
    case Family::PPower: {
      double q = f.p / (f.p - 1.0);  // 1/p + 1/q = 1
      if (f.weights.empty()) return Functional::ppower(q);
      // per-coordinate Legendre transform of (w/p)|x|^p is (w^(1-q)/q)|xi|^q
      std::vector<double> dual_w(f.weights.size());
      for (std::size_t i = 0; i < f.weights.size(); ++i)
        dual_w[i] = std::pow(f.weights[i], 1.0 - q);
      return Functional::ppower(q, std::move(dual_w));
    }
    default:
      throw std::invalid_argument(std::string("no closed-form conjugate for ") +
                                  family_name(f.family));
  }
}

double second_derivative(const Functional& f, double x) {
  switch (f.family) {
    case Family::HilbertQuadratic:
      return 1.0;
    case Family::PPower: {
      if (!f.weights.empty() && f.weights.size() != 1)
        throw std::invalid_argument("second_derivative is scalar-only");
      double w = f.weights.empty() ? 1.0 : f.weights[0];
      if (x == 0.0 && f.p < 2.0)
        throw std::invalid_argument("second derivative undefined at 0 for p < 2");
      return w * (f.p - 1.0) * std::pow(std::fabs(x), f.p - 2.0);
    }
    case Family::SqrtSmoothed: {
      double d = x * x + f.eps;
      return f.eps / (d * std::sqrt(d));
    }
    case Family::CustomScalar:
      if (!f.custom.d2)
        throw std::invalid_argument("custom functional has no second derivative");
      return f.custom.d2(x);
    default:
      throw std::invalid_argument(std::string(family_name(f.family)) +
                                  " has no second derivative");
  }
}

}  // namespace bregsym
