#include "bregsym/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace bregsym {

namespace {

void require_p_above_one(double p) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::invalid_argument("exponent must satisfy p > 1");
}

void check_params(const RatioFunctionParams& params) {
  if (!(params.p > 1.0 && params.p < 2.0))
    throw std::invalid_argument("ratio functions are defined for p in (1, 2)");
  if (!(params.r >= 0.0) || !std::isfinite(params.r))
    throw std::invalid_argument("r must be finite and >= 0");
  if (!(params.theta >= -1.0 && params.theta <= 1.0))
    throw std::invalid_argument("theta must lie in [-1, 1]");
}

// Golden-section maximization of a unimodal-enough callable on [lo, hi];
// returns (value, argument).
template <typename F>
std::pair<double, double> golden_max(F&& fn, double lo, double hi,
                                     int iterations) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = fn(c), fd = fn(d);
  for (int i = 0; i < iterations && b - a > 1e-14 * (1.0 + std::fabs(a)); ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = fn(d);
    }
  }
  double mid = 0.5 * (a + b);
  double fm = fn(mid);
  if (fc >= fd && fc >= fm) return {fc, c};
  if (fd >= fm) return {fd, d};
  return {fm, mid};
}

double dual_exponent_t(double p) { return p < 2.0 ? p : p / (p - 1.0); }

}  // namespace

double theoretical_cp(double p) {
  require_p_above_one(p);
  return 2.0 * std::max(1.0 / (p - 1.0), p - 1.0);
}

std::pair<double, double> refined_cp_bounds(double p) {
  require_p_above_one(p);
  double t = dual_exponent_t(p);
  double lower = 1.0 / (t - 1.0);
  // h(r) = (r^(t-1) + 1) / (r^(t-1) + r^(t-2)) -> 1 at both ends of [1, inf)
  auto h = [t](double log_r) {
    double r = std::exp(log_r);
    double a = std::pow(r, t - 1.0);
    return (a + 1.0) / (a + std::pow(r, t - 2.0));
  };
  double best = 1.0;
  double best_log_r = 0.0;
  constexpr int kGrid = 2000;
  double log_hi = std::log(1e9);
  for (int i = 0; i <= kGrid; ++i) {
    double lr = log_hi * i / kGrid;
    double v = h(lr);
    if (v > best) {
      best = v;
      best_log_r = lr;
    }
  }
  double step = log_hi / kGrid;
  best = std::max(best, golden_max(h, std::max(0.0, best_log_r - step),
                                   best_log_r + step, 200)
                            .first);
  return {lower, lower * best};
}

std::pair<double, double> fg_value(const RatioFunctionParams& params) {
  check_params(params);
  double p = params.p, r = params.r, theta = params.theta;
  double rp = std::pow(r, p);
  double f = rp / p + (1.0 - 1.0 / p) - r * theta;
  double g = 1.0 / p + (1.0 - 1.0 / p) * rp - std::pow(r, p - 1.0) * theta;
  return {f, g};
}

double fg_ratio(const RatioFunctionParams& params) {
  auto [f, g] = fg_value(params);
  constexpr double kExtensionThreshold = 1e-12;
  if (f < kExtensionThreshold && g < kExtensionThreshold) return 1.0;
  return f / g;
}

FgSup fg_ratio_sup(double p, const FgGrid& grid) {
  if (!(p > 1.0 && p < 2.0))
    throw std::invalid_argument("sup search requires p in (1, 2)");
  if (grid.r_points < 2 || grid.theta_points < 2 || !(grid.r_min > 0.0) ||
      !(grid.r_max > grid.r_min))
    throw std::invalid_argument("malformed ratio-function grid");

  double log_lo = std::log(grid.r_min);
  double log_hi = std::log(grid.r_max);
  FgSup out;
  out.sup = -std::numeric_limits<double>::infinity();
  // deterministic reduction: strictly better value wins; on a tie keep the
  // smaller r, then smaller theta
  auto consider = [&out](double value, double r, double theta) {
    if (value > out.sup ||
        (value == out.sup &&
         (r < out.argmax.r || (r == out.argmax.r && theta < out.argmax.theta)))) {
      out.sup = value;
      out.argmax = {r, theta};
    }
  };

  for (std::size_t i = 0; i < grid.r_points; ++i) {
    double lr = log_lo + (log_hi - log_lo) * double(i) / double(grid.r_points - 1);
    double r = std::exp(lr);
    for (std::size_t j = 0; j < grid.theta_points; ++j) {
      double theta = -1.0 + 2.0 * double(j) / double(grid.theta_points - 1);
      consider(fg_ratio({p, r, theta}), r, theta);
    }
  }

  // the maximum over theta sits on the boundary; refine r there around the
  // best grid cell
  double step = (log_hi - log_lo) / double(grid.r_points - 1);
  double center = std::log(std::max(out.argmax.r, grid.r_min));
  for (double theta : {-1.0, 1.0}) {
    auto along_r = [p, theta](double lr) {
      return fg_ratio({p, std::exp(lr), theta});
    };
    double lo = std::max(log_lo, center - 2.0 * step);
    double hi = std::min(log_hi, center + 2.0 * step);
    auto [refined, at] = golden_max(along_r, lo, hi, grid.refine_iterations);
    consider(refined, std::exp(at), theta);
  }

  // analytic tail candidate: f/g -> 1/(p-1) as r -> inf
  consider(1.0 / (p - 1.0), std::numeric_limits<double>::infinity(), -1.0);
  return out;
}

double eta_from_c(double c) {
  if (!(c > 0.0) || !std::isfinite(c))
    throw std::invalid_argument("symmetry constant must be positive");
  return c / (c + 1.0);
}

double c_from_eta(double eta) {
  if (!(eta > 0.0 && eta < 1.0))
    throw std::invalid_argument("contraction factor must lie in (0, 1)");
  return eta / (1.0 - eta);
}

double monotone_lipschitz_constant(double c0, double L) {
  if (!(c0 > 0.0)) throw std::invalid_argument("monotonicity constant must be positive");
  if (!(L >= c0)) throw std::invalid_argument("Lipschitz constant must be >= c0");
  return L / c0;
}

double second_derivative_bound(const Functional& f, double a, double b,
                               std::size_t n) {
  if (!(b > a)) throw std::invalid_argument("interval must satisfy b > a");
  if (n < 100) throw std::invalid_argument("second-derivative grid needs n >= 100");
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    double x = a + (b - a) * double(i) / double(n);
    double d2 = second_derivative(f, x);
    lo = std::min(lo, d2);
    hi = std::max(hi, d2);
  }
  if (!(lo > 0.0))
    throw std::domain_error("second derivative is not positive on the interval");
  return hi / lo;
}

std::pair<double, double> sqrt_example_constant(double eps, double R) {
  if (!(eps > 0.0) || !(R > 0.0))
    throw std::invalid_argument("sqrt constants require eps > 0 and R > 0");
  double direct = std::sqrt(1.0 + R * R / eps);
  double bound = 1.0 + R / std::sqrt(eps);
  return {direct, bound};
}

double localization_constant(double eps, double R, double c_m0) {
  if (!(eps > 0.0) || !(R > eps))
    throw std::invalid_argument("localization requires R > eps > 0");
  if (!(c_m0 > 0.0))
    throw std::invalid_argument("base constant must be positive");
  return (R - eps) / eps + R * c_m0 / eps;
}

BoundBundle bound_bundle(double p) {
  BoundBundle b;
  b.cp = theoretical_cp(p);
  auto [lo, hi] = refined_cp_bounds(p);
  b.refined_lower = lo;
  b.refined_upper = hi;
  b.eta = eta_from_c(b.cp);
  return b;
}

}  // namespace bregsym
