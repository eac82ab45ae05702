#include "bregsym/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

namespace bregsym {

DomainSpec DomainSpec::box(std::size_t dim, double R) {
  DomainSpec d;
  d.kind = Kind::Box;
  d.dimension = dim;
  d.radius = R;
  validate_domain(d);
  return d;
}

DomainSpec DomainSpec::pair_ball(std::size_t dim, double R) {
  DomainSpec d;
  d.kind = Kind::PairBall;
  d.dimension = dim;
  d.radius = R;
  validate_domain(d);
  return d;
}

DomainSpec DomainSpec::ray(double r_min, double r_max,
                           std::vector<double> thetas, std::size_t dim) {
  DomainSpec d;
  d.kind = Kind::Ray;
  d.dimension = dim;
  d.r_min = r_min;
  d.r_max = r_max;
  d.thetas = std::move(thetas);
  validate_domain(d);
  return d;
}

DomainSpec DomainSpec::interval(double a, double b) {
  DomainSpec d;
  d.kind = Kind::Interval;
  d.dimension = 1;
  d.a = a;
  d.b = b;
  validate_domain(d);
  return d;
}

void validate_domain(const DomainSpec& dom) {
  if (dom.dimension < 1)
    throw std::invalid_argument("domain dimension must be >= 1");
  switch (dom.kind) {
    case DomainSpec::Kind::Box:
    case DomainSpec::Kind::PairBall:
      if (!(dom.radius > 0.0) || !std::isfinite(dom.radius))
        throw std::invalid_argument("domain radius must be positive and finite");
      break;
    case DomainSpec::Kind::Ray:
      if (!(dom.r_min > 0.0) || !(dom.r_max > dom.r_min) ||
          !std::isfinite(dom.r_max))
        throw std::invalid_argument("ray domain needs 0 < r_min < r_max < inf");
      if (dom.thetas.empty())
        throw std::invalid_argument("ray domain needs a nonempty theta set");
      for (double t : dom.thetas) {
        if (!(t >= -1.0 && t <= 1.0))
          throw std::invalid_argument("ray thetas must lie in [-1, 1]");
        if (dom.dimension == 1 && std::fabs(t) != 1.0)
          throw std::invalid_argument("scalar ray domains admit only theta = +-1");
      }
      break;
    case DomainSpec::Kind::Interval:
      if (!(dom.b > dom.a) || !std::isfinite(dom.a) || !std::isfinite(dom.b))
        throw std::invalid_argument("interval domain needs finite a < b");
      break;
  }
}

const char* domain_kind_name(DomainSpec::Kind kind) {
  switch (kind) {
    case DomainSpec::Kind::Box: return "box";
    case DomainSpec::Kind::PairBall: return "pair-ball";
    case DomainSpec::Kind::Ray: return "ray";
    case DomainSpec::Kind::Interval: return "interval";
  }
  return "?";
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::BoundedWithinTheory: return "bounded-within-theory";
    case Verdict::ExceedsTheory: return "exceeds-theory";
    case Verdict::UnboundedDetected: return "unbounded-detected";
  }
  return "?";
}

namespace {

constexpr double kDegenerate = 1e-14;
// A sentinel ratio only counts as a divergence signal when the numerator is
// clearly above float noise; bounded families can otherwise produce
// (num, den) = (3e-14, 8e-15) from two nearly equal points.
constexpr double kDivergenceNumerator = 1e-6;
constexpr std::size_t kTopK = 8;
constexpr double kDivergenceRatio = 1e6;

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kBoxTag = 0x626f78;
constexpr std::uint64_t kRayTag = 0x726179;
constexpr std::uint64_t kPairTag = 0x7062;
constexpr std::uint64_t kIntervalTag = 0x6976;

// One independent generator per sample index: sample i is the same value
// for every thread partition, every larger n, and every domain size.
struct SampleStream {
  std::mt19937_64 eng;
  SampleStream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index)
      : eng(splitmix64(splitmix64(splitmix64(seed) ^ tag) ^ index)) {}
  double unit() { return double(eng() >> 11) * 0x1.0p-53; }  // [0, 1)
  double symmetric() { return 2.0 * unit() - 1.0; }
  // fixed heavy-tailed master distribution; boxes accept nested subsets of it
  double cauchy() { return std::tan(std::numbers::pi * (unit() - 0.5)); }
};

bool better(const RatioWitness& a, const RatioWitness& b) {
  if (a.ratio.is_unbounded != b.ratio.is_unbounded) return a.ratio.is_unbounded;
  if (a.ratio.is_unbounded) {
    if (a.d_xy != b.d_xy) return a.d_xy > b.d_xy;
  } else if (a.ratio.value != b.ratio.value) {
    return a.ratio.value > b.ratio.value;
  }
  if (a.x.coords != b.x.coords) return lex_less(a.x, b.x);
  return lex_less(a.y, b.y);
}

struct TopK {
  std::vector<RatioWitness> items;  // best first, size <= kTopK

  void insert(const RatioWitness& w) {
    auto pos = std::find_if(items.begin(), items.end(),
                            [&](const RatioWitness& e) { return better(w, e); });
    items.insert(pos, w);
    if (items.size() > kTopK) items.pop_back();
  }

  void merge(const TopK& other) {
    for (const auto& w : other.items) insert(w);
  }
};

// Scores a pair through the Bregman evaluator. Returns false for pairs that
// are out of numeric reach (overflow) or degenerate (both distances under
// 1e-14 contribute ratio 1; a sub-threshold denominator with a noise-level
// numerator is skipped rather than declared unbounded).
bool score_pair(const Functional& f, Point x, Point y, RatioWitness& out) {
  double num, den;
  try {
    num = bregman(f, x, y).value;
    den = bregman(f, y, x).value;
  } catch (const std::runtime_error&) {
    return false;
  }
  if (std::fabs(num) < kDegenerate && std::fabs(den) < kDegenerate) return false;
  if (std::fabs(den) < kDegenerate && std::fabs(num) < kDivergenceNumerator)
    return false;
  out.x = std::move(x);
  out.y = std::move(y);
  out.d_xy = num;
  out.d_yx = den;
  if (std::fabs(den) < kDegenerate)
    out.ratio = {std::numeric_limits<double>::infinity(), true};
  else
    out.ratio = {num / den, false};
  return true;
}

bool draw_box_pair(SampleStream& s, std::size_t dim, double R, Point& x,
                   Point& y) {
  x.coords.resize(dim);
  y.coords.resize(dim);
  bool inside = true;
  for (Point* pt : {&x, &y}) {
    for (std::size_t i = 0; i < dim; ++i) {
      double v = s.cauchy();
      pt->coords[i] = v;
      inside = inside && std::fabs(v) <= R;
    }
  }
  return inside;
}

bool draw_pair_ball(SampleStream& s, std::size_t dim, double R, Point& x,
                    Point& y) {
  x.coords.resize(dim);
  y.coords.resize(dim);
  double dist2 = 0.0;
  for (std::size_t i = 0; i < dim; ++i) x.coords[i] = s.cauchy();
  for (std::size_t i = 0; i < dim; ++i) {
    double d = s.cauchy();
    y.coords[i] = x.coords[i] + d;
    dist2 += d * d;
  }
  return dist2 <= R * R;
}

// Canonical pair at ray coordinates (r, theta), placed at scale rho:
// y = rho e_1, x = rho r (theta e_1 + sqrt(1-theta^2) e_2).
void make_ray_pair(double r, double theta, double rho, std::size_t dim,
                   Point& x, Point& y) {
  x.coords.assign(dim, 0.0);
  y.coords.assign(dim, 0.0);
  y.coords[0] = rho;
  if (dim == 1) {
    x.coords[0] = rho * r * theta;  // theta = +-1 for scalars
  } else {
    x.coords[0] = rho * r * theta;
    x.coords[1] = rho * r * std::sqrt(std::max(0.0, 1.0 - theta * theta));
  }
}

double log_uniform(SampleStream& s, double lo, double hi) {
  return std::exp(std::log(lo) + s.unit() * (std::log(hi) - std::log(lo)));
}

struct RangeResult {
  TopK top;
  std::uint64_t evaluated = 0;
};

// Scores sample indices [lo, hi) for the given functional/domain.
RangeResult run_range(const Functional& f, const DomainSpec& dom,
                      std::uint64_t seed, std::uint64_t lo, std::uint64_t hi) {
  RangeResult res;
  const bool ray_extra = f.family == Family::PPower &&
                         (dom.kind == DomainSpec::Kind::Box ||
                          dom.kind == DomainSpec::Kind::PairBall);
  RatioWitness w;
  for (std::uint64_t i = lo; i < hi; ++i) {
    Point x, y;
    switch (dom.kind) {
      case DomainSpec::Kind::Box: {
        SampleStream s(seed, kBoxTag, i);
        if (draw_box_pair(s, dom.dimension, dom.radius, x, y)) {
          ++res.evaluated;
          if (score_pair(f, std::move(x), std::move(y), w)) res.top.insert(w);
        }
        break;
      }
      case DomainSpec::Kind::PairBall: {
        SampleStream s(seed, kPairTag, i);
        if (draw_pair_ball(s, dom.dimension, dom.radius, x, y)) {
          ++res.evaluated;
          if (score_pair(f, std::move(x), std::move(y), w)) res.top.insert(w);
        }
        break;
      }
      case DomainSpec::Kind::Ray: {
        SampleStream s(seed, kRayTag, i);
        double r = log_uniform(s, dom.r_min, dom.r_max);
        double u = s.unit();
        std::size_t j = std::min(dom.thetas.size() - 1,
                                 std::size_t(u * double(dom.thetas.size())));
        make_ray_pair(r, dom.thetas[j], 1.0, dom.dimension, x, y);
        ++res.evaluated;
        if (score_pair(f, std::move(x), std::move(y), w)) res.top.insert(w);
        break;
      }
      case DomainSpec::Kind::Interval: {
        SampleStream s(seed, kIntervalTag, i);
        x.coords = {dom.a + s.unit() * (dom.b - dom.a)};
        y.coords = {dom.a + s.unit() * (dom.b - dom.a)};
        ++res.evaluated;
        if (score_pair(f, std::move(x), std::move(y), w)) res.top.insert(w);
        break;
      }
    }
    if (ray_extra) {
      SampleStream s(seed, kRayTag, i);
      double r = log_uniform(s, 1e-9, 1e9);
      double theta = dom.dimension == 1 ? (s.unit() < 0.5 ? -1.0 : 1.0)
                                        : s.symmetric();
      // scale-invariant ratio: place the witness inside every box of
      // radius >= min(1, R) so reports are identical across such boxes
      double rho = dom.kind == DomainSpec::Kind::Box
                       ? std::min(1.0, dom.radius) / std::max(1.0, r)
                       : std::min(1.0, dom.radius) / (1.0 + r);
      make_ray_pair(r, theta, rho, dom.dimension, x, y);
      ++res.evaluated;
      if (score_pair(f, std::move(x), std::move(y), w)) res.top.insert(w);
    }
  }
  return res;
}

bool pair_in_domain(const DomainSpec& dom, const Point& x, const Point& y) {
  switch (dom.kind) {
    case DomainSpec::Kind::Box:
      for (const Point* pt : {&x, &y})
        for (double v : pt->coords)
          if (!(std::fabs(v) <= dom.radius)) return false;
      return true;
    case DomainSpec::Kind::PairBall: {
      double dist2 = 0.0;
      for (std::size_t i = 0; i < x.dim(); ++i) {
        double d = x.coords[i] - y.coords[i];
        dist2 += d * d;
      }
      return dist2 <= dom.radius * dom.radius * (1.0 + 1e-12);
    }
    case DomainSpec::Kind::Interval:
      for (const Point* pt : {&x, &y})
        for (double v : pt->coords)
          if (!(v >= dom.a && v <= dom.b)) return false;
      return true;
    case DomainSpec::Kind::Ray:
      return true;  // local moves around a ray witness are structure-free
  }
  return false;
}

double refine_base_delta(const DomainSpec& dom) {
  switch (dom.kind) {
    case DomainSpec::Kind::Box:
    case DomainSpec::Kind::PairBall:
      return dom.radius / 2.0;
    case DomainSpec::Kind::Interval:
      return (dom.b - dom.a) / 4.0;
    case DomainSpec::Kind::Ray:
      return 0.5;
  }
  return 0.5;
}

// In-domain witness the divergence probe can start from when sampling found
// nothing; coordinates chosen off the binary grid of the probe deltas.
RatioWitness probe_fallback(const DomainSpec& dom) {
  RatioWitness w;
  w.ratio = {1.0, false};
  std::size_t dim = dom.dimension;
  switch (dom.kind) {
    case DomainSpec::Kind::Box:
      w.x.coords.assign(dim, dom.radius / 2.0);
      w.y.coords.assign(dim, -dom.radius / 3.0);
      break;
    case DomainSpec::Kind::PairBall:
      w.x.coords.assign(dim, 0.0);
      w.y.coords.assign(dim, 0.0);
      w.y.coords[0] = std::min(dom.radius, 1.0) / 3.0;
      break;
    case DomainSpec::Kind::Interval:
      w.x.coords = {dom.a + (dom.b - dom.a) / 3.0};
      w.y.coords = {dom.b - (dom.b - dom.a) / 3.0};
      break;
    case DomainSpec::Kind::Ray:
      w.x.coords.assign(dim, 0.0);
      w.y.coords.assign(dim, 0.0);
      w.x.coords[0] = 2.0;
      w.y.coords[0] = 1.0;
      break;
  }
  return w;
}

RatioWitness refine_impl(const Functional& f, const DomainSpec& dom,
                         const RatioWitness& witness, int rounds,
                         std::vector<RatioWitness>* trajectory) {
  RatioWitness cur = witness;
  double delta = refine_base_delta(dom);
  for (int round = 0; round < rounds; ++round, delta *= 0.5) {
    RatioWitness best_cand;
    bool have_cand = false;
    auto try_candidate = [&](const Point& cx, const Point& cy) {
      if (!pair_in_domain(dom, cx, cy)) return;
      RatioWitness cand;
      if (!score_pair(f, cx, cy, cand)) return;
      if (!have_cand || better(cand, best_cand)) {
        best_cand = std::move(cand);
        have_cand = true;
      }
    };
    for (int side = 0; side < 2; ++side) {
      const Point& base = side == 0 ? cur.x : cur.y;
      for (std::size_t c = 0; c < base.dim(); ++c) {
        double v = base.coords[c];
        for (double cand_v : {v + delta, v - delta, v * 0.5, v * 2.0}) {
          Point moved = base;
          moved.coords[c] = cand_v;
          if (side == 0)
            try_candidate(moved, cur.y);
          else
            try_candidate(cur.x, moved);
        }
      }
    }
    if (have_cand && better(best_cand, cur)) {
      cur = std::move(best_cand);
      if (trajectory) trajectory->push_back(cur);
    }
  }
  return cur;
}

TheoreticalBound resolve_bound(const Functional& f, const DomainSpec& dom) {
  TheoreticalBound b;
  switch (f.family) {
    case Family::PPower:
      b.present = true;
      b.value = theoretical_cp(f.p);
      b.kind = "p-power-cap";
      b.has_bundle = true;
      b.bundle = bound_bundle(f.p);
      break;
    case Family::HilbertQuadratic:
      b.present = true;
      b.value = 1.0;
      b.kind = "hilbert-exact";
      break;
    case Family::SqrtSmoothed:
      if (dom.kind == DomainSpec::Kind::Box) {
        b.present = true;
        b.value = sqrt_example_constant(f.eps, dom.radius).first;
        b.kind = "sqrt-direct";
      } else if (dom.kind == DomainSpec::Kind::Interval) {
        b.present = true;
        b.value = second_derivative_bound(f, dom.a, dom.b, 10000);
        b.kind = "curvature-ratio";
      }
      break;
    case Family::HuberStd: {
      // inside |x| <= 1 the functional is purely quadratic, ratio 1
      bool quadratic = (dom.kind == DomainSpec::Kind::Box && dom.radius <= 1.0) ||
                       (dom.kind == DomainSpec::Kind::Interval &&
                        dom.a >= -1.0 && dom.b <= 1.0);
      if (quadratic) {
        b.present = true;
        b.value = 1.0;
        b.kind = "quadratic-region";
      }
      break;
    }
    case Family::Abs:
      break;  // no finite constant on any domain containing the kink
    case Family::CustomScalar: {
      double lo = 0.0, hi = 0.0;
      if (dom.kind == DomainSpec::Kind::Box) {
        lo = -dom.radius;
        hi = dom.radius;
      } else if (dom.kind == DomainSpec::Kind::Interval) {
        lo = dom.a;
        hi = dom.b;
      } else {
        break;
      }
      try {
        b.value = second_derivative_bound(f, lo, hi, 10000);
        b.present = true;
        b.kind = "curvature-ratio";
      } catch (const std::exception&) {
        // no usable curvature information; leave unbounded-checked
      }
      break;
    }
  }
  return b;
}

Verdict derive_verdict(const RatioWitness& best, const TheoreticalBound& bound,
                       double ratio_slack, bool divergence_detected) {
  if (divergence_detected) return Verdict::UnboundedDetected;
  if (bound.present) {
    if (best.ratio.is_unbounded ||
        best.ratio.value > bound.value * (1.0 + ratio_slack))
      return Verdict::ExceedsTheory;
  }
  return Verdict::BoundedWithinTheory;
}

// >= 3 probe witnesses over ratio 1e6 whose denominators strictly shrink.
bool divergence_rule(const std::vector<RatioWitness>& trajectory) {
  int run = 0;
  double last_den = std::numeric_limits<double>::infinity();
  int best_run = 0;
  for (const auto& w : trajectory) {
    if (!(w.ratio.is_unbounded || w.ratio.value > kDivergenceRatio)) continue;
    if (w.d_yx < last_den)
      ++run;
    else
      run = 1;
    last_den = w.d_yx;
    best_run = std::max(best_run, run);
  }
  return best_run >= 3;
}

}  // namespace

SymmetryReport sample_sup_ratio(const Functional& f, const DomainSpec& dom,
                                std::uint64_t n, std::uint64_t seed,
                                unsigned threads, double ratio_slack) {
  validate_domain(dom);
  if (n < 1) throw std::invalid_argument("sample count must be >= 1");
  if (dom.kind == DomainSpec::Kind::Ray &&
      (f.family != Family::PPower || !f.weights.empty()))
    throw std::invalid_argument("ray domains apply to unweighted p-power functionals");

  SymmetryReport rep;
  rep.functional = f;
  rep.domain = dom;
  rep.samples = n;
  rep.seed = seed;
  rep.ratio_slack = ratio_slack;
  rep.bound = resolve_bound(f, dom);

  unsigned T = std::max(1u, threads);
  if (std::uint64_t(T) > n) T = unsigned(n);
  RangeResult total;
  if (T == 1) {
    total = run_range(f, dom, seed, 0, n);
  } else {
    std::vector<RangeResult> parts(T);
    std::vector<std::thread> workers;
    std::uint64_t chunk = (n + T - 1) / T;
    for (unsigned t = 0; t < T; ++t) {
      std::uint64_t lo = t * chunk;
      std::uint64_t hi = std::min(n, lo + chunk);
      workers.emplace_back([&, t, lo, hi] {
        parts[t] = run_range(f, dom, seed, lo, hi);
      });
    }
    for (auto& th : workers) th.join();
    // merging top-k lists is a plain selection, independent of partition
    for (auto& part : parts) {
      total.top.merge(part.top);
      total.evaluated += part.evaluated;
    }
  }
  rep.samples_evaluated = total.evaluated;

  RatioWitness best =
      total.top.items.empty() ? probe_fallback(dom) : total.top.items.front();
  bool divergence = false;
  if (!rep.bound.present) {
    std::vector<RatioWitness> trajectory;
    RatioWitness refined = refine_impl(f, dom, best, 48, &trajectory);
    divergence = divergence_rule(trajectory);
    if (better(refined, best)) best = refined;
  }
  rep.best = best;
  rep.verdict = derive_verdict(best, rep.bound, ratio_slack, divergence);
  return rep;
}

RatioWitness adversarial_refine(const Functional& f, const DomainSpec& dom,
                                const RatioWitness& witness, int rounds) {
  validate_domain(dom);
  if (rounds < 0) throw std::invalid_argument("refine rounds must be >= 0");
  return refine_impl(f, dom, witness, rounds, nullptr);
}

CounterexampleTriple counterexample_abs(double x, double eps) {
  if (!(x > 0.0) || !(eps > 0.0))
    throw std::invalid_argument("kink counterexample requires x > 0 and eps > 0");
  Functional f = Functional::absolute();
  Point px = scalar_point(x);
  Point py = scalar_point(-eps);
  CounterexampleTriple t;
  t.d_switch = bregman(f, px, py).value;  // 2x
  t.d_orig = bregman(f, py, px).value;    // 2 eps
  t.ratio = t.d_switch / t.d_orig;        // x / eps
  return t;
}

CounterexampleTriple counterexample_huber(double x, double eps) {
  if (!(x > 1.0))
    throw std::invalid_argument("huber counterexample requires x > 1");
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("huber counterexample requires eps in (0, 1)");
  Functional f = Functional::huber();
  Point px = scalar_point(x);
  Point py = scalar_point(1.0 - eps);
  CounterexampleTriple t;
  t.d_switch = bregman(f, px, py).value;  // eps (x - 1) + eps^2 / 2
  t.d_orig = bregman(f, py, px).value;    // eps^2 / 2
  t.ratio = t.d_switch / t.d_orig;        // 1 + 2 (x - 1) / eps
  return t;
}

SymmetryReport verify_curvature_bound(const Functional& f, double a, double b,
                                      std::uint64_t n, std::uint64_t seed) {
  // throws when J'' is not positive on the grid (non-convex input)
  double curvature_ratio = second_derivative_bound(f, a, b, 10000);
  SymmetryReport rep = sample_sup_ratio(f, DomainSpec::interval(a, b), n, seed);
  rep.bound.present = true;
  rep.bound.value = curvature_ratio;
  rep.bound.kind = "curvature-ratio";
  rep.bound.has_bundle = false;
  rep.verdict = derive_verdict(rep.best, rep.bound, rep.ratio_slack, false);
  return rep;
}

}  // namespace bregsym
