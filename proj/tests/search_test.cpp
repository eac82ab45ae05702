#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "bregsym/search.hpp"

using namespace bregsym;

namespace {

Point pt(std::initializer_list<double> c) { return Point(std::vector<double>(c)); }

Functional quartic() {
  CustomScalarFns fns;
  fns.value = [](double v) { return v * v * v * v / 12.0 + v * v / 2.0; };
  fns.d1 = [](double v) { return v * v * v / 3.0 + v; };
  fns.d2 = [](double v) { return v * v + 1.0; };
  return Functional::custom_scalar(fns);
}

RatioWitness scored(const Functional& f, Point x, Point y) {
  RatioWitness w;
  w.d_xy = bregman(f, x, y).value;
  w.d_yx = bregman(f, y, x).value;
  w.ratio = switched_ratio(f, x, y);
  w.x = std::move(x);
  w.y = std::move(y);
  return w;
}

bool same_witness(const RatioWitness& a, const RatioWitness& b) {
  return a.x.coords == b.x.coords && a.y.coords == b.y.coords &&
         a.d_xy == b.d_xy && a.d_yx == b.d_yx &&
         a.ratio.value == b.ratio.value &&
         a.ratio.is_unbounded == b.ratio.is_unbounded;
}

}  // namespace

TEST_CASE("domain validation") {
  CHECK_THROWS_AS(DomainSpec::box(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(DomainSpec::box(1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(DomainSpec::box(1, -2.0), std::invalid_argument);
  CHECK_THROWS_AS(DomainSpec::pair_ball(2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(DomainSpec::ray(0.0, 1.0, {-1.0}), std::invalid_argument);
  CHECK_THROWS_AS(DomainSpec::ray(1.0, 0.5, {-1.0}), std::invalid_argument);
  CHECK_THROWS_AS(DomainSpec::ray(1e-9, 1e9, {}), std::invalid_argument);
  CHECK_THROWS_AS(DomainSpec::ray(1e-9, 1e9, {2.0}), std::invalid_argument);
  // scalar rays admit only theta = +-1
  CHECK_THROWS_AS(DomainSpec::ray(1e-9, 1e9, {0.5}, 1), std::invalid_argument);
  CHECK_NOTHROW(DomainSpec::ray(1e-9, 1e9, {0.5}, 2));
  CHECK_THROWS_AS(DomainSpec::interval(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(DomainSpec::interval(2.0, -2.0), std::invalid_argument);
  CHECK(std::string(domain_kind_name(DomainSpec::Kind::PairBall)) == "pair-ball");
}

TEST_CASE("reports are identical across thread counts") {
  Functional f = Functional::ppower(1.5);
  DomainSpec dom = DomainSpec::box(2, 5.0);
  SymmetryReport serial = sample_sup_ratio(f, dom, 20000, 42, 1);
  SymmetryReport parallel = sample_sup_ratio(f, dom, 20000, 42, 4);
  CHECK(same_witness(serial.best, parallel.best));
  CHECK(serial.samples_evaluated == parallel.samples_evaluated);
  CHECK(serial.verdict == parallel.verdict);
  // more workers than samples degrades gracefully
  SymmetryReport tiny = sample_sup_ratio(f, dom, 3, 42, 16);
  CHECK(tiny.samples == 3);
}

TEST_CASE("sup is monotone in the sample count prefix") {
  Functional f = Functional::ppower(1.5);
  DomainSpec dom = DomainSpec::box(1, 3.0);
  double prev = 0.0;
  for (std::uint64_t n : {500, 2000, 8000, 32000}) {
    SymmetryReport rep = sample_sup_ratio(f, dom, n, 7);
    REQUIRE(!rep.best.ratio.is_unbounded);
    CHECK(rep.best.ratio.value >= prev);
    prev = rep.best.ratio.value;
  }
}

TEST_CASE("sup never shrinks when the box grows") {
  for (double p : {1.3, 2.5}) {
    Functional f = Functional::ppower(p);
    double prev = 0.0;
    for (double R : {0.25, 1.0, 3.0, 10.0}) {
      SymmetryReport rep = sample_sup_ratio(f, DomainSpec::box(1, R), 5000, 99);
      REQUIRE(!rep.best.ratio.is_unbounded);
      CHECK(rep.best.ratio.value >= prev);
      prev = rep.best.ratio.value;
    }
  }
  // when the large-r ray stream carries the sup, its witnesses are chosen
  // scale-invariantly and the report does not depend on the box size at all
  Functional f = Functional::ppower(1.5);
  SymmetryReport a = sample_sup_ratio(f, DomainSpec::box(1, 1.0), 20000, 5);
  SymmetryReport b = sample_sup_ratio(f, DomainSpec::box(1, 3.0), 20000, 5);
  SymmetryReport c = sample_sup_ratio(f, DomainSpec::box(1, 10.0), 20000, 5);
  CHECK(a.best.ratio.value == b.best.ratio.value);
  CHECK(b.best.ratio.value == c.best.ratio.value);
  CHECK(a.best.d_xy == c.best.d_xy);
  CHECK(a.best.d_yx == c.best.d_yx);
}

TEST_CASE("hilbert symmetry holds in every dimension") {
  for (std::size_t dim : {1, 3, 10}) {
    SymmetryReport rep =
        sample_sup_ratio(Functional::hilbert(), DomainSpec::box(dim, 10.0), 10000, 5);
    REQUIRE(!rep.best.ratio.is_unbounded);
    CHECK(std::fabs(rep.best.ratio.value - 1.0) <= 1e-9);
    CHECK(rep.verdict == Verdict::BoundedWithinTheory);
    CHECK(rep.bound.present);
    CHECK(rep.bound.value == 1.0);
  }
}

TEST_CASE("soundness: empirical sup stays below each family bound") {
  struct Case {
    Functional f;
    DomainSpec dom;
  };
  std::vector<Case> cases = {
      {Functional::ppower(1.1), DomainSpec::box(1, 100.0)},
      {Functional::ppower(1.5), DomainSpec::box(3, 10.0)},
      {Functional::ppower(3.0), DomainSpec::box(2, 50.0)},
      {Functional::ppower(1.5), DomainSpec::pair_ball(2, 2.0)},
      {Functional::hilbert(), DomainSpec::pair_ball(3, 1.0)},
      {Functional::sqrt_smoothed(0.01), DomainSpec::box(1, 1.0)},
      {Functional::huber(), DomainSpec::box(1, 1.0)},
      {quartic(), DomainSpec::box(1, 1.0)},
  };
  for (const auto& c : cases) {
    SymmetryReport rep = sample_sup_ratio(c.f, c.dom, 5000, 1234);
    REQUIRE(rep.bound.present);
    REQUIRE(!rep.best.ratio.is_unbounded);
    CHECK(rep.verdict == Verdict::BoundedWithinTheory);
    CHECK(rep.best.ratio.value <= rep.bound.value * (1.0 + 1e-9));
  }
}

TEST_CASE("within the quadratic region huber is exactly symmetric") {
  SymmetryReport rep =
      sample_sup_ratio(Functional::huber(), DomainSpec::box(1, 1.0), 20000, 8);
  CHECK(rep.bound.value == 1.0);
  CHECK(rep.best.ratio.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("divergent families are detected, bounded tails are not") {
  SymmetryReport abs_rep =
      sample_sup_ratio(Functional::absolute(), DomainSpec::box(1, 1.0), 20000, 1);
  CHECK(abs_rep.verdict == Verdict::UnboundedDetected);
  CHECK(!abs_rep.bound.present);
  SymmetryReport huber_rep =
      sample_sup_ratio(Functional::huber(), DomainSpec::box(1, 3.0), 20000, 1);
  CHECK(huber_rep.verdict == Verdict::UnboundedDetected);
  // the smooth pair-ball tail has no finite catalog constant but must not
  // trip the divergence rule
  SymmetryReport sqrt_rep = sample_sup_ratio(Functional::sqrt_smoothed(0.01),
                                             DomainSpec::pair_ball(1, 1.0), 20000, 1);
  CHECK(!sqrt_rep.bound.present);
  CHECK(sqrt_rep.verdict == Verdict::BoundedWithinTheory);
  // determinism of the detection path
  SymmetryReport again =
      sample_sup_ratio(Functional::absolute(), DomainSpec::box(1, 1.0), 20000, 1);
  CHECK(same_witness(abs_rep.best, again.best));
}

TEST_CASE("a wrong theoretical constant is flagged as exceeds-theory") {
  // value/d1 of sqrt-smoothed eps=0.01 (true sup near 10) with a lying d2
  // that claims constant curvature, i.e. bound 1
  CustomScalarFns fns;
  fns.value = [](double v) { return std::sqrt(v * v + 0.01); };
  fns.d1 = [](double v) { return v / std::sqrt(v * v + 0.01); };
  fns.d2 = [](double) { return 1.0; };
  SymmetryReport rep = sample_sup_ratio(Functional::custom_scalar(fns),
                                        DomainSpec::box(1, 1.0), 20000, 17);
  REQUIRE(rep.bound.present);
  CHECK(rep.bound.value == 1.0);
  CHECK(rep.best.ratio.value > 2.0);
  CHECK(rep.verdict == Verdict::ExceedsTheory);
}

TEST_CASE("ray domains sample the scale-reduced pairs directly") {
  Functional f = Functional::ppower(1.5);
  DomainSpec dom = DomainSpec::ray(1e-6, 1e6, {-1.0, 1.0});
  SymmetryReport rep = sample_sup_ratio(f, dom, 20000, 3);
  CHECK(rep.verdict == Verdict::BoundedWithinTheory);
  CHECK(rep.best.ratio.value <= 4.0 + 1e-9);
  CHECK(rep.best.ratio.value > 2.0);
  CHECK_THROWS_AS(sample_sup_ratio(Functional::hilbert(), dom, 100, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(sample_sup_ratio(Functional::ppower(1.5, {1.0}), dom, 100, 3),
                  std::invalid_argument);
}

TEST_CASE("refinement never lowers the ratio and respects the domain") {
  Functional f = Functional::ppower(1.5);
  DomainSpec dom = DomainSpec::box(1, 100.0);
  RatioWitness start = scored(f, pt({3.0}), pt({-0.5}));
  RatioWitness refined = adversarial_refine(f, dom, start, 40);
  REQUIRE(!refined.ratio.is_unbounded);
  CHECK(refined.ratio.value >= start.ratio.value);
  CHECK(refined.ratio.value <= 4.0 + 1e-9);
  for (double c : refined.x.coords) CHECK(std::fabs(c) <= 100.0);
  for (double c : refined.y.coords) CHECK(std::fabs(c) <= 100.0);

  // hilbert witnesses cannot improve
  RatioWitness h = scored(Functional::hilbert(), pt({1.0}), pt({0.25}));
  RatioWitness hr = adversarial_refine(Functional::hilbert(), dom, h, 20);
  CHECK(hr.ratio.value == 1.0);

  // the abs ratio strictly improves as the refinement shrinks |y|
  RatioWitness a = scored(Functional::absolute(), pt({0.5}), pt({-0.25}));
  RatioWitness ar =
      adversarial_refine(Functional::absolute(), DomainSpec::box(1, 1.0), a, 30);
  bool improved = ar.ratio.is_unbounded || ar.ratio.value > a.ratio.value;
  CHECK(improved);
  CHECK_THROWS_AS(adversarial_refine(f, dom, start, -1), std::invalid_argument);
}

TEST_CASE("kink counterexample values flow through the distance evaluator") {
  CounterexampleTriple t = counterexample_abs(1.0, 0.01);
  CHECK(t.d_switch == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(t.d_orig == doctest::Approx(0.02).epsilon(1e-12));
  CHECK(t.ratio == doctest::Approx(100.0).epsilon(1e-12));
  CounterexampleTriple sym = counterexample_abs(1.0, 1.0);
  CHECK(sym.d_switch == 2.0);
  CHECK(sym.d_orig == 2.0);
  CHECK(sym.ratio == 1.0);
  CHECK(counterexample_abs(5.0, 1e-6).ratio == doctest::Approx(5e6).epsilon(1e-12));
  for (int k = 1; k <= 6; ++k) {
    double eps = std::pow(10.0, -k);
    CounterexampleTriple c = counterexample_abs(1.0, eps);
    CHECK(std::fabs(c.ratio - std::pow(10.0, k)) <= 1e-12 * std::pow(10.0, k));
    CHECK(std::fabs(c.d_switch - 2.0) <= 1e-12);
    CHECK(std::fabs(c.d_orig - 2.0 * eps) <= 1e-12 * 2.0 * eps);
  }
  CHECK_THROWS_AS(counterexample_abs(0.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(counterexample_abs(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(counterexample_abs(-1.0, 0.1), std::invalid_argument);
}

TEST_CASE("curvature-break counterexample matches its closed form") {
  CHECK(counterexample_huber(2.0, 0.1).ratio == doctest::Approx(21.0).epsilon(1e-10));
  CHECK(counterexample_huber(2.0, 0.01).ratio == doctest::Approx(201.0).epsilon(1e-10));
  for (double x : {1.5, 2.0, 4.0}) {
    for (double eps : {0.1, 0.01, 0.001}) {
      CounterexampleTriple t = counterexample_huber(x, eps);
      double closed_ratio = 1.0 + 2.0 * (x - 1.0) / eps;
      CHECK(std::fabs(t.ratio - closed_ratio) <= 1e-10 * closed_ratio);
      CHECK(std::fabs(t.d_orig - eps * eps / 2.0) <= 1e-10 * eps * eps);
      CHECK(std::fabs(t.d_switch - (eps * (x - 1.0) + eps * eps / 2.0)) <=
            1e-10 * t.d_switch);
    }
  }
  // finite at eps -> 1-: ratio tends to 1 + 2(x-1)
  CHECK(counterexample_huber(2.0, 1.0 - 1e-6).ratio == doctest::Approx(3.0).epsilon(1e-5));
  CHECK_THROWS_AS(counterexample_huber(1.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(counterexample_huber(2.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(counterexample_huber(2.0, 1.0), std::invalid_argument);
}

TEST_CASE("curvature bound check on intervals") {
  SymmetryReport h = verify_curvature_bound(Functional::hilbert(), -1.0, 1.0, 5000, 2);
  CHECK(h.bound.value == 1.0);
  CHECK(h.best.ratio.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(h.verdict == Verdict::BoundedWithinTheory);

  SymmetryReport q = verify_curvature_bound(quartic(), -1.0, 1.0, 20000, 2);
  CHECK(q.bound.value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(q.best.ratio.value <= 2.0 + 1e-9);
  CHECK(q.verdict == Verdict::BoundedWithinTheory);

  SymmetryReport s =
      verify_curvature_bound(Functional::sqrt_smoothed(0.01), -1.0, 1.0, 20000, 2);
  CHECK(s.bound.value == doctest::Approx(std::pow(101.0, 1.5)).epsilon(1e-9));
  CHECK(s.best.ratio.value <= std::sqrt(101.0) + 1e-9);
  CHECK(s.verdict == Verdict::BoundedWithinTheory);

  CHECK_THROWS_AS(verify_curvature_bound(Functional::absolute(), -1.0, 1.0, 100, 2),
                  std::invalid_argument);
  CustomScalarFns concave;
  concave.value = [](double v) { return -v * v; };
  concave.d1 = [](double v) { return -2.0 * v; };
  concave.d2 = [](double) { return -2.0; };
  CHECK_THROWS_AS(
      verify_curvature_bound(Functional::custom_scalar(concave), -1.0, 1.0, 100, 2),
      std::domain_error);
}

TEST_CASE("verdict names") {
  CHECK(std::string(verdict_name(Verdict::BoundedWithinTheory)) == "bounded-within-theory");
  CHECK(std::string(verdict_name(Verdict::ExceedsTheory)) == "exceeds-theory");
  CHECK(std::string(verdict_name(Verdict::UnboundedDetected)) == "unbounded-detected");
}
