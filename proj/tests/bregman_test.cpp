#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "bregsym/bounds.hpp"
#include "bregsym/bregman.hpp"

using namespace bregsym;

namespace {

Point pt(std::initializer_list<double> c) { return Point(std::vector<double>(c)); }

Point random_point(std::mt19937_64& eng, std::size_t dim, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Point p;
  p.coords.resize(dim);
  for (auto& c : p.coords) c = u(eng);
  return p;
}

}  // namespace

TEST_CASE("bregman closed-form examples") {
  BregmanValue h = bregman(Functional::hilbert(), pt({1.0, 0.0}), pt({0.0, 0.0}));
  CHECK(h.value == 0.5);
  CHECK(h.xi_y.coords == std::vector<double>{0.0, 0.0});
  CHECK(bregman(Functional::absolute(), pt({1.0}), pt({-0.1})).value ==
        doctest::Approx(2.0).epsilon(1e-15));
  // x = y gives exactly zero for every family
  for (const auto& f : {Functional::ppower(1.5), Functional::hilbert(),
                        Functional::absolute(), Functional::huber(),
                        Functional::sqrt_smoothed(0.01)}) {
    CHECK(bregman(f, pt({0.7}), pt({0.7})).value == 0.0);
  }
}

TEST_CASE("bregman validates dimensions") {
  CHECK_THROWS_AS(bregman(Functional::hilbert(), pt({1.0}), pt({1.0, 2.0})),
                  std::invalid_argument);
}

TEST_CASE("non-convex custom input is rejected by the sign guard") {
  CustomScalarFns fns;
  fns.value = [](double v) { return -v * v; };
  fns.d1 = [](double v) { return -2.0 * v; };
  Functional f = Functional::custom_scalar(fns);
  CHECK_THROWS_AS(bregman(f, pt({1.0}), pt({0.0})), std::domain_error);
}

TEST_CASE("nonnegativity over random pairs for every catalog family") {
  std::mt19937_64 eng(512);
  std::vector<Functional> fams = {
      Functional::ppower(1.1), Functional::ppower(1.5), Functional::ppower(2.0),
      Functional::ppower(3.0), Functional::hilbert(),   Functional::absolute(),
      Functional::huber(),     Functional::sqrt_smoothed(0.01)};
  for (const auto& f : fams) {
    bool scalar = f.family != Family::PPower && f.family != Family::HilbertQuadratic;
    std::size_t dim = scalar ? 1 : 3;
    for (int i = 0; i < 10000 / 8; ++i) {
      Point x = random_point(eng, dim, -10.0, 10.0);
      Point y = random_point(eng, dim, -10.0, 10.0);
      CHECK(bregman(f, x, y).value >= -1e-12);
      CHECK(bregman(f, y, x).value >= -1e-12);
    }
  }
  // kink selections at the abs origin keep nonnegativity
  for (double s : {-1.0, -0.3, 0.0, 0.9, 1.0}) {
    CHECK(bregman(Functional::absolute(), pt({2.0}), pt({0.0}), {s}).value >= 0.0);
  }
}

TEST_CASE("symmetric bregman equals the switched sum and the inner product") {
  std::mt19937_64 eng(77);
  BregmanValue a = bregman(Functional::hilbert(), pt({1.0, 0.0}), pt({0.0, 0.0}));
  CHECK(a.value == 0.5);
  CHECK(symmetric_bregman(Functional::hilbert(), pt({1.0, 0.0}), pt({0.0, 0.0})) == 1.0);
  CHECK(symmetric_bregman(Functional::absolute(), pt({1.0}), pt({-0.1})) ==
        doctest::Approx(2.2).epsilon(1e-15));
  CHECK(symmetric_bregman(Functional::huber(), pt({0.4}), pt({0.4})) == 0.0);
  for (const auto& f : {Functional::ppower(1.5), Functional::ppower(3.0),
                        Functional::hilbert(), Functional::sqrt_smoothed(0.5)}) {
    std::size_t dim = f.family == Family::SqrtSmoothed ? 1 : 4;
    for (int i = 0; i < 2000; ++i) {
      Point x = random_point(eng, dim, -8.0, 8.0);
      Point y = random_point(eng, dim, -8.0, 8.0);
      double s = symmetric_bregman(f, x, y);
      double sum = bregman(f, x, y).value + bregman(f, y, x).value;
      CHECK(std::fabs(s - sum) <= 1e-10 * (1.0 + std::fabs(sum)));
      CHECK(s >= -1e-12);
    }
  }
}

TEST_CASE("switched ratio conventions") {
  // Hilbert: exact symmetry
  std::mt19937_64 eng(5);
  for (int i = 0; i < 1000; ++i) {
    Point x = random_point(eng, 3, -10.0, 10.0);
    Point y = random_point(eng, 3, -10.0, 10.0);
    RatioValue r = switched_ratio(Functional::hilbert(), x, y);
    CHECK(!r.is_unbounded);
    CHECK(r.value == 1.0);
  }
  // degenerate x = y
  RatioValue d = switched_ratio(Functional::ppower(1.5), pt({2.0}), pt({2.0}));
  CHECK(d.value == 1.0);
  CHECK(!d.is_unbounded);
  // kink divergence sentinel: x off the kink, y at it with selection s = 0
  RatioValue ub = switched_ratio(Functional::absolute(), pt({1.0}), pt({0.0}));
  CHECK(ub.is_unbounded);
  // closed-form values
  CHECK(switched_ratio(Functional::absolute(), pt({1.0}), pt({-0.01})).value ==
        doctest::Approx(100.0).epsilon(1e-12));
  CHECK(switched_ratio(Functional::ppower(1.5), pt({0.0}), pt({1.0})).value ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("ratio is invariant under positive scaling for ppower") {
  std::mt19937_64 eng(13);
  std::uniform_real_distribution<double> scale(0.1, 50.0);
  for (double p : {1.3, 1.5, 2.0, 3.0}) {
    Functional f = Functional::ppower(p);
    for (int i = 0; i < 500; ++i) {
      Point x = random_point(eng, 2, -5.0, 5.0);
      Point y = random_point(eng, 2, -5.0, 5.0);
      double a = scale(eng);
      Point xs = x, ys = y;
      for (auto& c : xs.coords) c *= a;
      for (auto& c : ys.coords) c *= a;
      RatioValue r1 = switched_ratio(f, x, y);
      RatioValue r2 = switched_ratio(f, xs, ys);
      if (r1.is_unbounded || r2.is_unbounded) continue;
      CHECK(std::fabs(r1.value - r2.value) <= 1e-9 * (1.0 + std::fabs(r1.value)));
    }
  }
}

TEST_CASE("duality identity on both scalar and vector pairs") {
  std::mt19937_64 eng(101);
  auto self_dual = dual_bregman_check(Functional::hilbert(), pt({1.0}), pt({0.0}));
  CHECK(self_dual.first == 0.5);
  CHECK(self_dual.second == 0.5);
  auto zero = dual_bregman_check(Functional::ppower(3.0), pt({2.0}), pt({2.0}));
  CHECK(zero.first == 0.0);
  CHECK(zero.second == 0.0);
  for (double p : {1.2, 1.5, 2.0, 3.0, 5.0}) {
    Functional f = Functional::ppower(p);
    for (int i = 0; i < 10000 / 4; ++i) {
      Point x = random_point(eng, 1, -10.0, 10.0);
      Point y = random_point(eng, 1, -10.0, 10.0);
      auto [lhs, rhs] = dual_bregman_check(f, x, y);
      CHECK(std::fabs(lhs - rhs) <= 1e-9 * (1.0 + std::fabs(lhs)));
    }
  }
  CHECK_THROWS_AS(dual_bregman_check(Functional::absolute(), pt({1.0}), pt({0.5})),
                  std::invalid_argument);
}

TEST_CASE("ray reduction coordinates") {
  Functional f = Functional::ppower(1.5);
  RayCoordinates a = ray_reduce(f, pt({2.0}), pt({-1.0}));
  CHECK(a.r == 2.0);
  CHECK(a.theta == -1.0);
  RayCoordinates b = ray_reduce(f, pt({0.0}), pt({5.0}));
  CHECK(b.r == 0.0);
  CHECK(b.theta == 0.0);
  RayCoordinates c = ray_reduce(f, pt({3.0, 0.0}), pt({3.0, 0.0}));
  CHECK(c.r == 1.0);
  CHECK(c.theta == 1.0);
  CHECK_THROWS_AS(ray_reduce(f, pt({1.0}), pt({0.0})), std::invalid_argument);
  CHECK_THROWS_AS(ray_reduce(Functional::hilbert(), pt({1.0}), pt({2.0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(ray_reduce(Functional::ppower(1.5, {1.0}), pt({1.0}), pt({2.0})),
                  std::invalid_argument);
}

TEST_CASE("scalar ray identity ties distances to the ratio functions") {
  std::mt19937_64 eng(311);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  for (double p : {1.2, 1.5, 1.9}) {
    Functional f = Functional::ppower(p);
    for (int i = 0; i < 2000; ++i) {
      double xv = u(eng), yv = u(eng);
      if (std::fabs(yv) < 1e-3) continue;
      Point x = pt({xv}), y = pt({yv});
      RayCoordinates rc = ray_reduce(f, x, y);
      Point z = pt({xv / std::fabs(yv)});
      Point ey = pt({yv > 0 ? 1.0 : -1.0});
      auto [fv, gv] = fg_value({p, rc.r, rc.theta});
      double dzf = bregman(f, z, ey).value;
      double dgz = bregman(f, ey, z).value;
      CHECK(std::fabs(dzf - fv) <= 1e-10 * (1.0 + std::fabs(fv)));
      CHECK(std::fabs(dgz - gv) <= 1e-10 * (1.0 + std::fabs(gv)));
    }
  }
}

TEST_CASE("componentwise decomposition is an independent oracle") {
  CHECK(componentwise_bregman(Functional::ppower(2.0), pt({1.0, 0.0}), pt({0.0, 1.0})) ==
        doctest::Approx(1.0).epsilon(1e-15));
  std::mt19937_64 eng(404);
  for (double p : {1.5, 3.0}) {
    Functional f = Functional::ppower(p);
    for (int i = 0; i < 1000; ++i) {
      Point x = random_point(eng, 5, -10.0, 10.0);
      Point y = random_point(eng, 5, -10.0, 10.0);
      double direct = bregman(f, x, y).value;
      double split = componentwise_bregman(f, x, y);
      CHECK(std::fabs(direct - split) <= 1e-10 * (1.0 + std::fabs(direct)));
    }
    // dim 1: the two paths compute the same scalar quantity
    Point x = pt({2.5}), y = pt({-0.5});
    CHECK(componentwise_bregman(f, x, y) ==
          doctest::Approx(bregman(f, x, y).value).epsilon(1e-14));
  }
  // weighted decomposition agrees too
  Functional fw = Functional::ppower(1.5, {0.5, 2.0, 1.0});
  for (int i = 0; i < 500; ++i) {
    Point x = random_point(eng, 3, -5.0, 5.0);
    Point y = random_point(eng, 3, -5.0, 5.0);
    double direct = bregman(fw, x, y).value;
    double split = componentwise_bregman(fw, x, y);
    CHECK(std::fabs(direct - split) <= 1e-10 * (1.0 + std::fabs(direct)));
  }
  CHECK_THROWS_AS(componentwise_bregman(Functional::hilbert(), pt({1.0}), pt({0.0})),
                  std::invalid_argument);
}
