#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "onx/box.hpp"
#include "onx/error.hpp"
#include "onx/rng.hpp"

using namespace onx;

namespace {

std::vector<Rat> rv(std::initializer_list<const char*> xs) {
  std::vector<Rat> out;
  for (auto* s : xs) out.push_back(rat_from_string(s));
  return out;
}

std::vector<Rat> sample_in(Rng& g, const Box& b, unsigned max_den = 6) {
  std::vector<Rat> x;
  for (std::size_t i = 0; i < b.lo.size(); ++i)
    x.push_back(rat_in_range(g, b.lo[i], b.hi[i], max_den));
  return x;
}

}  // namespace

TEST_CASE("construction validates corners") {
  CHECK_NOTHROW(make_box(rv({"0", "0"}), rv({"1", "1"})));
  CHECK_NOTHROW(make_box(rv({"1"}), rv({"1"})));  // degenerate is fine
  CHECK_THROWS_AS(make_box(rv({"1"}), rv({"0"})), invalid_input);
  CHECK_THROWS_AS(make_box(rv({"0", "0"}), rv({"1"})), invalid_input);
  CHECK_THROWS_AS(make_box({}, {}), invalid_input);
}

TEST_CASE("delta, radius, center on a rectangle") {
  Box b = make_box(rv({"0", "0"}), rv({"1", "3"}));
  CHECK(box_delta(b) == Rat(3));

  auto c = box_chebyshev_center(b);
  CHECK(c == rv({"1/2", "3/2"}));
  CHECK(box_radius_from(c, b) == Rat(3, 2));  // exactly delta / 2

  CHECK(box_radius_from(rv({"0", "0"}), b) == Rat(3));   // far corner
  CHECK(box_radius_from(rv({"2", "0"}), b) == Rat(3));   // outside point
  CHECK(linf_dist(rv({"1", "5"}), rv({"0", "1"})) == Rat(4));
}

TEST_CASE("ball hull shrinks per coordinate and clips to the space") {
  BoxSpace sp = make_box_space(make_box(rv({"-1", "-1"}), rv({"1", "1"})));
  Box A = make_box(rv({"0", "0"}), rv({"1", "1"}));

  auto h = box_ball_hull(sp, A, Rat(1, 2));
  REQUIRE(h.has_value());
  CHECK(*h == make_box(rv({"1/2", "1/2"}), rv({"1/2", "1/2"})));

  CHECK(!box_ball_hull(sp, A, Rat(1, 4)).has_value());  // 2r below the width

  // hull of a point is the ball, clipped to the ambient box
  Box pt = make_box(rv({"3/4", "0"}), rv({"3/4", "0"}));
  auto ball = box_ball_hull(sp, pt, Rat(1, 2));
  REQUIRE(ball.has_value());
  CHECK(*ball == make_box(rv({"1/4", "-1/2"}), rv({"1", "1/2"})));

  CHECK_THROWS_AS(box_ball_hull(sp, A, Rat(-1)), invalid_input);
}

TEST_CASE("hull membership matches the radius predicate") {
  BoxSpace sp = make_box_space(make_box(rv({"-2", "-2", "-2"}), rv({"2", "2", "2"})));
  Box A = make_box(rv({"-1/2", "0", "1/3"}), rv({"1/2", "1", "1/3"}));
  Rng g(314);
  for (const Rat& r : {Rat(1, 2), Rat(2, 3), Rat(1)}) {
    auto h = box_ball_hull(sp, A, r);
    for (int t = 0; t < 80; ++t) {
      auto y = sample_in(g, sp.ambient);
      bool in_hull = h.has_value() && box_contains(*h, y);
      CHECK(in_hull == (box_radius_from(y, A) <= r));
    }
  }
}

TEST_CASE("chebyshev center is optimal among samples") {
  Rng g(2718);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rat> lo, hi;
    for (int i = 0; i < 3; ++i) {
      Rat a = rat_in_range(g, Rat(-2), Rat(2), 5);
      Rat w = rat_in_range(g, Rat(0), Rat(2), 5);
      lo.push_back(a);
      hi.push_back(a + w);
    }
    Box b = make_box(lo, hi);
    Rat half = box_delta(b) / 2;
    CHECK(box_radius_from(box_chebyshev_center(b), b) == half);
    for (int t = 0; t < 20; ++t)
      CHECK(box_radius_from(sample_in(g, b), b) >= half);
  }
}

TEST_CASE("cov is the componentwise bounding box") {
  auto pts = std::vector<std::vector<Rat>>{rv({"0", "1"}), rv({"-1/2", "3"}),
                                           rv({"1/4", "2"})};
  CHECK(box_cov_points(pts) == make_box(rv({"-1/2", "1"}), rv({"1/4", "3"})));

  Box a = make_box(rv({"0"}), rv({"1"}));
  Box b = make_box(rv({"2"}), rv({"3"}));
  CHECK(box_cov_boxes({a, b}) == make_box(rv({"0"}), rv({"3"})));
  CHECK(box_delta(box_cov_boxes({a, b})) == Rat(3));

  CHECK_THROWS_AS(box_cov_points({}), invalid_input);
}

TEST_CASE("intersection, subset, clamp") {
  Box a = make_box(rv({"0", "0"}), rv({"2", "2"}));
  Box b = make_box(rv({"1", "1"}), rv({"3", "3"}));
  auto m = box_intersect(a, b);
  REQUIRE(m.has_value());
  CHECK(*m == make_box(rv({"1", "1"}), rv({"2", "2"})));
  CHECK(box_subset(*m, a));
  CHECK(box_subset(*m, b));
  CHECK(!box_subset(a, b));

  Box far = make_box(rv({"5", "5"}), rv({"6", "6"}));
  CHECK(!box_intersect(a, far).has_value());

  CHECK(box_clamp(a, rv({"-1", "5"})) == rv({"0", "2"}));
  CHECK(box_contains(a, rv({"2", "0"})));
  CHECK(!box_contains(a, rv({"2", "-1/100"})));
}

TEST_CASE("any point is at distance at least delta/2") {
  Rng g(99);
  Box b = make_box(rv({"-1", "0"}), rv({"1", "1/3"}));
  BoxSpace sp = make_box_space(make_box(rv({"-3", "-3"}), rv({"3", "3"})));
  for (int t = 0; t < 100; ++t) {
    auto x = sample_in(g, sp.ambient);
    CHECK(Rat(2) * box_radius_from(x, b) >= box_delta(b));
  }
}
