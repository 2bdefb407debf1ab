#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "onx/error.hpp"
#include "onx/expr.hpp"
#include "onx/rng.hpp"

using namespace onx;

namespace {

Box unit2() { return make_box({Rat(-1), Rat(-1)}, {Rat(1), Rat(1)}); }

std::vector<Rat> sample_in(Rng& g, const Box& b) {
  std::vector<Rat> x;
  for (std::size_t i = 0; i < b.lo.size(); ++i)
    x.push_back(rat_in_range(g, b.lo[i], b.hi[i], 8));
  return x;
}

// Random expression over `dim` variables, depth-bounded.
Expr random_expr(Rng& g, int dim, int depth) {
  if (depth == 0 || g.below(4) == 0) {
    if (g.below(2))
      return Expr::var(g.range(0, dim - 1));
    return Expr::constant(rat_in_range(g, Rat(-2), Rat(2), 4));
  }
  switch (g.below(5)) {
    case 0: return Expr::add(random_expr(g, dim, depth - 1), random_expr(g, dim, depth - 1));
    case 1: return Expr::sub(random_expr(g, dim, depth - 1), random_expr(g, dim, depth - 1));
    case 2: return Expr::scale(rat_in_range(g, Rat(-3, 2), Rat(3, 2), 3),
                               random_expr(g, dim, depth - 1));
    case 3: return Expr::max_of(random_expr(g, dim, depth - 1), random_expr(g, dim, depth - 1));
    default: return Expr::min_of(random_expr(g, dim, depth - 1), random_expr(g, dim, depth - 1));
  }
}

}  // namespace

TEST_CASE("point evaluation is exact") {
  // e(x) = max(x0 - 1, min(x1 + 1/2, 3 x0))
  Expr e = Expr::max_of(
      Expr::sub(Expr::var(0), Expr::constant(Rat(1))),
      Expr::min_of(Expr::add(Expr::var(1), Expr::constant(Rat(1, 2))),
                   Expr::scale(Rat(3), Expr::var(0))));
  CHECK(eval_point(e, {Rat(1, 3), Rat(0)}) == Rat(1, 2));
  CHECK(eval_point(e, {Rat(0), Rat(0)}) == Rat(0));
  CHECK(eval_point(e, {Rat(2), Rat(-5)}) == Rat(1));
  CHECK(e.max_var() == 1);
  CHECK(e.node_count() == 10);
  CHECK_THROWS_AS(eval_point(e, {Rat(0)}), invalid_input);
}

TEST_CASE("interval evaluation on affine pieces is the exact range") {
  // single occurrence of each variable: no dependency slack
  Expr e = Expr::add(Expr::scale(Rat(1, 2), Expr::var(0)),
                     Expr::scale(Rat(-1), Expr::var(1)));
  Interval iv = eval_interval(e, unit2());
  CHECK(iv == Interval{Rat(-3, 2), Rat(3, 2)});

  Expr c = Expr::constant(Rat(7, 3));
  CHECK(eval_interval(c, unit2()) == Interval{Rat(7, 3), Rat(7, 3)});
}

TEST_CASE("interval evaluation encloses sampled point values") {
  Rng g(5);
  Box dom = unit2();
  for (int trial = 0; trial < 40; ++trial) {
    Expr e = random_expr(g, 2, 4);
    Interval iv = eval_interval(e, dom);
    CHECK(iv.lo <= iv.hi);
    for (int t = 0; t < 25; ++t) {
      auto x = sample_in(g, dom);
      CHECK(iv.contains(eval_point(e, x)));
    }
  }
}

TEST_CASE("interval evaluation is inclusion monotone") {
  Rng g(17);
  Box outer = unit2();
  for (int trial = 0; trial < 40; ++trial) {
    Expr e = random_expr(g, 2, 4);
    auto a = sample_in(g, outer);
    auto b = sample_in(g, outer);
    std::vector<Rat> lo, hi;
    for (int i = 0; i < 2; ++i) {
      lo.push_back(rat_min(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(i)]));
      hi.push_back(rat_max(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(i)]));
    }
    Box inner = make_box(lo, hi);
    CHECK(eval_interval(e, inner).subset_of(eval_interval(e, outer)));
  }
}

TEST_CASE("dependency slack is an enclosure, never a lie") {
  // x - x has range {0}; the evaluator may widen but must still contain 0
  Expr e = Expr::sub(Expr::var(0), Expr::var(0));
  Interval iv = eval_interval(e, make_box({Rat(0)}, {Rat(1)}));
  CHECK(iv.contains(Rat(0)));
  CHECK(iv == Interval{Rat(-1), Rat(1)});  // documented behavior, not minimal
}

TEST_CASE("box maps evaluate pointwise and enclose images") {
  // rotate-ish contraction: (x, y) -> (y/2, -x/2)
  BoxMap m{{Expr::scale(Rat(1, 2), Expr::var(1)),
            Expr::scale(Rat(-1, 2), Expr::var(0))}};
  CHECK(map_point(m, {Rat(1), Rat(1, 3)}) ==
        std::vector<Rat>{Rat(1, 6), Rat(-1, 2)});

  Box img = map_box_enclosure(m, unit2());
  CHECK(img == make_box({Rat(-1, 2), Rat(-1, 2)}, {Rat(1, 2), Rat(1, 2)}));
  CHECK(enclosure_self_map(m, unit2()));

  BoxMap expand{{Expr::scale(Rat(2), Expr::var(0)), Expr::var(1)}};
  CHECK(!enclosure_self_map(expand, unit2()));

  // clamped tropical map: max(lo, min(hi, x + 1)) always self-maps
  Expr clamped = Expr::max_of(
      Expr::constant(Rat(-1)),
      Expr::min_of(Expr::constant(Rat(1)),
                   Expr::add(Expr::var(0), Expr::constant(Rat(1)))));
  BoxMap trop{{clamped, Expr::var(1)}};
  CHECK(enclosure_self_map(trop, unit2()));
}
