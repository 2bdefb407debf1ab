#include "onx/box.hpp"

#include "onx/error.hpp"

namespace onx {

namespace {

void check_dim(int a, int b, const char* op) {
  if (a != b)
    throw invalid_input("dimension mismatch", {{"op", op}, {"lhs", a}, {"rhs", b}});
}

}  // namespace

Box make_box(std::vector<Rat> lo, std::vector<Rat> hi) {
  if (lo.empty() || lo.size() != hi.size())
    throw invalid_input("box corners must be nonempty and of equal dimension",
                        {{"lo", lo.size()}, {"hi", hi.size()}});
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (hi[i] < lo[i])
      throw invalid_input("box has lo > hi", {{"coordinate", i}});
  return Box{std::move(lo), std::move(hi)};
}

BoxSpace make_box_space(Box ambient) {
  return BoxSpace{make_box(ambient.lo, ambient.hi)};
}

Rat linf_dist(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  check_dim(static_cast<int>(a.size()), static_cast<int>(b.size()), "linf_dist");
  Rat best(0);
  for (std::size_t i = 0; i < a.size(); ++i)
    best = rat_max(best, rat_abs(a[i] - b[i]));
  return best;
}

Rat box_delta(const Box& b) {
  Rat best(0);
  for (int i = 0; i < b.dim(); ++i)
    best = rat_max(best, b.hi[static_cast<std::size_t>(i)] - b.lo[static_cast<std::size_t>(i)]);
  return best;
}

Rat box_radius_from(const std::vector<Rat>& x, const Box& b) {
  check_dim(static_cast<int>(x.size()), b.dim(), "box_radius_from");
  Rat best(0);
  for (std::size_t i = 0; i < x.size(); ++i)
    best = rat_max(best, rat_max(b.hi[i] - x[i], x[i] - b.lo[i]));
  return best;
}

std::vector<Rat> box_chebyshev_center(const Box& b) {
  std::vector<Rat> c;
  c.reserve(b.lo.size());
  for (std::size_t i = 0; i < b.lo.size(); ++i)
    c.push_back((b.lo[i] + b.hi[i]) / 2);
  return c;
}

bool box_contains(const Box& b, const std::vector<Rat>& x) {
  check_dim(static_cast<int>(x.size()), b.dim(), "box_contains");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < b.lo[i] || b.hi[i] < x[i]) return false;
  return true;
}

bool box_subset(const Box& inner, const Box& outer) {
  check_dim(inner.dim(), outer.dim(), "box_subset");
  for (std::size_t i = 0; i < inner.lo.size(); ++i)
    if (inner.lo[i] < outer.lo[i] || outer.hi[i] < inner.hi[i]) return false;
  return true;
}

std::optional<Box> box_intersect(const Box& a, const Box& b) {
  check_dim(a.dim(), b.dim(), "box_intersect");
  Box r;
  r.lo.reserve(a.lo.size());
  r.hi.reserve(a.lo.size());
  for (std::size_t i = 0; i < a.lo.size(); ++i) {
    Rat lo = rat_max(a.lo[i], b.lo[i]);
    Rat hi = rat_min(a.hi[i], b.hi[i]);
    if (hi < lo) return std::nullopt;
    r.lo.push_back(lo);
    r.hi.push_back(hi);
  }
  return r;
}

std::optional<Box> box_ball_hull(const BoxSpace& sp, const Box& A, const Rat& r) {
  check_dim(sp.dim(), A.dim(), "box_ball_hull");
  if (r < 0) throw invalid_input("negative radius", {{"r", rat_to_string(r)}});
  Box h;
  h.lo.reserve(A.lo.size());
  h.hi.reserve(A.lo.size());
  for (std::size_t i = 0; i < A.lo.size(); ++i) {
    h.lo.push_back(A.hi[i] - r);
    h.hi.push_back(A.lo[i] + r);
    if (h.hi[i] < h.lo[i]) return std::nullopt;
  }
  return box_intersect(h, sp.ambient);
}

Box box_cov_points(const std::vector<std::vector<Rat>>& pts) {
  if (pts.empty()) throw invalid_input("empty set", {{"op", "box_cov_points"}});
  Box b{pts[0], pts[0]};
  for (const auto& p : pts) {
    check_dim(static_cast<int>(p.size()), b.dim(), "box_cov_points");
    for (std::size_t i = 0; i < p.size(); ++i) {
      b.lo[i] = rat_min(b.lo[i], p[i]);
      b.hi[i] = rat_max(b.hi[i], p[i]);
    }
  }
  return b;
}

Box box_cov_boxes(const std::vector<Box>& boxes) {
  if (boxes.empty()) throw invalid_input("empty set", {{"op", "box_cov_boxes"}});
  Box b = boxes[0];
  for (const auto& x : boxes) {
    check_dim(x.dim(), b.dim(), "box_cov_boxes");
    for (std::size_t i = 0; i < x.lo.size(); ++i) {
      b.lo[i] = rat_min(b.lo[i], x.lo[i]);
      b.hi[i] = rat_max(b.hi[i], x.hi[i]);
    }
  }
  return b;
}

std::vector<Rat> box_clamp(const Box& b, std::vector<Rat> x) {
  check_dim(static_cast<int>(x.size()), b.dim(), "box_clamp");
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] = rat_min(rat_max(x[i], b.lo[i]), b.hi[i]);
  return x;
}

}  // namespace onx
