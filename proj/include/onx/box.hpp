#pragma once

#include <optional>
#include <vector>

#include "onx/rat.hpp"

namespace onx {

// Axis-aligned box with rational corners, lo[i] <= hi[i]. Under the max
// metric, balls are boxes and intersections of balls are boxes, so these are
// exactly the admissible sets of a box space.
struct Box {
  std::vector<Rat> lo, hi;

  int dim() const { return static_cast<int>(lo.size()); }
  bool operator==(const Box&) const = default;
};

// Validates matching dimensions, dim >= 1, lo <= hi componentwise.
Box make_box(std::vector<Rat> lo, std::vector<Rat> hi);

// The space is the ambient box itself; every set the engine touches lives
// inside it.
struct BoxSpace {
  Box ambient;
  int dim() const { return ambient.dim(); }
};

BoxSpace make_box_space(Box ambient);

Rat linf_dist(const std::vector<Rat>& a, const std::vector<Rat>& b);

// Widest edge: the diameter under the max metric.
Rat box_delta(const Box& b);

// sup over the box of the distance to x; attained at a corner, so exact.
Rat box_radius_from(const std::vector<Rat>& x, const Box& b);

// Midpoint. Its distance to the box is exactly box_delta / 2, the least
// possible for any point, so it is always a strict center when delta > 0.
std::vector<Rat> box_chebyshev_center(const Box& b);

bool box_contains(const Box& b, const std::vector<Rat>& x);
bool box_subset(const Box& inner, const Box& outer);
std::optional<Box> box_intersect(const Box& a, const Box& b);

// B[A, r] within the space: per coordinate [hi-r, lo+r], clipped to the
// ambient box. Empty (nullopt) iff some edge of A is wider than 2r.
std::optional<Box> box_ball_hull(const BoxSpace& sp, const Box& A, const Rat& r);

// Smallest box containing the inputs (the cov of the union). Inputs nonempty.
Box box_cov_points(const std::vector<std::vector<Rat>>& pts);
Box box_cov_boxes(const std::vector<Box>& boxes);

// Componentwise clamp of x into b.
std::vector<Rat> box_clamp(const Box& b, std::vector<Rat> x);

}  // namespace onx
