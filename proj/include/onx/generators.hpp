#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "onx/error.hpp"
#include "onx/expr.hpp"
#include "onx/finite_space.hpp"
#include "onx/maps.hpp"

namespace onx {

// A ready-to-run instance: a space, a family of self-maps on it, and the
// properties the generator claims for them. Annotations are claims only —
// the test suite re-derives every one with the corresponding checker.
struct FiniteBundle {
  FiniteSpace space;
  std::vector<MapTable> maps;
  json annotations;
  std::string note;
};

struct BoxBundle {
  BoxSpace space;
  std::vector<BoxMap> maps;
  json annotations;
  std::string note;
};

// One point of the tagged-thirds instance. The tag drives the map (negating
// points flip sign when scaled), the value drives the metric. level counts
// scaling steps from the top; -1 marks the origin.
struct TaggedPoint {
  Rat value;
  bool rational_tag;
  int level;
};

// Index-aligned with gen_tagged_thirds(depth).space: the origin first, then
// per level j = 0..depth the values +3^-j, -3^-j (rational tag) and
// +(7/10)3^-j, -(7/10)3^-j (irrational tag). 4*depth + 5 points total.
std::vector<TaggedPoint> tagged_thirds_points(int depth);

// One-third scaling on tagged points of [-1,1]: rational-tagged values map to
// -v/3, irrational-tagged to v/3, and the deepest level is redirected to 0 so
// the table is a genuine self-map. The map expands nearby opposite-tag pairs
// yet stays orbit-nonexpansive. depth >= 1; capped to keep the space small.
FiniteBundle gen_tagged_thirds(int depth);

// n points, all pairwise distances equal to d (n >= 2, d > 0), under the
// identity map: every point is fixed, yet no admissible non-singleton set has
// a strict center, so the solver stalls honestly.
FiniteBundle gen_equilateral(int n, const Rat& d);

// Integer line 0..n-1 with |i-j|, stepping one place toward the middle.
// Odd n collapses to the midpoint; even n descends to the adjacent middle
// pair and stalls there (adjacent pairs never have a strict center).
FiniteBundle gen_path(int n);

// Three equidistant points under the full rotation group: isometries with no
// common fixed point. The family is a group, hence interlaced; descent cannot
// shrink the whole space and the solver stalls with the equilateral witness.
FiniteBundle gen_rotation3();

// A hub at distance 1 from `leaves` leaves, leaves pairwise at distance 2,
// rotating the leaves and fixing the hub. One center shrink isolates the hub.
FiniteBundle gen_star(int leaves);

// Shortest-path completion of a random symmetric weight matrix, paired with a
// uniformly random table. Annotations record what the checkers found at
// generation time; the suite re-runs them.
FiniteBundle gen_random_space(int n, std::uint64_t seed);

// Coordinate-wise affine contraction with closed-form fixed point.
// Unshifted: ratio * x on [-1,1]^k, fixed point the origin. Shifted:
// ratio * x + (1-ratio)/2 on [0,1]^k, fixed point (1/2, ..., 1/2).
// ratio in (0,1); k >= 1, capped.
BoxBundle gen_box_contraction(int k, const Rat& ratio, bool shifted = false);

// Random max/min combinations of damped affine coordinates on [-1,1]^k.
// Coefficients and offsets are bounded so the interval image stays inside the
// ambient box; the generator still verifies the enclosure and retries, and
// gives up with cap_exceeded if no candidate passes.
BoxBundle gen_box_tropical(int k, std::uint64_t seed);

// The pair {x/3, -x} on [-1,1]: a contraction and an isometry sharing the
// fixed point 0. Descent alone cannot shrink past the isometry; one center
// shrink finishes the job.
BoxBundle gen_box_interval_pair();

}  // namespace onx
