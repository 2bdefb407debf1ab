#pragma once

#include <optional>
#include <string>
#include <vector>

#include "onx/expr.hpp"
#include "onx/finite_space.hpp"

namespace onx {

// Self-map of a finite space, tabulated: point i goes to image[i].
struct MapTable {
  std::vector<int> image;
  std::string name;

  int apply(int x) const { return image[static_cast<std::size_t>(x)]; }
  int n() const { return static_cast<int>(image.size()); }
};

// Throws invalid_input unless every image index lies in [0, n).
void validate_map(const MapTable& t, int n);

MapTable identity_map(int n);
MapTable compose(const MapTable& outer, const MapTable& inner);  // outer after inner
bool is_bijection(const MapTable& t);
std::optional<MapTable> inverse_of(const MapTable& t);

// o_T(x) = {x} union all forward iterates; exact, stabilizes within n steps.
PointSet orbit(const MapTable& t, int x);

// Ordered-pair counterexample: lhs = d(Tx, Sy) exceeded rhs.
struct PairCex {
  int x, y;
  Rat lhs, rhs;
};

struct QuadCex {
  int t, s;  // indices into the family
  int x, y;
  Rat lhs, rhs;
};

struct MapVerdict {
  bool holds = false;
  std::optional<PairCex> cex;  // lexicographically first (x, y) failure
};

// d(Tx, Ty) <= d(x, y) for all pairs.
MapVerdict check_nonexpansive(const FiniteSpace& sp, const MapTable& t);

// d(Tx, Ty) <= a d(x, y) + b d(x, Ty); requires a, b >= 0 and a + b <= 1.
MapVerdict check_mean_nonexpansive(const FiniteSpace& sp, const MapTable& t,
                                   const Rat& a, const Rat& b);

// d(Tx, Ty) <= D(x, o_T(y)) for all ordered pairs.
MapVerdict check_orbit_nonexpansive(const FiniteSpace& sp, const MapTable& t);

struct InterlacedVerdict {
  bool holds = false;
  std::optional<QuadCex> cex;
};

// d(Tx, Sy) <= sup over R in the family of D(x, o_R(y)), all ordered choices.
InterlacedVerdict check_interlaced(const FiniteSpace& sp,
                                   const std::vector<MapTable>& family);

struct GroupVerdict {
  bool is_group = false;
  // empty when is_group; otherwise one of not-bijection, missing-identity,
  // not-closed, missing-inverse
  std::string failure;
  std::optional<int> witness_member;
  std::optional<std::pair<int, int>> witness_pair;  // for not-closed

  bool all_orbit_nonexpansive = false;
  std::optional<int> orbit_cex_member;
  std::optional<PairCex> orbit_cex;

  // Filled when is_group and all members orbit-nonexpansive: such a family
  // is always interlaced, and we re-verify rather than assume.
  std::optional<InterlacedVerdict> interlaced;
};

GroupVerdict check_group(const FiniteSpace& sp,
                         const std::vector<MapTable>& family);

struct CommuteVerdict {
  bool holds = false;
  std::optional<int> t, s, x;  // T(S(x)) != S(T(x))
};

CommuteVerdict check_commuting(const std::vector<MapTable>& family);

struct ClassifyReport {
  MapVerdict nonexpansive;
  MapVerdict orbit_nonexpansive;
  std::optional<Rat> mean_a, mean_b;
  std::optional<MapVerdict> mean;  // present when params were supplied
};

ClassifyReport classify_map(const FiniteSpace& sp, const MapTable& t,
                            const std::optional<std::pair<Rat, Rat>>& mean_params);

// ---- box-side hypothesis falsification (sampling + enclosures) ----

// Smallest box the iteration can certify to contain the whole forward orbit
// of y. closed == true means the enclosure absorbed one more map step, so it
// provably contains every iterate; otherwise it only covers the prefix seen.
struct OrbitEnclosure {
  Box box;
  bool closed = false;
  int iterations = 0;
};

OrbitEnclosure orbit_enclosure(const BoxSpace& sp, const BoxMap& m,
                               const std::vector<Rat>& y, int iter_budget);

struct BoxPairCex {
  std::vector<Rat> x, y;
  Rat lhs;        // d(Tx, Ty), exact
  Rat rhs_upper;  // certified upper bound on D(x, o_T(y))
};

// Per-pair outcome counts. A reported violation is enclosure-backed: the
// exact lhs exceeds a proven upper bound on the orbit radius. Certified pairs
// satisfy the inequality against an exact orbit-prefix lower bound.
struct FalsifyReport {
  long total = 0;
  long certified = 0;
  long inconclusive = 0;
  bool violation_found = false;
  std::optional<BoxPairCex> violation;
  std::optional<int> violating_map;  // index in the family
};

struct FalsifyConfig {
  long samples = 1000;
  std::uint64_t seed = 0;
  int orbit_budget = 64;
  unsigned max_den = 64;
};

// Samples pairs (x, y) in the ambient box and tests each family member's
// orbit-nonexpansiveness, three-valued per pair.
FalsifyReport falsify_orbit_nonexpansive(const BoxSpace& sp,
                                         const std::vector<BoxMap>& family,
                                         const FalsifyConfig& cfg);

// Same sampling scheme against the interlacing inequality of the family.
FalsifyReport falsify_interlaced(const BoxSpace& sp,
                                 const std::vector<BoxMap>& family,
                                 const FalsifyConfig& cfg);

}  // namespace onx
