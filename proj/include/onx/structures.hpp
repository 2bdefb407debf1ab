#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "onx/box.hpp"
#include "onx/finite_space.hpp"

namespace onx {

// A point of the set strictly closer to everything than the diameter.
struct CenterWitness {
  PointSet set;
  Rat diameter;
  int center;
  Rat radius;  // D(center, set)
};

// Set where every member point sits at full diameter from the set.
struct NsCounterexample {
  PointSet set;
  Rat diameter;
  std::vector<Rat> radii;  // D(z, set) for each z, aligned with set.elements()
};

struct NsReport {
  bool holds = false;
  long sets_checked = 0;
  std::vector<CenterWitness> witnesses;  // one per non-singleton member
  std::optional<NsCounterexample> cex;   // first failure in canonical order
};

// Every non-singleton admissible set admits an internal center with
// D(z, A) < delta(A).
NsReport check_ns(const FiniteSpace& sp, const AdmissibleLattice& lat);

struct UnsReport {
  Rat c;
  bool holds = false;
  long sets_checked = 0;
  // max over non-singleton members of min_z D(z, A) / delta(A); the space
  // satisfies the uniform property for a coefficient exactly when it exceeds
  // this ratio. Unset when every member is a singleton.
  std::optional<Rat> c_star;
  std::optional<PointSet> c_star_argmax;
  std::vector<CenterWitness> witnesses;
  std::optional<PointSet> cex;  // first member violating the queried c
};

// Internal centers at coefficient c: D(z, A) < c delta(A), strict. Requires
// c in (0,1).
UnsReport check_uns(const FiniteSpace& sp, const AdmissibleLattice& lat,
                    const Rat& c);

struct PqCounterexample {
  PointSet set;
  Rat diameter;
  std::optional<PointSet> hull;    // B[A, p delta]; empty stage when nullopt
  std::optional<PointSet> second;  // B[hull, q delta]
  std::string stage;               // hull-empty | second-empty | meet-empty
};

struct PqReport {
  Rat p, q;
  bool holds = false;
  long sets_checked = 0;
  // per non-singleton member: the set and a point of the nonempty meet
  std::vector<std::pair<PointSet, int>> witnesses;
  std::optional<PqCounterexample> cex;
};

// B[A, p delta] meets B[B[A, p delta], q delta] for every non-singleton
// member. Requires p > 0 and q in (0,1). The relative-center property at
// coefficient c is the p = q = c case.
PqReport check_pq_urns(const FiniteSpace& sp, const AdmissibleLattice& lat,
                       const Rat& p, const Rat& q);

struct OlrReport {
  bool holds = false;
  long points_checked = 0;
  std::optional<int> cex_point;        // y whose canonical family misses D
  std::optional<PointSet> cex_meet;    // the intersection that avoids D
};

// D is a one-local retract: any family of balls centered in D with a common
// point also meets D. Equivalent to checking, for every y, the tightest
// family (radii d(x, y)); any other nonempty family contains that one.
OlrReport check_one_local_retract(const FiniteSpace& sp, const PointSet& D);

// ---- box model: closed-form structure verdicts ----

enum class BoxVerdict { Holds, Fails, Vacuous };

struct BoxNsReport {
  BoxVerdict verdict = BoxVerdict::Vacuous;
  // midpoint of any box realizes D = delta/2 < delta
  std::string reason;
};

BoxNsReport box_check_ns(const BoxSpace& sp);

struct BoxUnsReport {
  Rat c;
  BoxVerdict verdict = BoxVerdict::Vacuous;
  Rat threshold;  // 1/2: the exact best ratio of every nondegenerate box
  std::string reason;
};

BoxUnsReport box_check_uns(const BoxSpace& sp, const Rat& c);

struct BoxPqWitness {
  Box set;
  Rat diameter;
  std::optional<Box> hull;
  std::optional<Box> second;
  std::string stage;  // hull-empty | second-empty | meet-empty
};

struct BoxPqReport {
  Rat p, q;
  BoxVerdict verdict = BoxVerdict::Vacuous;
  int effective_dim = 0;  // coordinates where the ambient box has width
  std::string reason;
  std::optional<BoxPqWitness> cex;  // constructed witness when Fails
};

// Exact universal verdict over every subbox with positive diameter:
//   no effective coordinate: vacuous;
//   one effective coordinate: holds iff p >= 1/2 and q >= p - 1/2;
//   two or more: holds iff p >= 1/2 and q >= p.
// Failing verdicts come with a concrete witness box, re-checkable by the
// hull formulas.
BoxPqReport box_check_pq_urns(const BoxSpace& sp, const Rat& p, const Rat& q);

BoxPqReport box_check_urns(const BoxSpace& sp, const Rat& c);

}  // namespace onx
