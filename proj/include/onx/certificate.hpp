#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "onx/box.hpp"
#include "onx/maps.hpp"
#include "onx/point_set.hpp"
#include "onx/structures.hpp"

namespace onx {

enum class Method { Ns, Pq };

inline const char* to_string(Method m) {
  return m == Method::Ns ? "ns" : "pq";
}

inline std::optional<Method> method_from(const std::string& s) {
  if (s == "ns") return Method::Ns;
  if (s == "pq") return Method::Pq;
  return std::nullopt;
}

// Everything the solve loop depends on, echoed into the certificate so a
// verifier can replay the deterministic parts bit for bit.
struct EngineConfig {
  Rat eps = Rat(1, 1000);         // box model: stop once delta(A) <= eps
  long step_budget = 10000;       // recorded trace steps before giving up
  int descend_iter_budget = 256;  // box: inner rounds per descent
  int covf_iter_budget = 64;      // box: upward cover rounds (widens halfway)
  int orbit_budget = 64;          // box: falsifier orbit iterations
  unsigned max_den = 64;          // box: falsifier sample denominator bound
  long presamples = 32;           // box: falsification pairs before solving
  std::uint64_t seed = 0;
  std::optional<Rat> descend_tol;  // box descent stop threshold; eps/16 if unset
  std::optional<Rat> pq_p, pq_q;   // required for Method::Pq

  Rat effective_descend_tol() const {
    return descend_tol ? *descend_tol : eps / 16;
  }
};

enum class StepKind { Descend, NsShrink, PqShrink };

// How a step's inclusions are justified. Exact steps are replayed verbatim
// by the verifier; enclosure-certified steps carry a machine-checkable
// interval inclusion; contract-dependent steps lean on the declared
// orbit-nonexpansiveness and are re-monitored at the next descent round.
enum class StepCert { Exact, EnclosureCertified, ContractDependent };

inline const char* to_string(StepKind k) {
  switch (k) {
    case StepKind::Descend: return "descend";
    case StepKind::NsShrink: return "ns-shrink";
    default: return "pq-shrink";
  }
}

inline std::optional<StepKind> step_kind_from(const std::string& s) {
  if (s == "descend") return StepKind::Descend;
  if (s == "ns-shrink") return StepKind::NsShrink;
  if (s == "pq-shrink") return StepKind::PqShrink;
  return std::nullopt;
}

inline const char* to_string(StepCert c) {
  switch (c) {
    case StepCert::Exact: return "exact";
    case StepCert::EnclosureCertified: return "enclosure-certified";
    default: return "contract-dependent";
  }
}

inline std::optional<StepCert> step_cert_from(const std::string& s) {
  if (s == "exact") return StepCert::Exact;
  if (s == "enclosure-certified") return StepCert::EnclosureCertified;
  if (s == "contract-dependent") return StepCert::ContractDependent;
  return std::nullopt;
}

using SetRepr = std::variant<PointSet, Box>;
using PointRepr = std::variant<int, std::vector<Rat>>;

struct TraceStep {
  StepKind kind;
  StepCert cert;
  SetRepr before, after;
  Rat delta_before, delta_after;
  std::optional<PointRepr> center;  // ns: the chosen center
  std::optional<Rat> radius;        // ns: D(center, before)
  std::optional<Rat> p, q;          // pq: coefficients used
  int iterations = 0;               // inner fixpoint rounds
  bool widened = false;             // box cover gave up minimality
};

// Stall reasons:
//   ns-no-strict-center   every point of the set sits at full diameter
//   pq-hull-empty         B[A, p delta] = empty
//   pq-second-empty       B[B[A, p delta], q delta] = empty
//   pq-meet-empty         the two hulls miss each other
//   pq-condition-1        shrink target escapes B[A, p delta]
//   pq-condition-2        shrink target keeps diameter above q delta
//   hypothesis-orbit      a family member fails the exact orbit check
//   hypothesis-interlaced the family fails the exact interlacing check
//   hypothesis-falsified  box sampling found an enclosure-backed violation
//   contract-broken       an interval image escaped a shrunken set
//   budget-exceeded       step budget ran out
//   residual-exceeds-eps  final exact residual above eps (defensive)
struct StallInfo {
  std::string reason;
  std::optional<NsCounterexample> ns_witness;
  // stage may also read condition-1 / condition-2, with `second` holding the
  // rejected shrink target instead of the second hull
  std::optional<PqCounterexample> pq_witness;
  std::optional<BoxPqWitness> box_pq_witness;
  std::optional<int> witness_member;  // map index, where one is involved
  std::optional<PairCex> orbit_witness;
  std::optional<QuadCex> interlace_witness;
  std::optional<BoxPairCex> box_witness;
  std::optional<SetRepr> contract_set;    // set that was assumed invariant
  std::optional<SetRepr> contract_image;  // its escaping enclosure
  std::string note;
};

enum class Outcome { CommonFixedPoint, EpsilonFixedPoint, Stall };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::CommonFixedPoint: return "common-fixed-point";
    case Outcome::EpsilonFixedPoint: return "epsilon-fixed-point";
    default: return "stall";
  }
}

inline std::optional<Outcome> outcome_from(const std::string& s) {
  if (s == "common-fixed-point") return Outcome::CommonFixedPoint;
  if (s == "epsilon-fixed-point") return Outcome::EpsilonFixedPoint;
  if (s == "stall") return Outcome::Stall;
  return std::nullopt;
}

// Exhaustive common-fixed-point scan (finite model), with the retract
// verdict for the fixed-point set attached whenever it is nonempty.
struct FixInfo {
  PointSet fix_set;
  std::optional<OlrReport> olr;
};

struct Certificate {
  std::string model;  // finite | box
  Method method = Method::Ns;
  EngineConfig config;
  Outcome outcome = Outcome::Stall;
  std::optional<PointRepr> point;
  std::optional<Rat> radius;    // half the final diameter
  std::optional<Rat> residual;  // exact max over maps of d(point, T point)
  std::optional<StallInfo> stall;
  std::vector<TraceStep> trace;
  std::optional<FixInfo> fix;  // finite model
  long steps_used = 0;
};

}  // namespace onx
