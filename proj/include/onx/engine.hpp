#pragma once

#include <string>
#include <vector>

#include "onx/certificate.hpp"
#include "onx/expr.hpp"
#include "onx/finite_space.hpp"
#include "onx/maps.hpp"

namespace onx {

// ---- finite model ----

// Downward iteration A <- cov(union of T(A)) to its exact fixpoint; the
// sequence is decreasing, so at most n strict rounds happen. start must be
// admissible with T(start) inside start for every map, else invalid_input.
PointSet invariant_descend(const FiniteSpace& sp,
                           const std::vector<MapTable>& family, PointSet start,
                           int* iterations = nullptr);

// Least admissible superset of E invariant under every map, as the upward
// iteration E <- cov(E union T(E)...); exact.
PointSet cov_family(const FiniteSpace& sp, const std::vector<MapTable>& family,
                    PointSet E);

Certificate solve_fixed_point(const FiniteSpace& sp,
                              const std::vector<MapTable>& family,
                              Method method, const EngineConfig& cfg);

// ---- box model ----

// Interval version of the descent: stops once every endpoint moves less
// than tol in a round, or at the budget. Monotone after the first round,
// and the result always satisfies image(result) inside result.
Box box_invariant_descend(const BoxSpace& sp, const std::vector<BoxMap>& family,
                          Box start, const Rat& tol, int iter_budget,
                          int* iterations = nullptr);

struct BoxCovResult {
  Box box;
  bool widened = false;  // thresholds or the ambient were substituted
  int iterations = 0;
};

// Upward invariant cover of E: grows by bounding boxes until the interval
// images sit inside, widening (toward 0 / the ambient bounds, then the
// ambient itself) past half budget so the loop always closes. The result is
// invariant-enclosing but only minimal when no widening happened.
BoxCovResult box_cov_family(const BoxSpace& sp, const std::vector<BoxMap>& family,
                            const Box& E, int iter_budget);

Certificate solve_fixed_point(const BoxSpace& sp,
                              const std::vector<BoxMap>& family, Method method,
                              const EngineConfig& cfg);

// ---- certificate verification ----

struct VerifyResult {
  bool ok = false;
  std::string message;  // first failing item when not ok
};

// Re-derives every claim in the certificate from the instance and the maps:
// trace chaining, per-step set recomputation, diameter bounds, the pq
// conditions, and the outcome's exact fixed-point / residual equalities.
VerifyResult verify_certificate(const FiniteSpace& sp,
                                const std::vector<MapTable>& family,
                                const Certificate& cert);
VerifyResult verify_certificate(const BoxSpace& sp,
                                const std::vector<BoxMap>& family,
                                const Certificate& cert);

}  // namespace onx
