#include <string>
#include <vector>

#include "onx/engine.hpp"
#include "onx/error.hpp"

namespace onx {

namespace {

VerifyResult fail(std::string m) { return {false, std::move(m)}; }
VerifyResult pass() { return {true, {}}; }

std::string at_step(std::size_t i) {
  return "step " + std::to_string(i) + ": ";
}

PointSet finite_image(const MapTable& t, const PointSet& A) {
  PointSet out(A.universe());
  for (int x : A.elements()) out.add(t.apply(x));
  return out;
}

bool same_olr(const OlrReport& a, const OlrReport& b) {
  return a.holds == b.holds && a.points_checked == b.points_checked &&
         a.cex_point == b.cex_point && a.cex_meet == b.cex_meet;
}

// ---- finite model ----

VerifyResult verify_finite(const FiniteSpace& sp,
                           const std::vector<MapTable>& family,
                           const Certificate& cert) {
  if (cert.model != "finite") return fail("model tag is not finite");
  if (family.empty()) return fail("empty family");
  for (const auto& t : family) validate_map(t, sp.n());
  if (cert.steps_used != static_cast<long>(cert.trace.size()))
    return fail("steps_used disagrees with the trace length");

  Rat p, q;
  if (cert.method == Method::Pq) {
    if (!cert.config.pq_p || !cert.config.pq_q)
      return fail("pq certificate lacks coefficients");
    p = *cert.config.pq_p;
    q = *cert.config.pq_q;
    if (p <= 0 || q <= 0 || q >= 1) return fail("pq coefficients out of range");
  }

  // Hypothesis gate re-derivation: the exact checks the engine ran.
  bool orbit_ok = true;
  std::optional<int> orbit_bad;
  std::optional<PairCex> orbit_cex;
  for (std::size_t i = 0; i < family.size() && orbit_ok; ++i) {
    MapVerdict v = check_orbit_nonexpansive(sp, family[i]);
    if (!v.holds) {
      orbit_ok = false;
      orbit_bad = static_cast<int>(i);
      orbit_cex = v.cex;
    }
  }
  std::optional<InterlacedVerdict> interlaced;
  if (orbit_ok) interlaced = check_interlaced(sp, family);
  bool hypotheses_ok = orbit_ok && interlaced->holds;

  const bool stalled_on_hypothesis =
      cert.outcome == Outcome::Stall && cert.stall &&
      (cert.stall->reason == "hypothesis-orbit" ||
       cert.stall->reason == "hypothesis-interlaced");
  if (hypotheses_ok && stalled_on_hypothesis)
    return fail("certificate claims a hypothesis failure the exact checks do not find");
  if (!hypotheses_ok && !stalled_on_hypothesis)
    return fail("family fails its exact hypothesis checks, certificate ignores it");

  // Trace replay.
  const PointSet* prev_after = nullptr;
  for (std::size_t i = 0; i < cert.trace.size(); ++i) {
    const TraceStep& st = cert.trace[i];
    const auto* before = std::get_if<PointSet>(&st.before);
    const auto* after = std::get_if<PointSet>(&st.after);
    if (!before || !after) return fail(at_step(i) + "set representation is not finite");
    if (before->universe() != sp.n() || after->universe() != sp.n())
      return fail(at_step(i) + "set universe mismatch");
    if (i == 0) {
      if (*before != PointSet::full(sp.n()))
        return fail(at_step(i) + "trace does not start at the whole space");
    } else if (*before != *prev_after) {
      return fail(at_step(i) + "before-set does not chain from the previous step");
    }
    if (after->empty()) return fail(at_step(i) + "empty after-set");
    if (!after->subset_of(*before)) return fail(at_step(i) + "after-set escapes before-set");
    if (st.delta_before != delta(sp, *before))
      return fail(at_step(i) + "recorded delta_before is wrong");
    if (st.delta_after != delta(sp, *after))
      return fail(at_step(i) + "recorded delta_after is wrong");
    if (st.cert != StepCert::Exact)
      return fail(at_step(i) + "finite steps must be exact");
    if (st.widened) return fail(at_step(i) + "finite steps never widen");

    switch (st.kind) {
      case StepKind::Descend: {
        if (st.center || st.radius || st.p || st.q)
          return fail(at_step(i) + "descend step carries shrink fields");
        int iters = 0;
        PointSet replay = invariant_descend(sp, family, *before, &iters);
        if (replay != *after) return fail(at_step(i) + "descend replay disagrees");
        if (iters != st.iterations)
          return fail(at_step(i) + "descend iteration count disagrees");
        break;
      }
      case StepKind::NsShrink: {
        if (cert.method != Method::Ns)
          return fail(at_step(i) + "ns shrink under pq method");
        if (!st.center || !st.radius || st.p || st.q)
          return fail(at_step(i) + "ns shrink fields malformed");
        const int* z = std::get_if<int>(&*st.center);
        if (!z) return fail(at_step(i) + "center representation is not finite");
        int best = -1;
        Rat best_r;
        for (int y : before->elements()) {
          Rat r = radius_from(sp, y, *before);
          if (best < 0 || r < best_r) {
            best = y;
            best_r = r;
          }
        }
        if (*z != best || *st.radius != best_r)
          return fail(at_step(i) + "center is not the canonical minimizer");
        if (!(best_r < st.delta_before))
          return fail(at_step(i) + "shrink radius does not beat the diameter");
        PointSet expect = *before & ball_hull(sp, *before, best_r);
        if (expect != *after) return fail(at_step(i) + "ns shrink set disagrees");
        if (!(st.delta_after <= best_r))
          return fail(at_step(i) + "shrunken diameter exceeds the radius");
        for (const auto& t : family)
          if (!finite_image(t, *after).subset_of(*after))
            return fail(at_step(i) + "ns shrink set is not invariant");
        break;
      }
      case StepKind::PqShrink: {
        if (cert.method != Method::Pq)
          return fail(at_step(i) + "pq shrink under ns method");
        if (!st.p || !st.q || st.center || st.radius)
          return fail(at_step(i) + "pq shrink fields malformed");
        if (*st.p != p || *st.q != q)
          return fail(at_step(i) + "pq coefficients differ from the configuration");
        PointSet H = ball_hull(sp, *before, p * st.delta_before);
        if (H.empty()) return fail(at_step(i) + "first hull is empty");
        PointSet K = ball_hull(sp, H, q * st.delta_before);
        PointSet meet = H & K;
        if (meet.empty()) return fail(at_step(i) + "hull meet is empty");
        PointSet replay = cov_family(sp, family, meet);
        if (replay != *after) return fail(at_step(i) + "invariant cover replay disagrees");
        if (!after->subset_of(H))
          return fail(at_step(i) + "condition (1) fails: cover escapes the first hull");
        if (!(st.delta_after <= q * st.delta_before))
          return fail(at_step(i) + "condition (2) fails: diameter above q delta");
        break;
      }
    }
    prev_after = after;
  }

  // Fixed-point scan and the retract verdict attached to it.
  if (!cert.fix) return fail("finite certificate lacks the fixed-point scan");
  PointSet fix(sp.n());
  for (int x = 0; x < sp.n(); ++x) {
    bool fixed = true;
    for (const auto& t : family)
      if (t.apply(x) != x) {
        fixed = false;
        break;
      }
    if (fixed) fix.add(x);
  }
  if (cert.fix->fix_set != fix) return fail("fixed-point scan disagrees");
  if (fix.empty()) {
    if (cert.fix->olr) return fail("retract verdict attached to an empty fixed-point set");
  } else {
    if (!cert.fix->olr) return fail("missing retract verdict for the fixed-point set");
    if (!same_olr(*cert.fix->olr, check_one_local_retract(sp, fix)))
      return fail("retract verdict disagrees");
  }

  // Outcome.
  switch (cert.outcome) {
    case Outcome::CommonFixedPoint: {
      if (cert.stall) return fail("fixed-point outcome carries stall info");
      if (!cert.point || !cert.radius || !cert.residual)
        return fail("fixed-point outcome lacks point data");
      const int* x = std::get_if<int>(&*cert.point);
      if (!x) return fail("point representation is not finite");
      if (cert.trace.empty()) return fail("fixed-point outcome with empty trace");
      const auto& last = std::get<PointSet>(cert.trace.back().after);
      if (last != PointSet::single(sp.n(), *x))
        return fail("final set is not the claimed fixed point");
      for (const auto& t : family)
        if (t.apply(*x) != *x) return fail("claimed point is not fixed");
      if (*cert.radius != 0 || *cert.residual != 0)
        return fail("fixed-point outcome must have zero radius and residual");
      return pass();
    }
    case Outcome::EpsilonFixedPoint:
      return fail("finite model cannot epsilon-converge");
    case Outcome::Stall:
      break;
  }

  if (!cert.stall) return fail("stall outcome lacks stall info");
  if (cert.point || cert.radius || cert.residual)
    return fail("stall outcome carries point data");
  const StallInfo& si = *cert.stall;
  auto last_after = [&]() -> const PointSet& {
    return std::get<PointSet>(cert.trace.back().after);
  };

  if (si.reason == "hypothesis-orbit") {
    if (!cert.trace.empty()) return fail("hypothesis stall must precede the trace");
    if (orbit_ok) return fail("orbit hypothesis actually holds");
    if (!si.witness_member || !si.orbit_witness) return fail("missing orbit witness");
    if (*si.witness_member != *orbit_bad)
      return fail("orbit witness member disagrees");
    const PairCex& w = *si.orbit_witness;
    const MapTable& t = family[static_cast<std::size_t>(*si.witness_member)];
    if (w.x < 0 || w.x >= sp.n() || w.y < 0 || w.y >= sp.n())
      return fail("orbit witness points out of range");
    if (w.lhs != sp.d(t.apply(w.x), t.apply(w.y)))
      return fail("orbit witness lhs is wrong");
    if (w.rhs != radius_from(sp, w.x, orbit(t, w.y)))
      return fail("orbit witness rhs is wrong");
    if (!(w.lhs > w.rhs)) return fail("orbit witness violates nothing");
    return pass();
  }
  if (si.reason == "hypothesis-interlaced") {
    if (!cert.trace.empty()) return fail("hypothesis stall must precede the trace");
    if (!orbit_ok || interlaced->holds)
      return fail("interlacing hypothesis check disagrees");
    if (!si.interlace_witness) return fail("missing interlacing witness");
    const QuadCex& w = *si.interlace_witness;
    auto nmaps = static_cast<int>(family.size());
    if (w.t < 0 || w.t >= nmaps || w.s < 0 || w.s >= nmaps ||
        w.x < 0 || w.x >= sp.n() || w.y < 0 || w.y >= sp.n())
      return fail("interlacing witness out of range");
    if (w.lhs != sp.d(family[static_cast<std::size_t>(w.t)].apply(w.x),
                      family[static_cast<std::size_t>(w.s)].apply(w.y)))
      return fail("interlacing witness lhs is wrong");
    Rat rhs(0);
    for (const auto& r : family)
      rhs = rat_max(rhs, radius_from(sp, w.x, orbit(r, w.y)));
    if (w.rhs != rhs) return fail("interlacing witness rhs is wrong");
    if (!(w.lhs > w.rhs)) return fail("interlacing witness violates nothing");
    return pass();
  }
  if (cert.trace.empty()) return fail("stall reason requires a trace");
  if (si.reason == "ns-no-strict-center") {
    if (cert.method != Method::Ns) return fail("ns stall under pq method");
    if (cert.trace.back().kind != StepKind::Descend)
      return fail("ns stall must follow a descend step");
    if (!si.ns_witness) return fail("missing stall witness");
    const NsCounterexample& w = *si.ns_witness;
    if (w.set != last_after()) return fail("stall witness is not the final set");
    if (w.diameter != delta(sp, w.set)) return fail("stall witness diameter is wrong");
    auto elems = w.set.elements();
    if (w.radii.size() != elems.size()) return fail("stall witness radii malformed");
    for (std::size_t k = 0; k < elems.size(); ++k) {
      if (w.radii[k] != radius_from(sp, elems[k], w.set))
        return fail("stall witness radius is wrong");
      if (w.radii[k] != w.diameter)
        return fail("stall witness has a strict center after all");
    }
    return pass();
  }
  if (si.reason.rfind("pq-", 0) == 0) {
    if (cert.method != Method::Pq) return fail("pq stall under ns method");
    if (cert.trace.back().kind != StepKind::Descend)
      return fail("pq stall must follow a descend step");
    if (!si.pq_witness) return fail("missing stall witness");
    const PqCounterexample& w = *si.pq_witness;
    if (w.set != last_after()) return fail("stall witness is not the final set");
    Rat dia = delta(sp, w.set);
    if (w.diameter != dia) return fail("stall witness diameter is wrong");
    PointSet H = ball_hull(sp, w.set, p * dia);
    if (si.reason == "pq-hull-empty") {
      if (w.stage != "hull-empty" || w.hull || w.second)
        return fail("stall witness stage malformed");
      if (!H.empty()) return fail("first hull is nonempty after all");
      return pass();
    }
    if (H.empty()) return fail("first hull is empty, wrong stage");
    if (!w.hull || *w.hull != H) return fail("stall witness hull is wrong");
    PointSet K = ball_hull(sp, H, q * dia);
    if (si.reason == "pq-second-empty") {
      if (w.stage != "second-empty" || w.second)
        return fail("stall witness stage malformed");
      if (!K.empty()) return fail("second hull is nonempty after all");
      return pass();
    }
    if (K.empty()) return fail("second hull is empty, wrong stage");
    if (si.reason == "pq-meet-empty") {
      if (w.stage != "meet-empty" || !w.second || *w.second != K)
        return fail("stall witness stage malformed");
      if (!(H & K).empty()) return fail("hull meet is nonempty after all");
      return pass();
    }
    PointSet meet = H & K;
    if (meet.empty()) return fail("hull meet is empty, wrong stage");
    PointSet cover = cov_family(sp, family, meet);
    if (!w.second || *w.second != cover)
      return fail("stall witness cover is wrong");
    if (si.reason == "pq-condition-1") {
      if (w.stage != "condition-1") return fail("stall witness stage malformed");
      if (cover.subset_of(H)) return fail("condition (1) holds after all");
      return pass();
    }
    if (si.reason == "pq-condition-2") {
      if (w.stage != "condition-2") return fail("stall witness stage malformed");
      if (!cover.subset_of(H)) return fail("wrong stage: condition (1) fails first");
      if (delta(sp, cover) <= q * dia) return fail("condition (2) holds after all");
      return pass();
    }
    return fail("unknown pq stall stage");
  }
  if (si.reason == "budget-exceeded") {
    if (static_cast<long>(cert.trace.size()) != cert.config.step_budget)
      return fail("budget stall below the budget");
    return pass();
  }
  return fail("unknown stall reason for the finite model");
}

// ---- box model ----

VerifyResult verify_box(const BoxSpace& sp, const std::vector<BoxMap>& family,
                        const Certificate& cert) {
  if (cert.model != "box") return fail("model tag is not box");
  if (family.empty()) return fail("empty family");
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (family[i].out_dim() != sp.ambient.dim())
      return fail("map arity mismatch");
    if (!enclosure_self_map(family[i], sp.ambient))
      return fail("family member is not a certified self-map");
  }
  if (cert.steps_used != static_cast<long>(cert.trace.size()))
    return fail("steps_used disagrees with the trace length");
  if (cert.fix) return fail("box certificate carries a finite fixed-point scan");
  if (cert.config.eps <= 0) return fail("eps out of range");

  Rat p, q;
  if (cert.method == Method::Pq) {
    if (!cert.config.pq_p || !cert.config.pq_q)
      return fail("pq certificate lacks coefficients");
    p = *cert.config.pq_p;
    q = *cert.config.pq_q;
    if (p <= 0 || q <= 0 || q >= 1) return fail("pq coefficients out of range");
  }

  // Replay the falsification gate the engine ran.
  std::optional<StallInfo> expected_falsified;
  if (cert.config.presamples > 0) {
    FalsifyConfig fcfg{cert.config.presamples, cert.config.seed,
                       cert.config.orbit_budget, cert.config.max_den};
    FalsifyReport orb = falsify_orbit_nonexpansive(sp, family, fcfg);
    if (orb.violation_found) {
      expected_falsified.emplace();
      expected_falsified->box_witness = orb.violation;
      expected_falsified->witness_member = orb.violating_map;
      expected_falsified->note = "orbit check";
    } else {
      FalsifyReport itl = falsify_interlaced(sp, family, fcfg);
      if (itl.violation_found) {
        expected_falsified.emplace();
        expected_falsified->box_witness = itl.violation;
        expected_falsified->witness_member = itl.violating_map;
        expected_falsified->note = "interlacing check";
      }
    }
  }
  const bool claims_falsified = cert.outcome == Outcome::Stall && cert.stall &&
                                cert.stall->reason == "hypothesis-falsified";
  if (expected_falsified.has_value() != claims_falsified)
    return fail("falsification replay disagrees with the certificate");
  if (claims_falsified) {
    if (!cert.trace.empty()) return fail("falsification stall must precede the trace");
    const StallInfo& si = *cert.stall;
    const BoxPairCex* got = si.box_witness ? &*si.box_witness : nullptr;
    const BoxPairCex* want = expected_falsified->box_witness
                                 ? &*expected_falsified->box_witness
                                 : nullptr;
    if (!got || !want) return fail("missing falsification witness");
    if (got->x != want->x || got->y != want->y || got->lhs != want->lhs ||
        got->rhs_upper != want->rhs_upper)
      return fail("falsification witness disagrees with replay");
    if (si.witness_member != expected_falsified->witness_member)
      return fail("falsification witness member disagrees");
    if (si.note != expected_falsified->note)
      return fail("falsification witness note disagrees");
    return pass();
  }

  const Rat tol = cert.config.effective_descend_tol();
  const Box* prev_after = nullptr;
  for (std::size_t i = 0; i < cert.trace.size(); ++i) {
    const TraceStep& st = cert.trace[i];
    const auto* before = std::get_if<Box>(&st.before);
    const auto* after = std::get_if<Box>(&st.after);
    if (!before || !after) return fail(at_step(i) + "set representation is not a box");
    if (before->dim() != sp.ambient.dim() || after->dim() != sp.ambient.dim())
      return fail(at_step(i) + "box dimension mismatch");
    if (i == 0) {
      if (!(*before == sp.ambient))
        return fail(at_step(i) + "trace does not start at the ambient box");
    } else if (!(*before == *prev_after)) {
      return fail(at_step(i) + "before-box does not chain from the previous step");
    }
    if (!box_subset(*after, *before))
      return fail(at_step(i) + "after-box escapes before-box");
    if (st.delta_before != box_delta(*before))
      return fail(at_step(i) + "recorded delta_before is wrong");
    if (st.delta_after != box_delta(*after))
      return fail(at_step(i) + "recorded delta_after is wrong");

    switch (st.kind) {
      case StepKind::Descend: {
        if (st.cert != StepCert::EnclosureCertified)
          return fail(at_step(i) + "descend must be enclosure-certified");
        if (st.center || st.radius || st.p || st.q || st.widened)
          return fail(at_step(i) + "descend step carries shrink fields");
        int iters = 0;
        Box replay = box_invariant_descend(sp, family, *before, tol,
                                           cert.config.descend_iter_budget,
                                           &iters);
        if (!(replay == *after)) return fail(at_step(i) + "descend replay disagrees");
        if (iters != st.iterations)
          return fail(at_step(i) + "descend iteration count disagrees");
        break;
      }
      case StepKind::NsShrink: {
        if (cert.method != Method::Ns)
          return fail(at_step(i) + "ns shrink under pq method");
        if (st.cert != StepCert::ContractDependent)
          return fail(at_step(i) + "box ns shrink must be contract-dependent");
        if (!st.center || !st.radius || st.p || st.q || st.widened)
          return fail(at_step(i) + "ns shrink fields malformed");
        const auto* c = std::get_if<std::vector<Rat>>(&*st.center);
        if (!c) return fail(at_step(i) + "center representation is not a box point");
        if (*c != box_chebyshev_center(*before))
          return fail(at_step(i) + "center is not the box midpoint");
        if (*st.radius != st.delta_before / 2)
          return fail(at_step(i) + "radius is not half the diameter");
        auto hull = box_ball_hull(sp, *before, *st.radius);
        if (!hull) return fail(at_step(i) + "center hull is empty");
        auto expect = box_intersect(*before, *hull);
        if (!expect) return fail(at_step(i) + "center hull misses the set");
        if (!(*expect == *after)) return fail(at_step(i) + "ns shrink box disagrees");
        if (!(st.delta_after <= *st.radius))
          return fail(at_step(i) + "shrunken diameter exceeds the radius");
        break;
      }
      case StepKind::PqShrink: {
        if (cert.method != Method::Pq)
          return fail(at_step(i) + "pq shrink under ns method");
        if (st.cert != StepCert::EnclosureCertified)
          return fail(at_step(i) + "box pq shrink must be enclosure-certified");
        if (!st.p || !st.q || st.center || st.radius)
          return fail(at_step(i) + "pq shrink fields malformed");
        if (*st.p != p || *st.q != q)
          return fail(at_step(i) + "pq coefficients differ from the configuration");
        auto H = box_ball_hull(sp, *before, p * st.delta_before);
        if (!H) return fail(at_step(i) + "first hull is empty");
        auto K = box_ball_hull(sp, *H, q * st.delta_before);
        if (!K) return fail(at_step(i) + "second hull is empty");
        auto meet = box_intersect(*H, *K);
        if (!meet) return fail(at_step(i) + "hull meet is empty");
        BoxCovResult cf =
            box_cov_family(sp, family, *meet, cert.config.covf_iter_budget);
        if (!(cf.box == *after))
          return fail(at_step(i) + "invariant cover replay disagrees");
        if (cf.widened != st.widened || cf.iterations != st.iterations)
          return fail(at_step(i) + "cover bookkeeping disagrees");
        if (!box_subset(*after, *H))
          return fail(at_step(i) + "condition (1) fails: cover escapes the first hull");
        if (!(st.delta_after <= q * st.delta_before))
          return fail(at_step(i) + "condition (2) fails: diameter above q delta");
        break;
      }
    }
    prev_after = after;
  }

  auto final_box = [&]() -> const Box& {
    return std::get<Box>(cert.trace.back().after);
  };

  switch (cert.outcome) {
    case Outcome::CommonFixedPoint:
    case Outcome::EpsilonFixedPoint: {
      if (cert.stall) return fail("converged outcome carries stall info");
      if (cert.trace.empty()) return fail("converged outcome with empty trace");
      if (cert.trace.back().kind != StepKind::Descend)
        return fail("convergence must be checked after a descend step");
      if (!cert.point || !cert.radius || !cert.residual)
        return fail("converged outcome lacks point data");
      const Box& fin = final_box();
      if (!(box_delta(fin) <= cert.config.eps))
        return fail("final box diameter exceeds eps");
      const auto* x = std::get_if<std::vector<Rat>>(&*cert.point);
      if (!x) return fail("point representation is not a box point");
      if (*x != box_chebyshev_center(fin))
        return fail("point is not the final box midpoint");
      if (*cert.radius != box_delta(fin) / 2)
        return fail("radius is not half the final diameter");
      Rat residual(0);
      for (const auto& m : family)
        residual = rat_max(residual, linf_dist(*x, map_point(m, *x)));
      if (residual != *cert.residual) return fail("stored residual is wrong");
      if (cert.outcome == Outcome::CommonFixedPoint) {
        if (residual != 0) return fail("claimed exact fixed point has residual");
      } else {
        if (!(residual > 0)) return fail("epsilon outcome with zero residual");
        if (!(residual <= cert.config.eps)) return fail("residual exceeds eps");
      }
      return pass();
    }
    case Outcome::Stall:
      break;
  }

  if (!cert.stall) return fail("stall outcome lacks stall info");
  if (cert.point || cert.radius || cert.residual)
    return fail("stall outcome carries point data");
  const StallInfo& si = *cert.stall;

  if (si.reason == "contract-broken") {
    if (cert.trace.empty() || cert.trace.back().kind != StepKind::NsShrink)
      return fail("contract break must follow a contract-dependent shrink");
    if (!si.witness_member || !si.contract_set || !si.contract_image)
      return fail("missing contract witness");
    auto m = static_cast<std::size_t>(*si.witness_member);
    if (m >= family.size()) return fail("contract witness member out of range");
    const auto* set = std::get_if<Box>(&*si.contract_set);
    const auto* img = std::get_if<Box>(&*si.contract_image);
    if (!set || !img) return fail("contract witness is not a box");
    if (!(*set == final_box()))
      return fail("contract witness is not the final set");
    if (!(map_box_enclosure(family[m], *set) == *img))
      return fail("contract witness image is wrong");
    if (box_subset(*img, *set)) return fail("contract holds after all");
    return pass();
  }
  if (si.reason.rfind("pq-", 0) == 0) {
    if (cert.method != Method::Pq) return fail("pq stall under ns method");
    if (cert.trace.empty() || cert.trace.back().kind != StepKind::Descend)
      return fail("pq stall must follow a descend step");
    if (!si.box_pq_witness) return fail("missing stall witness");
    const BoxPqWitness& w = *si.box_pq_witness;
    if (!(w.set == final_box())) return fail("stall witness is not the final set");
    Rat dia = box_delta(w.set);
    if (w.diameter != dia) return fail("stall witness diameter is wrong");
    auto H = box_ball_hull(sp, w.set, p * dia);
    if (si.reason == "pq-hull-empty") {
      if (w.stage != "hull-empty" || w.hull || w.second)
        return fail("stall witness stage malformed");
      if (H) return fail("first hull is nonempty after all");
      return pass();
    }
    if (!H) return fail("first hull is empty, wrong stage");
    if (!w.hull || !(*w.hull == *H)) return fail("stall witness hull is wrong");
    auto K = box_ball_hull(sp, *H, q * dia);
    if (si.reason == "pq-second-empty") {
      if (w.stage != "second-empty" || w.second)
        return fail("stall witness stage malformed");
      if (K) return fail("second hull is nonempty after all");
      return pass();
    }
    if (!K) return fail("second hull is empty, wrong stage");
    if (si.reason == "pq-meet-empty") {
      if (w.stage != "meet-empty" || !w.second || !(*w.second == *K))
        return fail("stall witness stage malformed");
      if (box_intersect(*H, *K)) return fail("hull meet is nonempty after all");
      return pass();
    }
    auto meet = box_intersect(*H, *K);
    if (!meet) return fail("hull meet is empty, wrong stage");
    BoxCovResult cf =
        box_cov_family(sp, family, *meet, cert.config.covf_iter_budget);
    if (!w.second || !(*w.second == cf.box))
      return fail("stall witness cover is wrong");
    if (si.reason == "pq-condition-1") {
      if (w.stage != "condition-1") return fail("stall witness stage malformed");
      if (box_subset(cf.box, *H)) return fail("condition (1) holds after all");
      return pass();
    }
    if (si.reason == "pq-condition-2") {
      if (w.stage != "condition-2") return fail("stall witness stage malformed");
      if (!box_subset(cf.box, *H)) return fail("wrong stage: condition (1) fails first");
      if (box_delta(cf.box) <= q * dia) return fail("condition (2) holds after all");
      return pass();
    }
    return fail("unknown pq stall stage");
  }
  if (si.reason == "budget-exceeded") {
    if (static_cast<long>(cert.trace.size()) != cert.config.step_budget)
      return fail("budget stall below the budget");
    return pass();
  }
  if (si.reason == "residual-exceeds-eps") {
    if (cert.trace.empty() || cert.trace.back().kind != StepKind::Descend)
      return fail("residual stall must follow a descend step");
    const Box& fin = final_box();
    if (!(box_delta(fin) <= cert.config.eps))
      return fail("residual stall before reaching eps");
    std::vector<Rat> x = box_chebyshev_center(fin);
    Rat residual(0);
    for (const auto& m : family)
      residual = rat_max(residual, linf_dist(x, map_point(m, x)));
    if (residual <= cert.config.eps) return fail("residual is within eps after all");
    return pass();
  }
  return fail("unknown stall reason for the box model");
}

}  // namespace

VerifyResult verify_certificate(const FiniteSpace& sp,
                                const std::vector<MapTable>& family,
                                const Certificate& cert) {
  try {
    return verify_finite(sp, family, cert);
  } catch (const std::exception& e) {
    return fail(std::string("verification raised: ") + e.what());
  }
}

VerifyResult verify_certificate(const BoxSpace& sp,
                                const std::vector<BoxMap>& family,
                                const Certificate& cert) {
  try {
    return verify_box(sp, family, cert);
  } catch (const std::exception& e) {
    return fail(std::string("verification raised: ") + e.what());
  }
}

}  // namespace onx
