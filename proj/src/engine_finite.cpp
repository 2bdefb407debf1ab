#include <utility>

#include "onx/engine.hpp"
#include "onx/error.hpp"

namespace onx {

namespace {

PointSet image_of(const MapTable& t, const PointSet& A) {
  PointSet out(A.universe());
  for (int x : A.elements()) out.add(t.apply(x));
  return out;
}

PointSet family_image(const std::vector<MapTable>& family, const PointSet& A) {
  PointSet out(A.universe());
  for (const auto& t : family) out |= image_of(t, A);
  return out;
}

void require_family(const FiniteSpace& sp, const std::vector<MapTable>& family) {
  if (family.empty()) throw invalid_input("empty family");
  for (const auto& t : family) validate_map(t, sp.n());
}

// Common fixed points by exhaustive scan, plus the retract verdict on them.
FixInfo scan_fix(const FiniteSpace& sp, const std::vector<MapTable>& family) {
  FixInfo info{PointSet(sp.n()), std::nullopt};
  for (int x = 0; x < sp.n(); ++x) {
    bool fixed = true;
    for (const auto& t : family)
      if (t.apply(x) != x) {
        fixed = false;
        break;
      }
    if (fixed) info.fix_set.add(x);
  }
  if (!info.fix_set.empty())
    info.olr = check_one_local_retract(sp, info.fix_set);
  return info;
}

}  // namespace

PointSet invariant_descend(const FiniteSpace& sp,
                           const std::vector<MapTable>& family, PointSet start,
                           int* iterations) {
  require_family(sp, family);
  if (start.empty() || start.universe() != sp.n())
    throw invalid_input("descent start must be a nonempty subset of the space");
  if (cov(sp, start) != start)
    throw invalid_input("descent start is not admissible",
                        json{{"set", start.elements()}});
  for (std::size_t i = 0; i < family.size(); ++i) {
    PointSet img = image_of(family[i], start);
    if (!img.subset_of(start)) {
      std::vector<int> escaped;
      for (int x : img.elements())
        if (!start.contains(x)) escaped.push_back(x);
      throw invalid_input("descent start is not invariant",
                          json{{"map", i}, {"escapes", escaped}});
    }
  }

  int rounds = 0;
  for (;;) {
    PointSet next = cov(sp, family_image(family, start));
    if (next == start) break;
    start = std::move(next);
    ++rounds;
  }
  if (iterations) *iterations = rounds;
  return start;
}

PointSet cov_family(const FiniteSpace& sp, const std::vector<MapTable>& family,
                    PointSet E) {
  require_family(sp, family);
  if (E.empty() || E.universe() != sp.n())
    throw invalid_input("cover of an empty set");
  for (;;) {
    PointSet next = cov(sp, E | family_image(family, E));
    if (next == E) return E;
    E = std::move(next);
  }
}

Certificate solve_fixed_point(const FiniteSpace& sp,
                              const std::vector<MapTable>& family,
                              Method method, const EngineConfig& cfg) {
  require_family(sp, family);
  if (cfg.step_budget <= 0) throw invalid_input("step budget must be positive");
  Rat p, q;
  if (method == Method::Pq) {
    if (!cfg.pq_p || !cfg.pq_q)
      throw invalid_input("pq method needs both coefficients");
    p = *cfg.pq_p;
    q = *cfg.pq_q;
    if (p <= 0 || q <= 0 || q >= 1)
      throw invalid_input("pq coefficients out of range",
                          json{{"p", rat_to_string(p)}, {"q", rat_to_string(q)}});
  }

  Certificate cert;
  cert.model = "finite";
  cert.method = method;
  cert.config = cfg;
  cert.fix = scan_fix(sp, family);

  auto stall = [&](StallInfo info) {
    if (!cert.fix->fix_set.empty()) {
      if (!info.note.empty()) info.note += "; ";
      info.note += "exhaustive scan still finds common fixed points";
    }
    cert.outcome = Outcome::Stall;
    cert.stall = std::move(info);
    cert.steps_used = static_cast<long>(cert.trace.size());
    return cert;
  };

  // Hypothesis gate: exact orbit check per member, then interlacing.
  for (std::size_t i = 0; i < family.size(); ++i) {
    MapVerdict v = check_orbit_nonexpansive(sp, family[i]);
    if (!v.holds) {
      StallInfo info;
      info.reason = "hypothesis-orbit";
      info.witness_member = static_cast<int>(i);
      info.orbit_witness = v.cex;
      return stall(std::move(info));
    }
  }
  {
    InterlacedVerdict v = check_interlaced(sp, family);
    if (!v.holds) {
      StallInfo info;
      info.reason = "hypothesis-interlaced";
      info.interlace_witness = v.cex;
      return stall(std::move(info));
    }
  }

  PointSet A = PointSet::full(sp.n());
  while (static_cast<long>(cert.trace.size()) < cfg.step_budget) {
    // Descend to the least fixpoint of A -> cov(union of images).
    TraceStep step;
    step.kind = StepKind::Descend;
    step.cert = StepCert::Exact;
    step.before = A;
    step.delta_before = delta(sp, A);
    A = invariant_descend(sp, family, A, &step.iterations);
    step.after = A;
    step.delta_after = delta(sp, A);
    cert.trace.push_back(std::move(step));

    if (A.size() == 1) {
      int x = A.first();
      for (const auto& t : family)
        if (t.apply(x) != x) {
          StallInfo info;
          info.reason = "contract-broken";
          info.note = "descent fixpoint singleton is not fixed";
          return stall(std::move(info));
        }
      cert.outcome = Outcome::CommonFixedPoint;
      cert.point = PointRepr{x};
      cert.radius = Rat(0);
      cert.residual = Rat(0);
      cert.steps_used = static_cast<long>(cert.trace.size());
      return cert;
    }

    if (static_cast<long>(cert.trace.size()) >= cfg.step_budget) break;

    Rat dia = delta(sp, A);
    if (method == Method::Ns) {
      // Best internal center; stall when everything sits at full diameter.
      int best = -1;
      Rat best_r;
      for (int z : A.elements()) {
        Rat r = radius_from(sp, z, A);
        if (best < 0 || r < best_r) {
          best = z;
          best_r = r;
        }
      }
      if (best_r == dia) {
        StallInfo info;
        info.reason = "ns-no-strict-center";
        NsCounterexample cex{A, dia, {}};
        for (int z : A.elements()) cex.radii.push_back(radius_from(sp, z, A));
        info.ns_witness = std::move(cex);
        return stall(std::move(info));
      }
      PointSet next = A & ball_hull(sp, A, best_r);
      for (std::size_t i = 0; i < family.size(); ++i)
        if (!image_of(family[i], next).subset_of(next)) {
          StallInfo info;
          info.reason = "contract-broken";
          info.witness_member = static_cast<int>(i);
          info.contract_set = SetRepr{next};
          info.contract_image = SetRepr{image_of(family[i], next)};
          info.note = "exact invariance re-check failed after center shrink";
          return stall(std::move(info));
        }
      TraceStep s;
      s.kind = StepKind::NsShrink;
      s.cert = StepCert::Exact;
      s.before = A;
      s.after = next;
      s.delta_before = dia;
      s.delta_after = delta(sp, next);
      s.center = PointRepr{best};
      s.radius = best_r;
      cert.trace.push_back(std::move(s));
      A = std::move(next);
    } else {
      // Hull meet shrink, with the two descent conditions checked exactly.
      Rat pd = p * dia;
      Rat qd = q * dia;
      PointSet H = ball_hull(sp, A, pd);
      auto pq_stall = [&](const char* reason, std::optional<PointSet> hull,
                          std::optional<PointSet> second, const char* stage) {
        StallInfo info;
        info.reason = reason;
        info.pq_witness =
            PqCounterexample{A, dia, std::move(hull), std::move(second), stage};
        return stall(std::move(info));
      };
      if (H.empty())
        return pq_stall("pq-hull-empty", std::nullopt, std::nullopt,
                        "hull-empty");
      PointSet K = ball_hull(sp, H, qd);
      if (K.empty())
        return pq_stall("pq-second-empty", H, std::nullopt, "second-empty");
      PointSet meet = H & K;
      if (meet.empty()) return pq_stall("pq-meet-empty", H, K, "meet-empty");
      PointSet next = cov_family(sp, family, meet);
      if (!next.subset_of(H))
        return pq_stall("pq-condition-1", H, next, "condition-1");
      if (delta(sp, next) > qd)
        return pq_stall("pq-condition-2", H, next, "condition-2");
      TraceStep s;
      s.kind = StepKind::PqShrink;
      s.cert = StepCert::Exact;
      s.before = A;
      s.after = next;
      s.delta_before = dia;
      s.delta_after = delta(sp, next);
      s.p = p;
      s.q = q;
      cert.trace.push_back(std::move(s));
      A = std::move(next);
    }
  }

  StallInfo info;
  info.reason = "budget-exceeded";
  return stall(std::move(info));
}

}  // namespace onx
