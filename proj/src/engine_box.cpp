#include <utility>

#include "onx/engine.hpp"
#include "onx/error.hpp"

namespace onx {

namespace {

void require_family(const BoxSpace& sp, const std::vector<BoxMap>& family) {
  if (family.empty()) throw invalid_input("empty family");
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (family[i].out_dim() != sp.ambient.dim())
      throw invalid_input("map arity mismatch",
                          json{{"map", i},
                               {"out_dim", family[i].out_dim()},
                               {"dim", sp.ambient.dim()}});
    if (!enclosure_self_map(family[i], sp.ambient))
      throw invalid_input(
          "map is not a certified self-map of the ambient box",
          json{{"map", i}});
  }
}

Box family_enclosure(const std::vector<BoxMap>& family, const Box& A) {
  std::vector<Box> images;
  images.reserve(family.size());
  for (const auto& m : family) images.push_back(map_box_enclosure(m, A));
  return box_cov_boxes(images);
}

// Round endpoints outward to {0, ambient bound} without ever leaving the
// ambient box, so widened covers remain genuine subsets of the space.
void widen_in_ambient(Box& e, const BoxSpace& sp) {
  for (std::size_t i = 0; i < e.lo.size(); ++i) {
    if (Rat(0) <= e.lo[i] && sp.ambient.lo[i] <= 0)
      e.lo[i] = Rat(0);
    else
      e.lo[i] = sp.ambient.lo[i];
    if (Rat(0) >= e.hi[i] && sp.ambient.hi[i] >= 0)
      e.hi[i] = Rat(0);
    else
      e.hi[i] = sp.ambient.hi[i];
  }
}

Rat endpoint_move(const Box& a, const Box& b) {
  Rat m(0);
  for (std::size_t i = 0; i < a.lo.size(); ++i) {
    m = rat_max(m, rat_abs(a.lo[i] - b.lo[i]));
    m = rat_max(m, rat_abs(a.hi[i] - b.hi[i]));
  }
  return m;
}

}  // namespace

Box box_invariant_descend(const BoxSpace& sp, const std::vector<BoxMap>& family,
                          Box start, const Rat& tol, int iter_budget,
                          int* iterations) {
  require_family(sp, family);
  if (!box_subset(start, sp.ambient))
    throw invalid_input("descent start escapes the ambient box");
  {
    Box img = family_enclosure(family, start);
    if (!box_subset(img, start))
      throw invalid_input("descent start is not invariant-enclosing");
  }

  int rounds = 0;
  for (int k = 0; k < iter_budget; ++k) {
    Box next = family_enclosure(family, start);
    if (next == start) break;
    Rat move = endpoint_move(next, start);
    start = std::move(next);
    ++rounds;
    if (move < tol) break;
  }
  if (iterations) *iterations = rounds;
  return start;
}

BoxCovResult box_cov_family(const BoxSpace& sp, const std::vector<BoxMap>& family,
                            const Box& E, int iter_budget) {
  require_family(sp, family);
  if (!box_subset(E, sp.ambient))
    throw invalid_input("cover seed escapes the ambient box");

  BoxCovResult res;
  res.box = E;
  int widen_at = iter_budget / 2;
  int full_at = iter_budget - iter_budget / 4;
  for (int k = 0; k < iter_budget; ++k) {
    std::vector<Box> parts{res.box, family_enclosure(family, res.box)};
    Box next = box_cov_boxes(parts);
    if (next == res.box) {
      res.iterations = k;
      return res;
    }
    res.box = std::move(next);
    if (k == widen_at) {
      widen_in_ambient(res.box, sp);
      res.widened = true;
    } else if (k == full_at) {
      res.box = sp.ambient;
      res.widened = true;
    }
  }
  // The ambient always closes: images of self-maps stay inside it.
  res.box = sp.ambient;
  res.widened = true;
  res.iterations = iter_budget;
  return res;
}

Certificate solve_fixed_point(const BoxSpace& sp,
                              const std::vector<BoxMap>& family, Method method,
                              const EngineConfig& cfg) {
  require_family(sp, family);
  if (cfg.eps <= 0) throw invalid_input("eps must be positive");
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
  cert.model = "box";
  cert.method = method;
  cert.config = cfg;

  auto stall = [&](StallInfo info) {
    cert.outcome = Outcome::Stall;
    cert.stall = std::move(info);
    cert.steps_used = static_cast<long>(cert.trace.size());
    return cert;
  };

  // Hypothesis gate: sampled falsification with enclosure-backed verdicts.
  if (cfg.presamples > 0) {
    FalsifyConfig fcfg{cfg.presamples, cfg.seed, cfg.orbit_budget, cfg.max_den};
    FalsifyReport orb = falsify_orbit_nonexpansive(sp, family, fcfg);
    if (orb.violation_found) {
      StallInfo info;
      info.reason = "hypothesis-falsified";
      info.box_witness = orb.violation;
      info.witness_member = orb.violating_map;
      info.note = "orbit check";
      return stall(std::move(info));
    }
    FalsifyReport itl = falsify_interlaced(sp, family, fcfg);
    if (itl.violation_found) {
      StallInfo info;
      info.reason = "hypothesis-falsified";
      info.box_witness = itl.violation;
      info.witness_member = itl.violating_map;
      info.note = "interlacing check";
      return stall(std::move(info));
    }
  }

  const Rat tol = cfg.effective_descend_tol();
  Box A = sp.ambient;
  bool monitor = false;  // invariance of A is contract-dependent, re-check
  while (static_cast<long>(cert.trace.size()) < cfg.step_budget) {
    if (monitor) {
      for (std::size_t i = 0; i < family.size(); ++i) {
        Box img = map_box_enclosure(family[i], A);
        if (!box_subset(img, A)) {
          StallInfo info;
          info.reason = "contract-broken";
          info.witness_member = static_cast<int>(i);
          info.contract_set = SetRepr{A};
          info.contract_image = SetRepr{img};
          info.note =
              "interval image escapes the shrunken set; either the declared "
              "property fails there or enclosure slack exceeds the margin";
          return stall(std::move(info));
        }
      }
    }

    TraceStep step;
    step.kind = StepKind::Descend;
    step.cert = StepCert::EnclosureCertified;
    step.before = A;
    step.delta_before = box_delta(A);
    A = box_invariant_descend(sp, family, A, tol, cfg.descend_iter_budget,
                              &step.iterations);
    step.after = A;
    step.delta_after = box_delta(A);
    cert.trace.push_back(std::move(step));
    monitor = false;

    Rat dia = box_delta(A);
    if (dia <= cfg.eps) {
      std::vector<Rat> x = box_chebyshev_center(A);
      Rat residual(0);
      for (const auto& m : family)
        residual = rat_max(residual, linf_dist(x, map_point(m, x)));
      if (residual > cfg.eps) {
        StallInfo info;
        info.reason = "residual-exceeds-eps";
        info.note = "exact residual " + rat_to_string(residual);
        return stall(std::move(info));
      }
      cert.point = PointRepr{std::move(x)};
      cert.radius = dia / 2;
      cert.residual = residual;
      cert.outcome = residual == 0 ? Outcome::CommonFixedPoint
                                   : Outcome::EpsilonFixedPoint;
      cert.steps_used = static_cast<long>(cert.trace.size());
      return cert;
    }

    if (static_cast<long>(cert.trace.size()) >= cfg.step_budget) break;

    if (method == Method::Ns) {
      // Chebyshev-center shrink: halves the diameter every round.
      std::vector<Rat> c = box_chebyshev_center(A);
      Rat r = dia / 2;
      auto hull = box_ball_hull(sp, A, r);
      auto next = hull ? box_intersect(A, *hull) : std::nullopt;
      if (!next) {
        StallInfo info;
        info.reason = "ns-no-strict-center";
        info.note = "center hull came out empty";
        return stall(std::move(info));
      }
      TraceStep s;
      s.kind = StepKind::NsShrink;
      s.cert = StepCert::ContractDependent;
      s.before = A;
      s.after = *next;
      s.delta_before = dia;
      s.delta_after = box_delta(*next);
      s.center = PointRepr{c};
      s.radius = r;
      cert.trace.push_back(std::move(s));
      A = *next;
      monitor = true;
    } else {
      Rat pd = p * dia;
      Rat qd = q * dia;
      auto pq_stall = [&](const char* reason, std::optional<Box> hull,
                          std::optional<Box> second, const char* stage) {
        StallInfo info;
        info.reason = reason;
        info.box_pq_witness =
            BoxPqWitness{A, dia, std::move(hull), std::move(second), stage};
        return stall(std::move(info));
      };
      auto H = box_ball_hull(sp, A, pd);
      if (!H)
        return pq_stall("pq-hull-empty", std::nullopt, std::nullopt,
                        "hull-empty");
      auto K = box_ball_hull(sp, *H, qd);
      if (!K) return pq_stall("pq-second-empty", *H, std::nullopt, "second-empty");
      auto meet = box_intersect(*H, *K);
      if (!meet) return pq_stall("pq-meet-empty", *H, *K, "meet-empty");
      BoxCovResult cf = box_cov_family(sp, family, *meet, cfg.covf_iter_budget);
      if (!box_subset(cf.box, *H))
        return pq_stall("pq-condition-1", *H, cf.box, "condition-1");
      if (box_delta(cf.box) > qd)
        return pq_stall("pq-condition-2", *H, cf.box, "condition-2");
      TraceStep s;
      s.kind = StepKind::PqShrink;
      s.cert = StepCert::EnclosureCertified;
      s.before = A;
      s.after = cf.box;
      s.delta_before = dia;
      s.delta_after = box_delta(cf.box);
      s.p = p;
      s.q = q;
      s.iterations = cf.iterations;
      s.widened = cf.widened;
      cert.trace.push_back(std::move(s));
      A = cf.box;
      monitor = false;  // the cover closed, so invariance is certified
    }
  }

  StallInfo info;
  info.reason = "budget-exceeded";
  return stall(std::move(info));
}

}  // namespace onx
