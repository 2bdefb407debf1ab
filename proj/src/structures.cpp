#include "onx/structures.hpp"

#include "onx/error.hpp"

namespace onx {

NsReport check_ns(const FiniteSpace& sp, const AdmissibleLattice& lat) {
  NsReport rep;
  rep.holds = true;
  for (const PointSet& A : lat.members) {
    if (A.size() < 2) continue;
    ++rep.sets_checked;
    Rat dia = delta(sp, A);
    std::optional<CenterWitness> best;
    for (int z : A.elements()) {
      Rat r = radius_from(sp, z, A);
      if (r < dia && (!best || r < best->radius))
        best = CenterWitness{A, dia, z, r};
    }
    if (best) {
      rep.witnesses.push_back(*best);
    } else if (rep.holds) {
      rep.holds = false;
      NsCounterexample cex{A, dia, {}};
      for (int z : A.elements()) cex.radii.push_back(radius_from(sp, z, A));
      rep.cex = std::move(cex);
    }
  }
  return rep;
}

UnsReport check_uns(const FiniteSpace& sp, const AdmissibleLattice& lat,
                    const Rat& c) {
  if (c <= 0 || c >= 1)
    throw invalid_input("coefficient must lie strictly between 0 and 1",
                        {{"c", rat_to_string(c)}});
  UnsReport rep;
  rep.c = c;
  rep.holds = true;
  for (const PointSet& A : lat.members) {
    if (A.size() < 2) continue;
    ++rep.sets_checked;
    Rat dia = delta(sp, A);
    std::optional<CenterWitness> best;
    for (int z : A.elements()) {
      Rat r = radius_from(sp, z, A);
      if (!best || r < best->radius) best = CenterWitness{A, dia, z, r};
    }
    Rat ratio = best->radius / dia;
    if (!rep.c_star || ratio > *rep.c_star) {
      rep.c_star = ratio;
      rep.c_star_argmax = A;
    }
    if (best->radius < c * dia) {
      rep.witnesses.push_back(*best);
    } else if (rep.holds) {
      rep.holds = false;
      rep.cex = A;
    }
  }
  return rep;
}

PqReport check_pq_urns(const FiniteSpace& sp, const AdmissibleLattice& lat,
                       const Rat& p, const Rat& q) {
  if (p <= 0)
    throw invalid_input("p must be positive", {{"p", rat_to_string(p)}});
  if (q <= 0 || q >= 1)
    throw invalid_input("q must lie strictly between 0 and 1",
                        {{"q", rat_to_string(q)}});
  PqReport rep;
  rep.p = p;
  rep.q = q;
  rep.holds = true;
  for (const PointSet& A : lat.members) {
    if (A.size() < 2) continue;
    ++rep.sets_checked;
    Rat dia = delta(sp, A);
    PointSet hull = ball_hull(sp, A, p * dia);
    if (hull.empty()) {
      rep.holds = false;
      rep.cex = PqCounterexample{A, dia, std::nullopt, std::nullopt, "hull-empty"};
      return rep;
    }
    PointSet second = ball_hull(sp, hull, q * dia);
    if (second.empty()) {
      rep.holds = false;
      rep.cex = PqCounterexample{A, dia, hull, std::nullopt, "second-empty"};
      return rep;
    }
    PointSet meet = hull & second;
    if (meet.empty()) {
      rep.holds = false;
      rep.cex = PqCounterexample{A, dia, hull, second, "meet-empty"};
      return rep;
    }
    rep.witnesses.emplace_back(A, meet.first());
  }
  return rep;
}

OlrReport check_one_local_retract(const FiniteSpace& sp, const PointSet& D) {
  if (D.empty()) throw invalid_input("empty retract candidate");
  if (D.universe() != sp.n())
    throw invalid_input("retract candidate universe mismatch",
                        {{"universe", D.universe()}, {"n", sp.n()}});
  OlrReport rep;
  rep.holds = true;
  for (int y = 0; y < sp.n(); ++y) {
    ++rep.points_checked;
    PointSet meet = sp.all_points();
    for (int x : D.elements()) meet &= ball(sp, x, sp.d(x, y));
    if ((meet & D).empty()) {
      rep.holds = false;
      rep.cex_point = y;
      rep.cex_meet = meet;
      return rep;
    }
  }
  return rep;
}

// ---- box model ----

namespace {

int effective_dim(const BoxSpace& sp) {
  int k = 0;
  for (int i = 0; i < sp.dim(); ++i)
    if (sp.ambient.lo[static_cast<std::size_t>(i)] <
        sp.ambient.hi[static_cast<std::size_t>(i)])
      ++k;
  return k;
}

// Small cube centered in the ambient box, sized by the narrowest effective
// coordinate so that hulls inflated by 2 p delta never touch the ambient
// boundary (no clipping can rescue the witness). degenerate_first pins the
// first effective coordinate to its midpoint.
Box witness_box(const BoxSpace& sp, const Rat& p, bool degenerate_first) {
  Rat min_w(0);
  bool seen = false;
  for (int i = 0; i < sp.dim(); ++i) {
    auto k = static_cast<std::size_t>(i);
    Rat w = sp.ambient.hi[k] - sp.ambient.lo[k];
    if (w > 0 && (!seen || w < min_w)) {
      min_w = w;
      seen = true;
    }
  }
  Rat half = min_w / (Rat(16) * (p + Rat(1)));  // side s with 2 p s well inside
  Box b;
  bool first = true;
  for (int i = 0; i < sp.dim(); ++i) {
    auto k = static_cast<std::size_t>(i);
    Rat mid = (sp.ambient.lo[k] + sp.ambient.hi[k]) / 2;
    Rat h = sp.ambient.lo[k] < sp.ambient.hi[k] ? half : Rat(0);
    if (h > 0 && degenerate_first && first) {
      h = Rat(0);
      first = false;
    }
    b.lo.push_back(mid - h);
    b.hi.push_back(mid + h);
  }
  return b;
}

BoxPqWitness make_pq_witness(const BoxSpace& sp, const Rat& p, const Rat& q,
                             const Box& A) {
  BoxPqWitness w;
  w.set = A;
  w.diameter = box_delta(A);
  auto hull = box_ball_hull(sp, A, p * w.diameter);
  if (!hull) {
    w.stage = "hull-empty";
    return w;
  }
  w.hull = *hull;
  auto second = box_ball_hull(sp, *hull, q * w.diameter);
  if (!second) {
    w.stage = "second-empty";
    return w;
  }
  w.second = *second;
  w.stage = "meet-empty";
  return w;
}

}  // namespace

BoxNsReport box_check_ns(const BoxSpace& sp) {
  BoxNsReport rep;
  if (effective_dim(sp) == 0) {
    rep.verdict = BoxVerdict::Vacuous;
    rep.reason = "no box with positive diameter exists";
  } else {
    rep.verdict = BoxVerdict::Holds;
    rep.reason = "the midpoint of any box realizes D = delta/2 < delta";
  }
  return rep;
}

BoxUnsReport box_check_uns(const BoxSpace& sp, const Rat& c) {
  if (c <= 0 || c >= 1)
    throw invalid_input("coefficient must lie strictly between 0 and 1",
                        {{"c", rat_to_string(c)}});
  BoxUnsReport rep;
  rep.c = c;
  rep.threshold = Rat(1, 2);
  if (effective_dim(sp) == 0) {
    rep.verdict = BoxVerdict::Vacuous;
    rep.reason = "no box with positive diameter exists";
    return rep;
  }
  // min over internal points of D(z, A) equals delta/2 exactly (midpoint),
  // so the strict inequality D < c delta holds for every box iff c > 1/2.
  if (c > rep.threshold) {
    rep.verdict = BoxVerdict::Holds;
    rep.reason = "c exceeds the exact midpoint ratio 1/2";
  } else {
    rep.verdict = BoxVerdict::Fails;
    rep.reason = "every box has min internal ratio exactly 1/2, not below c";
  }
  return rep;
}

BoxPqReport box_check_pq_urns(const BoxSpace& sp, const Rat& p, const Rat& q) {
  if (p <= 0)
    throw invalid_input("p must be positive", {{"p", rat_to_string(p)}});
  if (q <= 0 || q >= 1)
    throw invalid_input("q must lie strictly between 0 and 1",
                        {{"q", rat_to_string(q)}});
  BoxPqReport rep;
  rep.p = p;
  rep.q = q;
  rep.effective_dim = effective_dim(sp);
  if (rep.effective_dim == 0) {
    rep.verdict = BoxVerdict::Vacuous;
    rep.reason = "no box with positive diameter exists";
    return rep;
  }

  if (p < Rat(1, 2)) {
    // a cube has hull width 2 p delta - delta < 0 in every coordinate
    rep.verdict = BoxVerdict::Fails;
    rep.reason = "p below 1/2: the hull of any cube is empty";
    rep.cex = make_pq_witness(sp, p, q, witness_box(sp, p, false));
    return rep;
  }

  if (rep.effective_dim == 1) {
    // single effective coordinate: hull width (2p-1) delta, second stage
    // needs q delta >= (2p-1) delta / 2
    if (q >= p - Rat(1, 2)) {
      rep.verdict = BoxVerdict::Holds;
      rep.reason = "midpoint of the hull works: q >= p - 1/2";
    } else {
      rep.verdict = BoxVerdict::Fails;
      rep.reason = "q below p - 1/2: second hull of an interval is empty";
      rep.cex = make_pq_witness(sp, p, q, witness_box(sp, p, false));
    }
    return rep;
  }

  // two or more effective coordinates: a box degenerate in one coordinate
  // inflates to hull width 2 p delta there
  if (q >= p) {
    rep.verdict = BoxVerdict::Holds;
    rep.reason = "midpoint of the hull works: q >= p";
  } else {
    rep.verdict = BoxVerdict::Fails;
    rep.reason = "q below p: second hull of a degenerate box is empty";
    rep.cex = make_pq_witness(sp, p, q, witness_box(sp, p, true));
  }
  return rep;
}

BoxPqReport box_check_urns(const BoxSpace& sp, const Rat& c) {
  if (c <= 0 || c >= 1)
    throw invalid_input("coefficient must lie strictly between 0 and 1",
                        {{"c", rat_to_string(c)}});
  return box_check_pq_urns(sp, c, c);
}

}  // namespace onx
