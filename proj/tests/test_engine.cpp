#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "onx/engine.hpp"
#include "onx/error.hpp"
#include "onx/rng.hpp"

using namespace onx;

namespace {

FiniteSpace path(int n) {
  std::vector<std::vector<Rat>> d(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d[i][j] = Rat(i > j ? i - j : j - i);
  return FiniteSpace::build({}, d);
}

FiniteSpace equilateral(int n) {
  std::vector<std::vector<Rat>> d(n, std::vector<Rat>(n, Rat(1)));
  for (int i = 0; i < n; ++i) d[i][i] = Rat(0);
  return FiniteSpace::build({}, d);
}

FiniteSpace random_space(int n, std::uint64_t seed) {
  Rng g(seed);
  std::vector<std::vector<Rat>> d(n, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      d[i][j] = d[j][i] = rat_in_range(g, Rat(1, 2), Rat(2), 4);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) d[i][j] = rat_min(d[i][j], d[i][k] + d[k][j]);
  return FiniteSpace::build({}, d);
}

MapTable table(std::vector<int> image, std::string name = "t") {
  return MapTable{std::move(image), std::move(name)};
}

std::vector<MapTable> rotation3_family() {
  return {table({0, 1, 2}, "id"), table({1, 2, 0}, "rot"),
          table({2, 0, 1}, "rot2")};
}

// x -> c + ratio * (x - c), one coordinate per center entry.
BoxMap centered_contraction(const std::vector<Rat>& center, const Rat& ratio) {
  std::vector<Expr> coords;
  for (std::size_t i = 0; i < center.size(); ++i)
    coords.push_back(Expr::add(
        Expr::scale(ratio, Expr::sub(Expr::var(static_cast<int>(i)),
                                     Expr::constant(center[i]))),
        Expr::constant(center[i])));
  return BoxMap{std::move(coords)};
}

Expr clamp1(Expr inner) {
  return Expr::max_of(Expr::constant(Rat(-1)),
                      Expr::min_of(Expr::constant(Rat(1)), std::move(inner)));
}

const std::vector<Rat>& point_of(const Certificate& c) {
  return std::get<std::vector<Rat>>(*c.point);
}

}  // namespace

TEST_CASE("descend reaches the invariant core") {
  auto sp = path(3);
  std::vector<MapTable> fam{table({1, 1, 1})};
  int iters = 0;
  PointSet got = invariant_descend(sp, fam, sp.all_points(), &iters);
  CHECK(got == PointSet::single(3, 1));
  CHECK(iters > 0);

  std::vector<MapTable> id{identity_map(3)};
  CHECK(invariant_descend(sp, id, sp.all_points()) == sp.all_points());
}

TEST_CASE("descend validates its start") {
  auto sp = path(3);
  std::vector<MapTable> fam{table({1, 1, 1})};
  // {0, 2} is not admissible (its cover adds the midpoint).
  CHECK_THROWS_AS(invariant_descend(sp, fam, PointSet::of(3, {0, 2})),
                  invalid_input);
  // {0, 1} is admissible but T{2->1} is irrelevant; use a map escaping it.
  std::vector<MapTable> esc{table({2, 2, 2})};
  CHECK_THROWS_AS(invariant_descend(sp, esc, PointSet::of(3, {0, 1})),
                  invalid_input);
}

TEST_CASE("invariant cover grows to the least invariant admissible set") {
  auto sp = path(3);
  std::vector<MapTable> fam{table({1, 1, 1})};
  CHECK(cov_family(sp, fam, PointSet::single(3, 0)) == PointSet::of(3, {0, 1}));
  // already admissible and invariant: unchanged
  CHECK(cov_family(sp, fam, PointSet::of(3, {0, 1})) == PointSet::of(3, {0, 1}));

  // oracle: scan the whole lattice for the least invariant superset
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    auto rsp = random_space(5, seed);
    Rng g(seed * 977);
    std::vector<int> img;
    for (int i = 0; i < 5; ++i)
      img.push_back(static_cast<int>(g.below(5)));
    std::vector<MapTable> rfam{table(img)};
    auto lat = enumerate_admissible(rsp);
    for (int x = 0; x < 5; ++x) {
      PointSet E = PointSet::single(5, x);
      PointSet got = cov_family(rsp, rfam, E);
      const PointSet* least = nullptr;
      for (const auto& A : lat.members) {
        if (!E.subset_of(A)) continue;
        bool inv = true;
        for (const auto& t : rfam) {
          for (int y : A.elements())
            if (!A.contains(t.apply(y))) {
              inv = false;
              break;
            }
          if (!inv) break;
        }
        if (!inv) continue;
        if (!least || A.subset_of(*least)) least = &A;
      }
      REQUIRE(least != nullptr);
      CHECK(got == *least);
    }
  }
}

TEST_CASE("collapse to a common fixed point on a path") {
  auto sp = path(3);
  std::vector<MapTable> fam{table({1, 1, 1})};
  EngineConfig cfg;
  Certificate cert = solve_fixed_point(sp, fam, Method::Ns, cfg);

  CHECK(cert.outcome == Outcome::CommonFixedPoint);
  REQUIRE(cert.point.has_value());
  CHECK(std::get<int>(*cert.point) == 1);
  CHECK(*cert.radius == 0);
  CHECK(*cert.residual == 0);
  CHECK(cert.trace.size() == 1);  // one descend, no shrink needed
  CHECK(cert.trace[0].kind == StepKind::Descend);

  REQUIRE(cert.fix.has_value());
  CHECK(cert.fix->fix_set == PointSet::single(3, 1));
  REQUIRE(cert.fix->olr.has_value());
  CHECK(cert.fix->olr->holds);

  CHECK(verify_certificate(sp, fam, cert).ok);
}

TEST_CASE("rotation group stalls with an equilateral witness") {
  auto sp = equilateral(3);
  auto fam = rotation3_family();
  EngineConfig cfg;
  Certificate cert = solve_fixed_point(sp, fam, Method::Ns, cfg);

  CHECK(cert.outcome == Outcome::Stall);
  REQUIRE(cert.stall.has_value());
  CHECK(cert.stall->reason == "ns-no-strict-center");
  REQUIRE(cert.stall->ns_witness.has_value());
  const auto& w = *cert.stall->ns_witness;
  CHECK(w.set == sp.all_points());
  CHECK(w.diameter == Rat(1));
  for (const auto& r : w.radii) CHECK(r == Rat(1));

  // rotation is fixed-point free, and the scan proves it
  REQUIRE(cert.fix.has_value());
  CHECK(cert.fix->fix_set.empty());
  CHECK(!cert.fix->olr.has_value());

  CHECK(verify_certificate(sp, fam, cert).ok);
}

TEST_CASE("identity on an equilateral space stalls yet reports its fixed points") {
  auto sp = equilateral(4);
  std::vector<MapTable> fam{identity_map(4)};
  Certificate cert = solve_fixed_point(sp, fam, Method::Ns, EngineConfig{});

  CHECK(cert.outcome == Outcome::Stall);
  CHECK(cert.stall->reason == "ns-no-strict-center");
  CHECK(cert.fix->fix_set == PointSet::full(4));
  REQUIRE(cert.fix->olr.has_value());
  CHECK(cert.fix->olr->holds);
  CHECK(cert.stall->note.find("common fixed points") != std::string::npos);
  CHECK(verify_certificate(sp, fam, cert).ok);
}

TEST_CASE("hypothesis failures stall before any descent") {
  auto sp = path(3);
  // swapping the first two points moves 1 away from the fixed point 2:
  // d(T1,T2) = 2 exceeds every distance to the (singleton) orbit of 2
  std::vector<MapTable> swap01{table({1, 0, 2})};
  REQUIRE(!check_orbit_nonexpansive(sp, swap01[0]).holds);
  Certificate bad = solve_fixed_point(sp, swap01, Method::Ns, EngineConfig{});
  CHECK(bad.outcome == Outcome::Stall);
  CHECK(bad.stall->reason == "hypothesis-orbit");
  CHECK(*bad.stall->witness_member == 0);
  REQUIRE(bad.stall->orbit_witness.has_value());
  CHECK(bad.stall->orbit_witness->lhs > bad.stall->orbit_witness->rhs);
  CHECK(bad.trace.empty());
  CHECK(verify_certificate(sp, swap01, bad).ok);

  // two constant maps at distance 2 satisfy the orbit check individually
  // but not jointly
  std::vector<MapTable> consts{table({0, 0, 0}, "c0"), table({2, 2, 2}, "c2")};
  for (const auto& t : consts) CHECK(check_orbit_nonexpansive(sp, t).holds);
  Certificate cert = solve_fixed_point(sp, consts, Method::Ns, EngineConfig{});
  CHECK(cert.outcome == Outcome::Stall);
  CHECK(cert.stall->reason == "hypothesis-interlaced");
  REQUIRE(cert.stall->interlace_witness.has_value());
  const auto& w = *cert.stall->interlace_witness;
  CHECK(w.lhs > w.rhs);
  CHECK(cert.trace.empty());
  CHECK(verify_certificate(sp, consts, cert).ok);
}

TEST_CASE("pq stalls carry stage witnesses") {
  auto sp = equilateral(3);
  auto fam = rotation3_family();

  EngineConfig cfg;
  cfg.pq_p = Rat(1, 2);
  cfg.pq_q = Rat(1, 2);
  Certificate hull = solve_fixed_point(sp, fam, Method::Pq, cfg);
  CHECK(hull.outcome == Outcome::Stall);
  CHECK(hull.stall->reason == "pq-hull-empty");
  REQUIRE(hull.stall->pq_witness.has_value());
  CHECK(hull.stall->pq_witness->stage == "hull-empty");
  CHECK(hull.stall->pq_witness->set == sp.all_points());
  CHECK(verify_certificate(sp, fam, hull).ok);

  cfg.pq_p = Rat(3, 2);
  cfg.pq_q = Rat(1, 2);
  Certificate second = solve_fixed_point(sp, fam, Method::Pq, cfg);
  CHECK(second.outcome == Outcome::Stall);
  CHECK(second.stall->reason == "pq-second-empty");
  REQUIRE(second.stall->pq_witness.has_value());
  CHECK(second.stall->pq_witness->hull == sp.all_points());
  CHECK(verify_certificate(sp, fam, second).ok);

  cfg.pq_p = Rat(0);
  CHECK_THROWS_AS(solve_fixed_point(sp, fam, Method::Pq, cfg), invalid_input);
  cfg.pq_p = Rat(1, 2);
  cfg.pq_q = Rat(1);
  CHECK_THROWS_AS(solve_fixed_point(sp, fam, Method::Pq, cfg), invalid_input);
}

TEST_CASE("finite pq solve reaches the fixed point when descent collapses") {
  auto sp = path(3);
  std::vector<MapTable> fam{table({1, 1, 1})};
  EngineConfig cfg;
  cfg.pq_p = Rat(3, 4);
  cfg.pq_q = Rat(3, 4);
  Certificate cert = solve_fixed_point(sp, fam, Method::Pq, cfg);
  CHECK(cert.outcome == Outcome::CommonFixedPoint);
  CHECK(std::get<int>(*cert.point) == 1);
  for (const auto& st : cert.trace) CHECK(st.kind == StepKind::Descend);
  CHECK(verify_certificate(sp, fam, cert).ok);
}

TEST_CASE("tampered finite certificates are rejected") {
  auto sp = path(3);
  std::vector<MapTable> fam{table({1, 1, 1})};
  Certificate good = solve_fixed_point(sp, fam, Method::Ns, EngineConfig{});
  REQUIRE(verify_certificate(sp, fam, good).ok);

  auto tampered = good;
  tampered.trace[0].delta_after += Rat(1, 7);
  CHECK(!verify_certificate(sp, fam, tampered).ok);

  tampered = good;
  tampered.trace[0].after = SetRepr{PointSet::of(3, {0, 1})};
  CHECK(!verify_certificate(sp, fam, tampered).ok);

  tampered = good;
  tampered.point = PointRepr{0};
  CHECK(!verify_certificate(sp, fam, tampered).ok);

  tampered = good;
  tampered.steps_used = 5;
  CHECK(!verify_certificate(sp, fam, tampered).ok);

  tampered = good;
  tampered.fix->fix_set = PointSet::full(3);
  CHECK(!verify_certificate(sp, fam, tampered).ok);

  tampered = good;
  tampered.trace[0].iterations += 1;
  CHECK(!verify_certificate(sp, fam, tampered).ok);

  tampered = good;
  tampered.model = "box";
  CHECK(!verify_certificate(sp, fam, tampered).ok);
}

TEST_CASE("box descent iterates interval images") {
  auto sp = make_box_space(make_box({Rat(-1)}, {Rat(1)}));
  std::vector<BoxMap> fam{centered_contraction({Rat(0)}, Rat(1, 3))};
  int iters = 0;
  Box got = box_invariant_descend(sp, fam, sp.ambient, Rat(1, 1000), 64, &iters);
  CHECK(iters > 0);
  CHECK(box_subset(got, sp.ambient));
  CHECK(box_subset(map_box_enclosure(fam[0], got), got));
  CHECK(box_delta(got) < Rat(1, 100));
}

TEST_CASE("box invariant cover widens to close") {
  auto sp = make_box_space(make_box({Rat(-1)}, {Rat(1)}));
  std::vector<BoxMap> fam{centered_contraction({Rat(0)}, Rat(1, 3))};
  Box seed = make_box({Rat(1)}, {Rat(1)});
  BoxCovResult res = box_cov_family(sp, fam, seed, 64);
  CHECK(res.widened);
  CHECK(res.box == make_box({Rat(0)}, {Rat(1)}));
  CHECK(box_subset(map_box_enclosure(fam[0], res.box), res.box));
  CHECK(box_subset(seed, res.box));

  // an invariant seed closes immediately, unwidened
  BoxCovResult fix = box_cov_family(sp, fam, sp.ambient, 64);
  CHECK(!fix.widened);
  CHECK(fix.box == sp.ambient);
  CHECK(fix.iterations == 0);
}

TEST_CASE("centered contraction solves to the exact fixed point") {
  auto sp = make_box_space(make_box({Rat(-1)}, {Rat(1)}));
  std::vector<BoxMap> fam{centered_contraction({Rat(0)}, Rat(1, 3))};
  Certificate cert = solve_fixed_point(sp, fam, Method::Ns, EngineConfig{});

  CHECK(cert.outcome == Outcome::CommonFixedPoint);
  CHECK(point_of(cert) == std::vector<Rat>{Rat(0)});
  CHECK(*cert.residual == 0);
  CHECK(*cert.radius <= Rat(1, 2000));

  // shrink steps halve the diameter
  long shrinks = 0;
  for (const auto& st : cert.trace)
    if (st.kind == StepKind::NsShrink) {
      CHECK(st.delta_after <= st.delta_before / 2);
      ++shrinks;
    }
  Rat bound = box_delta(sp.ambient);
  for (long i = 0; i < shrinks; ++i) bound /= 2;
  CHECK(std::get<Box>(cert.trace.back().after).dim() == 1);
  CHECK(box_delta(std::get<Box>(cert.trace.back().after)) <= bound);

  CHECK(verify_certificate(sp, fam, cert).ok);
}

TEST_CASE("corner contraction converges by descent alone") {
  auto sp = make_box_space(make_box({Rat(0)}, {Rat(1)}));
  std::vector<BoxMap> fam{centered_contraction({Rat(0)}, Rat(1, 2))};
  Certificate cert = solve_fixed_point(sp, fam, Method::Ns, EngineConfig{});

  CHECK(cert.outcome == Outcome::EpsilonFixedPoint);
  CHECK(*cert.residual <= Rat(1, 1000));
  CHECK(*cert.residual > 0);
  // true fixed point is 0; the midpoint sits within eps of it
  CHECK(point_of(cert)[0] <= Rat(1, 1000));
  for (const auto& st : cert.trace) CHECK(st.kind == StepKind::Descend);
  CHECK(verify_certificate(sp, fam, cert).ok);
}

TEST_CASE("weak symmetric contraction needs one center shrink") {
  auto sp = make_box_space(make_box({Rat(-1)}, {Rat(1)}));
  std::vector<BoxMap> fam{centered_contraction({Rat(0)}, Rat(15, 16))};
  Certificate cert = solve_fixed_point(sp, fam, Method::Ns, EngineConfig{});

  CHECK(cert.outcome == Outcome::CommonFixedPoint);
  CHECK(point_of(cert) == std::vector<Rat>{Rat(0)});
  long shrinks = 0;
  for (const auto& st : cert.trace)
    if (st.kind == StepKind::NsShrink) ++shrinks;
  CHECK(shrinks == 1);  // the symmetric interval collapses to its midpoint
  CHECK(verify_certificate(sp, fam, cert).ok);
}

TEST_CASE("contract monitor catches a broken shrink") {
  // weak corner contraction: descent stalls above eps, the midpoint shrink
  // produces a point box that the map does not fix
  auto sp = make_box_space(make_box({Rat(0)}, {Rat(1)}));
  std::vector<BoxMap> fam{centered_contraction({Rat(0)}, Rat(63, 64))};
  Certificate cert = solve_fixed_point(sp, fam, Method::Ns, EngineConfig{});

  CHECK(cert.outcome == Outcome::Stall);
  REQUIRE(cert.stall.has_value());
  CHECK(cert.stall->reason == "contract-broken");
  CHECK(*cert.stall->witness_member == 0);
  REQUIRE(cert.stall->contract_set.has_value());
  const Box& s = std::get<Box>(*cert.stall->contract_set);
  const Box& img = std::get<Box>(*cert.stall->contract_image);
  CHECK(!box_subset(img, s));
  CHECK(cert.trace.back().kind == StepKind::NsShrink);
  CHECK(verify_certificate(sp, fam, cert).ok);
}

TEST_CASE("pq route records the contraction conditions") {
  EngineConfig cfg;
  cfg.pq_p = Rat(3, 4);
  cfg.pq_q = Rat(3, 4);

  // weak enough that descent alone stalls above eps, forcing pq shrinks
  auto sp1 = make_box_space(make_box({Rat(-1)}, {Rat(1)}));
  std::vector<BoxMap> fam1{centered_contraction({Rat(0)}, Rat(15, 16))};
  Certificate c1 = solve_fixed_point(sp1, fam1, Method::Pq, cfg);
  CHECK(c1.outcome == Outcome::CommonFixedPoint);
  long pq_steps = 0;
  for (const auto& st : c1.trace)
    if (st.kind == StepKind::PqShrink) {
      CHECK(st.delta_after <= Rat(3, 4) * st.delta_before);
      CHECK(!st.widened);
      ++pq_steps;
    }
  CHECK(pq_steps > 0);
  CHECK(verify_certificate(sp1, fam1, c1).ok);

  auto sp2 = make_box_space(
      make_box({Rat(0), Rat(0)}, {Rat(1), Rat(3)}));
  std::vector<BoxMap> fam2{
      centered_contraction({Rat(1, 2), Rat(3, 2)}, Rat(1, 2))};
  Certificate c2 = solve_fixed_point(sp2, fam2, Method::Pq, cfg);
  CHECK(c2.outcome == Outcome::CommonFixedPoint);
  CHECK(point_of(c2) == std::vector<Rat>{Rat(1, 2), Rat(3, 2)});
  CHECK(verify_certificate(sp2, fam2, c2).ok);

  auto tampered = c1;
  for (auto& st : tampered.trace)
    if (st.kind == StepKind::PqShrink) {
      st.delta_after = st.delta_before;  // fake condition (2)
      break;
    }
  CHECK(!verify_certificate(sp1, fam1, tampered).ok);
}

TEST_CASE("corner contraction stalls the pq route on condition one") {
  auto sp = make_box_space(make_box({Rat(0)}, {Rat(1)}));
  std::vector<BoxMap> fam{centered_contraction({Rat(0)}, Rat(63, 64))};
  EngineConfig cfg;
  cfg.pq_p = Rat(3, 4);
  cfg.pq_q = Rat(3, 4);
  Certificate cert = solve_fixed_point(sp, fam, Method::Pq, cfg);

  CHECK(cert.outcome == Outcome::Stall);
  CHECK(cert.stall->reason == "pq-condition-1");
  REQUIRE(cert.stall->box_pq_witness.has_value());
  const auto& w = *cert.stall->box_pq_witness;
  CHECK(w.stage == "condition-1");
  REQUIRE(w.hull.has_value());
  REQUIRE(w.second.has_value());
  CHECK(!box_subset(*w.second, *w.hull));
  CHECK(verify_certificate(sp, fam, cert).ok);
}

TEST_CASE("sampled falsification gates the box solve") {
  auto sp = make_box_space(make_box({Rat(-1)}, {Rat(1)}));
  std::vector<BoxMap> fam{BoxMap{{clamp1(Expr::scale(Rat(2), Expr::var(0)))}}};
  EngineConfig cfg;
  cfg.presamples = 256;
  Certificate cert = solve_fixed_point(sp, fam, Method::Ns, cfg);

  CHECK(cert.outcome == Outcome::Stall);
  CHECK(cert.stall->reason == "hypothesis-falsified");
  REQUIRE(cert.stall->box_witness.has_value());
  CHECK(cert.stall->box_witness->lhs > cert.stall->box_witness->rhs_upper);
  CHECK(cert.trace.empty());
  CHECK(verify_certificate(sp, fam, cert).ok);

  auto tampered = cert;
  tampered.stall->box_witness->lhs += Rat(1);
  CHECK(!verify_certificate(sp, fam, tampered).ok);

  // a clean family must not claim falsification
  std::vector<BoxMap> ok{centered_contraction({Rat(0)}, Rat(1, 3))};
  auto forged = cert;
  CHECK(!verify_certificate(sp, ok, forged).ok);
}

TEST_CASE("random centered contractions solve within eps") {
  Rng g(20240816);
  for (int trial = 0; trial < 10; ++trial) {
    int k = 1 + static_cast<int>(g.below(3));
    std::vector<Rat> lo(k), hi(k), center(k);
    for (int i = 0; i < k; ++i) {
      lo[i] = Rat(-1) - Rat(static_cast<long>(g.below(3)));
      hi[i] = Rat(1) + Rat(static_cast<long>(g.below(3)));
      center[i] = (lo[i] + hi[i]) / 2;
    }
    Rat ratio(1 + static_cast<long>(g.below(6)), 8);  // 1/8 .. 6/8
    auto sp = make_box_space(make_box(lo, hi));
    std::vector<BoxMap> fam{centered_contraction(center, ratio)};
    Certificate cert = solve_fixed_point(sp, fam, Method::Ns, EngineConfig{});
    REQUIRE(cert.outcome != Outcome::Stall);
    CHECK(*cert.residual <= Rat(1, 1000));
    CHECK(linf_dist(point_of(cert), center) <= Rat(1, 1000));
    CHECK(verify_certificate(sp, fam, cert).ok);
  }
}

TEST_CASE("budget exhaustion is an explained stall") {
  auto sp = make_box_space(make_box({Rat(-1)}, {Rat(1)}));
  std::vector<BoxMap> fam{centered_contraction({Rat(0)}, Rat(15, 16))};
  EngineConfig cfg;
  cfg.step_budget = 1;
  Certificate cert = solve_fixed_point(sp, fam, Method::Ns, cfg);
  CHECK(cert.outcome == Outcome::Stall);
  CHECK(cert.stall->reason == "budget-exceeded");
  CHECK(cert.trace.size() == 1);
  CHECK(verify_certificate(sp, fam, cert).ok);
}

TEST_CASE("solving is deterministic") {
  auto sp = make_box_space(make_box({Rat(-1), Rat(-1)}, {Rat(1), Rat(1)}));
  std::vector<BoxMap> fam{centered_contraction({Rat(0), Rat(0)}, Rat(2, 3))};
  Certificate a = solve_fixed_point(sp, fam, Method::Ns, EngineConfig{});
  Certificate b = solve_fixed_point(sp, fam, Method::Ns, EngineConfig{});
  CHECK(a.outcome == b.outcome);
  CHECK(a.trace.size() == b.trace.size());
  CHECK(point_of(a) == point_of(b));
  CHECK(*a.residual == *b.residual);
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].kind == b.trace[i].kind);
    CHECK(std::get<Box>(a.trace[i].after) == std::get<Box>(b.trace[i].after));
  }
}
