#include "onx/maps.hpp"

#include <algorithm>

#include "onx/error.hpp"
#include "onx/rng.hpp"

namespace onx {

void validate_map(const MapTable& t, int n) {
  if (t.n() != n)
    throw invalid_input("map table size does not match the space",
                        {{"map", t.name}, {"table", t.n()}, {"n", n}});
  for (int x = 0; x < n; ++x)
    if (t.apply(x) < 0 || t.apply(x) >= n)
      throw invalid_input("map image out of range",
                          {{"map", t.name}, {"x", x}, {"image", t.apply(x)}});
}

MapTable identity_map(int n) {
  MapTable t;
  t.image.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) t.image[static_cast<std::size_t>(i)] = i;
  t.name = "id";
  return t;
}

MapTable compose(const MapTable& outer, const MapTable& inner) {
  MapTable t;
  t.image.reserve(inner.image.size());
  for (int x = 0; x < inner.n(); ++x) t.image.push_back(outer.apply(inner.apply(x)));
  t.name = outer.name + "*" + inner.name;
  return t;
}

bool is_bijection(const MapTable& t) {
  std::vector<bool> hit(t.image.size(), false);
  for (int y : t.image) {
    if (y < 0 || y >= t.n() || hit[static_cast<std::size_t>(y)]) return false;
    hit[static_cast<std::size_t>(y)] = true;
  }
  return true;
}

std::optional<MapTable> inverse_of(const MapTable& t) {
  if (!is_bijection(t)) return std::nullopt;
  MapTable inv;
  inv.image.resize(t.image.size());
  for (int x = 0; x < t.n(); ++x) inv.image[static_cast<std::size_t>(t.apply(x))] = x;
  inv.name = t.name + "^-1";
  return inv;
}

PointSet orbit(const MapTable& t, int x) {
  PointSet s(t.n());
  int cur = x;
  while (!s.contains(cur)) {
    s.add(cur);
    cur = t.apply(cur);
  }
  return s;
}

namespace {

// Orbits of every point under one map, indexed by start point.
std::vector<PointSet> all_orbits(const MapTable& t) {
  std::vector<PointSet> o;
  o.reserve(static_cast<std::size_t>(t.n()));
  for (int y = 0; y < t.n(); ++y) o.push_back(orbit(t, y));
  return o;
}

}  // namespace

MapVerdict check_nonexpansive(const FiniteSpace& sp, const MapTable& t) {
  validate_map(t, sp.n());
  for (int x = 0; x < sp.n(); ++x)
    for (int y = 0; y < sp.n(); ++y) {
      const Rat& lhs = sp.d(t.apply(x), t.apply(y));
      const Rat& rhs = sp.d(x, y);
      if (lhs > rhs) return {false, PairCex{x, y, lhs, rhs}};
    }
  return {true, std::nullopt};
}

MapVerdict check_mean_nonexpansive(const FiniteSpace& sp, const MapTable& t,
                                   const Rat& a, const Rat& b) {
  validate_map(t, sp.n());
  if (a < 0 || b < 0 || a + b > 1)
    throw invalid_input("mean coefficients must be nonnegative with a+b <= 1",
                        {{"a", rat_to_string(a)}, {"b", rat_to_string(b)}});
  for (int x = 0; x < sp.n(); ++x)
    for (int y = 0; y < sp.n(); ++y) {
      const Rat& lhs = sp.d(t.apply(x), t.apply(y));
      Rat rhs = a * sp.d(x, y) + b * sp.d(x, t.apply(y));
      if (lhs > rhs) return {false, PairCex{x, y, lhs, rhs}};
    }
  return {true, std::nullopt};
}

MapVerdict check_orbit_nonexpansive(const FiniteSpace& sp, const MapTable& t) {
  validate_map(t, sp.n());
  auto orbits = all_orbits(t);
  for (int x = 0; x < sp.n(); ++x)
    for (int y = 0; y < sp.n(); ++y) {
      const Rat& lhs = sp.d(t.apply(x), t.apply(y));
      Rat rhs = radius_from(sp, x, orbits[static_cast<std::size_t>(y)]);
      if (lhs > rhs) return {false, PairCex{x, y, lhs, rhs}};
    }
  return {true, std::nullopt};
}

InterlacedVerdict check_interlaced(const FiniteSpace& sp,
                                   const std::vector<MapTable>& family) {
  if (family.empty()) throw invalid_input("empty family");
  for (const auto& t : family) validate_map(t, sp.n());

  std::vector<std::vector<PointSet>> orbits;
  orbits.reserve(family.size());
  for (const auto& t : family) orbits.push_back(all_orbits(t));

  // rhs depends only on (x, y); precompute the sup over family members.
  std::vector<std::vector<Rat>> rhs(static_cast<std::size_t>(sp.n()),
                                    std::vector<Rat>(static_cast<std::size_t>(sp.n())));
  for (int x = 0; x < sp.n(); ++x)
    for (int y = 0; y < sp.n(); ++y) {
      Rat best = radius_from(sp, x, orbits[0][static_cast<std::size_t>(y)]);
      for (std::size_t r = 1; r < family.size(); ++r)
        best = rat_max(best, radius_from(sp, x, orbits[r][static_cast<std::size_t>(y)]));
      rhs[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = best;
    }

  for (std::size_t ti = 0; ti < family.size(); ++ti)
    for (std::size_t si = 0; si < family.size(); ++si)
      for (int x = 0; x < sp.n(); ++x)
        for (int y = 0; y < sp.n(); ++y) {
          const Rat& lhs = sp.d(family[ti].apply(x), family[si].apply(y));
          const Rat& r = rhs[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
          if (lhs > r)
            return {false, QuadCex{static_cast<int>(ti), static_cast<int>(si),
                                   x, y, lhs, r}};
        }
  return {true, std::nullopt};
}

namespace {

int find_table(const std::vector<MapTable>& family, const std::vector<int>& image) {
  for (std::size_t i = 0; i < family.size(); ++i)
    if (family[i].image == image) return static_cast<int>(i);
  return -1;
}

}  // namespace

GroupVerdict check_group(const FiniteSpace& sp, const std::vector<MapTable>& family) {
  if (family.empty()) throw invalid_input("empty family");
  for (const auto& t : family) validate_map(t, sp.n());

  GroupVerdict v;
  for (std::size_t i = 0; i < family.size(); ++i)
    if (!is_bijection(family[i])) {
      v.failure = "not-bijection";
      v.witness_member = static_cast<int>(i);
      return v;
    }
  if (find_table(family, identity_map(sp.n()).image) < 0) {
    v.failure = "missing-identity";
    return v;
  }
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = 0; j < family.size(); ++j)
      if (find_table(family, compose(family[i], family[j]).image) < 0) {
        v.failure = "not-closed";
        v.witness_pair = {static_cast<int>(i), static_cast<int>(j)};
        return v;
      }
  for (std::size_t i = 0; i < family.size(); ++i)
    if (find_table(family, inverse_of(family[i])->image) < 0) {
      v.failure = "missing-inverse";
      v.witness_member = static_cast<int>(i);
      return v;
    }
  v.is_group = true;

  v.all_orbit_nonexpansive = true;
  for (std::size_t i = 0; i < family.size(); ++i) {
    auto mv = check_orbit_nonexpansive(sp, family[i]);
    if (!mv.holds) {
      v.all_orbit_nonexpansive = false;
      v.orbit_cex_member = static_cast<int>(i);
      v.orbit_cex = mv.cex;
      break;
    }
  }
  if (v.all_orbit_nonexpansive) v.interlaced = check_interlaced(sp, family);
  return v;
}

CommuteVerdict check_commuting(const std::vector<MapTable>& family) {
  if (family.empty()) throw invalid_input("empty family");
  const int n = family[0].n();
  for (std::size_t t = 0; t < family.size(); ++t)
    for (std::size_t s = t + 1; s < family.size(); ++s)
      for (int x = 0; x < n; ++x)
        if (family[t].apply(family[s].apply(x)) !=
            family[s].apply(family[t].apply(x)))
          return {false, static_cast<int>(t), static_cast<int>(s), x};
  return {true, std::nullopt, std::nullopt, std::nullopt};
}

ClassifyReport classify_map(const FiniteSpace& sp, const MapTable& t,
                            const std::optional<std::pair<Rat, Rat>>& mean_params) {
  ClassifyReport r;
  r.nonexpansive = check_nonexpansive(sp, t);
  r.orbit_nonexpansive = check_orbit_nonexpansive(sp, t);
  if (mean_params) {
    r.mean_a = mean_params->first;
    r.mean_b = mean_params->second;
    r.mean = check_mean_nonexpansive(sp, t, mean_params->first, mean_params->second);
  }
  return r;
}

// ---- box side ----

namespace {

// Grow lo down / hi up to the nearest of {ambient lo, 0, ambient hi} at or
// beyond the current value. Jumping to a plausible landing spot lets the
// closure test succeed where plain iteration only converges in the limit.
void widen_to_thresholds(Box& e, const BoxSpace& sp) {
  for (std::size_t i = 0; i < e.lo.size(); ++i) {
    // nearest threshold at or below lo
    if (Rat(0) <= e.lo[i])
      e.lo[i] = Rat(0);
    else if (sp.ambient.lo[i] <= e.lo[i])
      e.lo[i] = sp.ambient.lo[i];
    // nearest threshold at or above hi
    if (Rat(0) >= e.hi[i])
      e.hi[i] = Rat(0);
    else if (sp.ambient.hi[i] >= e.hi[i])
      e.hi[i] = sp.ambient.hi[i];
  }
}

}  // namespace

OrbitEnclosure orbit_enclosure(const BoxSpace& sp, const BoxMap& m,
                               const std::vector<Rat>& y, int iter_budget) {
  if (m.out_dim() != sp.dim())
    throw invalid_input("map dimension does not match the space",
                        {{"map", m.out_dim()}, {"space", sp.dim()}});
  Box e{y, y};
  const int widen_at = iter_budget / 2;
  const int full_at = (3 * iter_budget) / 4;
  for (int it = 0; it < iter_budget; ++it) {
    Box img = map_box_enclosure(m, e);
    if (box_subset(img, e)) return {e, true, it};
    e = box_cov_boxes({e, img});
    if (it == widen_at) widen_to_thresholds(e, sp);
    if (it == full_at) e = box_cov_boxes({e, sp.ambient});
  }
  bool closed = box_subset(map_box_enclosure(m, e), e);
  return {e, closed, iter_budget};
}

namespace {

std::vector<Rat> sample_point(Rng& g, const Box& b, unsigned max_den) {
  std::vector<Rat> x;
  x.reserve(b.lo.size());
  for (std::size_t i = 0; i < b.lo.size(); ++i)
    x.push_back(rat_in_range(g, b.lo[i], b.hi[i], max_den));
  return x;
}

// Exact forward iterates y, Ty, T^2 y, ... (prefix_len points).
std::vector<std::vector<Rat>> orbit_prefix(const BoxMap& m,
                                           const std::vector<Rat>& y,
                                           int prefix_len) {
  std::vector<std::vector<Rat>> pts{y};
  for (int i = 1; i < prefix_len; ++i) {
    auto next = map_point(m, pts.back());
    if (next == pts.back()) break;  // fixed point: orbit is complete
    pts.push_back(std::move(next));
  }
  return pts;
}

Rat prefix_radius(const std::vector<Rat>& x,
                  const std::vector<std::vector<Rat>>& pts) {
  Rat best(0);
  for (const auto& p : pts) best = rat_max(best, linf_dist(x, p));
  return best;
}

}  // namespace

FalsifyReport falsify_orbit_nonexpansive(const BoxSpace& sp,
                                         const std::vector<BoxMap>& family,
                                         const FalsifyConfig& cfg) {
  if (family.empty()) throw invalid_input("empty family");
  FalsifyReport rep;
  Rng g(cfg.seed);
  for (long s = 0; s < cfg.samples; ++s) {
    auto x = sample_point(g, sp.ambient, cfg.max_den);
    auto y = sample_point(g, sp.ambient, cfg.max_den);
    for (std::size_t mi = 0; mi < family.size(); ++mi) {
      const BoxMap& t = family[mi];
      ++rep.total;
      Rat lhs = linf_dist(map_point(t, x), map_point(t, y));
      auto prefix = orbit_prefix(t, y, cfg.orbit_budget);
      if (lhs <= prefix_radius(x, prefix)) {
        ++rep.certified;
        continue;
      }
      auto enc = orbit_enclosure(sp, t, y, cfg.orbit_budget);
      if (enc.closed && lhs > box_radius_from(x, enc.box)) {
        rep.violation_found = true;
        rep.violation = BoxPairCex{x, y, lhs, box_radius_from(x, enc.box)};
        rep.violating_map = static_cast<int>(mi);
        return rep;
      }
      ++rep.inconclusive;
    }
  }
  return rep;
}

FalsifyReport falsify_interlaced(const BoxSpace& sp,
                                 const std::vector<BoxMap>& family,
                                 const FalsifyConfig& cfg) {
  if (family.empty()) throw invalid_input("empty family");
  FalsifyReport rep;
  Rng g(cfg.seed);
  for (long s = 0; s < cfg.samples; ++s) {
    auto x = sample_point(g, sp.ambient, cfg.max_den);
    auto y = sample_point(g, sp.ambient, cfg.max_den);

    // sup over the family of D(x, o_R(y)): exact prefix lower bound and,
    // when every member's enclosure closes, a certified upper bound.
    Rat lower(0);
    Rat upper(0);
    bool upper_ok = true;
    for (const auto& r : family) {
      lower = rat_max(lower, prefix_radius(x, orbit_prefix(r, y, cfg.orbit_budget)));
      auto enc = orbit_enclosure(sp, r, y, cfg.orbit_budget);
      if (enc.closed)
        upper = rat_max(upper, box_radius_from(x, enc.box));
      else
        upper_ok = false;
    }

    for (std::size_t ti = 0; ti < family.size(); ++ti)
      for (std::size_t si = 0; si < family.size(); ++si) {
        ++rep.total;
        Rat lhs = linf_dist(map_point(family[ti], x), map_point(family[si], y));
        if (lhs <= lower) {
          ++rep.certified;
        } else if (upper_ok && lhs > upper) {
          rep.violation_found = true;
          rep.violation = BoxPairCex{x, y, lhs, upper};
          rep.violating_map = static_cast<int>(ti);
          return rep;
        } else {
          ++rep.inconclusive;
        }
      }
  }
  return rep;
}

}  // namespace onx
