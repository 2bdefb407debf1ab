#include "onx/finite_space.hpp"

#include <algorithm>

#include "onx/error.hpp"

namespace onx {

FiniteSpace FiniteSpace::build(std::vector<std::string> labels,
                               std::vector<std::vector<Rat>> dist) {
  const std::size_t n = dist.size();
  if (n == 0) throw invalid_input("empty instance");
  for (std::size_t i = 0; i < n; ++i)
    if (dist[i].size() != n)
      throw invalid_input("distance matrix not square",
                          {{"row", i}, {"row_size", dist[i].size()}, {"n", n}});
  if (labels.empty()) {
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  }
  if (labels.size() != n)
    throw invalid_input("label count does not match matrix size",
                        {{"labels", labels.size()}, {"n", n}});

  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i][i] != 0)
      throw invalid_input("nonzero diagonal entry", {{"i", i}});
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dist[i][j] != dist[j][i])
        throw invalid_input("asymmetric distance", {{"i", i}, {"j", j}});
      if (dist[i][j] <= 0)
        throw invalid_input("nonpositive distance between distinct points",
                            {{"i", i}, {"j", j}});
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (dist[i][k] > dist[i][j] + dist[j][k])
          throw invalid_input(
              "triangle inequality violated",
              {{"i", i},
               {"j", j},
               {"k", k},
               {"d_ik", rat_to_string(dist[i][k])},
               {"d_ij_plus_d_jk", rat_to_string(dist[i][j] + dist[j][k])}});

  FiniteSpace sp;
  sp.n_ = static_cast<int>(n);
  sp.labels_ = std::move(labels);
  sp.dist_.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) sp.dist_.push_back(dist[i][j]);

  sp.radii_.push_back(Rat(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) sp.radii_.push_back(dist[i][j]);
  std::sort(sp.radii_.begin(), sp.radii_.end());
  sp.radii_.erase(std::unique(sp.radii_.begin(), sp.radii_.end()),
                  sp.radii_.end());
  return sp;
}

Rat FiniteSpace::diameter() const { return radii_.back(); }

namespace {

void require_nonempty(const PointSet& A, const char* op) {
  if (A.empty()) throw invalid_input("empty set", {{"op", op}});
}

}  // namespace

Rat delta(const FiniteSpace& sp, const PointSet& A) {
  require_nonempty(A, "delta");
  Rat best(0);
  auto elems = A.elements();
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i + 1; j < elems.size(); ++j)
      best = rat_max(best, sp.d(elems[i], elems[j]));
  return best;
}

Rat radius_from(const FiniteSpace& sp, int x, const PointSet& A) {
  require_nonempty(A, "radius_from");
  Rat best(0);
  bool seen = false;
  for (int a = 0; a < sp.n(); ++a) {
    if (!A.contains(a)) continue;
    if (!seen || best < sp.d(x, a)) best = sp.d(x, a);
    seen = true;
  }
  return best;
}

PointSet ball(const FiniteSpace& sp, int x, const Rat& r) {
  if (r < 0) throw invalid_input("negative radius", {{"r", rat_to_string(r)}});
  PointSet s(sp.n());
  for (int y = 0; y < sp.n(); ++y)
    if (sp.d(x, y) <= r) s.add(y);
  return s;
}

PointSet ball_hull(const FiniteSpace& sp, const PointSet& A, const Rat& r) {
  require_nonempty(A, "ball_hull");
  PointSet s = sp.all_points();
  for (int a = 0; a < sp.n(); ++a)
    if (A.contains(a)) s &= ball(sp, a, r);
  return s;
}

PointSet cov(const FiniteSpace& sp, const PointSet& C) {
  require_nonempty(C, "cov");
  PointSet s = sp.all_points();
  for (int x = 0; x < sp.n(); ++x) s &= ball(sp, x, radius_from(sp, x, C));
  return s;
}

void AdmissibleLattice::rebuild_index() {
  index_.clear();
  index_.reserve(members.size() * 2);
  for (std::size_t i = 0; i < members.size(); ++i)
    index_.emplace(members[i], static_cast<int>(i));
}

AdmissibleLattice enumerate_admissible(const FiniteSpace& sp, std::size_t cap) {
  std::vector<PointSet> members;
  std::unordered_map<PointSet, int, PointSet::Hash> seen;
  auto push = [&](const PointSet& s) {
    if (s.empty() || seen.count(s)) return;
    if (members.size() >= cap)
      throw cap_exceeded("admissible lattice larger than cap",
                         {{"cap", cap}});
    seen.emplace(s, static_cast<int>(members.size()));
    members.push_back(s);
  };

  for (int x = 0; x < sp.n(); ++x)
    for (const Rat& r : sp.canonical_radii()) push(ball(sp, x, r));

  // Pairwise-intersection closure over a growing vector: every unordered pair
  // is visited exactly once because j < i and new members get larger i later.
  for (std::size_t i = 1; i < members.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) push(members[i] & members[j]);

  std::sort(members.begin(), members.end(), PointSet::canonical_less);
  AdmissibleLattice lat;
  lat.members = std::move(members);
  lat.rebuild_index();
  return lat;
}

}  // namespace onx
