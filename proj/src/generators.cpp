#include "onx/generators.hpp"

#include <utility>

#include "onx/rng.hpp"
#include "onx/structures.hpp"

namespace onx {

namespace {

constexpr int kMaxTaggedDepth = 49;   // 4*49 + 5 = 201 points
constexpr int kMaxBoxDim = 8;
constexpr int kTropicalRetries = 32;

std::vector<std::vector<Rat>> abs_metric(const std::vector<TaggedPoint>& pts) {
  std::size_t n = pts.size();
  std::vector<std::vector<Rat>> d(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      d[i][j] = rat_abs(pts[i].value - pts[j].value);
  return d;
}

int index_of(const std::vector<TaggedPoint>& pts, const Rat& value,
             bool rational_tag) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (pts[i].rational_tag == rational_tag && pts[i].value == value)
      return static_cast<int>(i);
  throw invalid_input("tagged point not found",
                      {{"value", rat_to_string(value)}});
}

}  // namespace

std::vector<TaggedPoint> tagged_thirds_points(int depth) {
  std::vector<TaggedPoint> pts;
  pts.push_back({Rat(0), true, -1});
  Rat pow(1);
  for (int j = 0; j <= depth; ++j) {
    pts.push_back({pow, true, j});
    pts.push_back({-pow, true, j});
    pts.push_back({pow * Rat(7, 10), false, j});
    pts.push_back({-pow * Rat(7, 10), false, j});
    pow /= 3;
  }
  return pts;
}

FiniteBundle gen_tagged_thirds(int depth) {
  if (depth < 1) throw invalid_input("depth must be at least 1");
  if (depth > kMaxTaggedDepth)
    throw cap_exceeded("tagged-thirds depth exceeds the point cap",
                       {{"depth", depth}, {"max", kMaxTaggedDepth}});

  auto pts = tagged_thirds_points(depth);
  std::vector<std::string> labels;
  for (const auto& p : pts)
    labels.push_back((p.rational_tag ? "rat:" : "irr:") +
                     rat_to_string(p.value));
  FiniteSpace sp = FiniteSpace::build(std::move(labels), abs_metric(pts));

  std::vector<int> image;
  for (const auto& p : pts) {
    if (p.value == 0) {
      image.push_back(0);
    } else if (p.level == depth) {
      image.push_back(0);
    } else if (p.rational_tag) {
      image.push_back(index_of(pts, -p.value / 3, true));
    } else {
      image.push_back(index_of(pts, p.value / 3, false));
    }
  }
  std::vector<MapTable> maps{MapTable{std::move(image), "thirds"}};

  json ann{{"orbit-nonexpansive", true},
           {"nonexpansive", false},
           {"points", sp.n()}};
  return {std::move(sp), std::move(maps), std::move(ann),
          "one-third scaling, sign-flipping on rational-tagged points; the "
          "deepest level is redirected to 0"};
}

FiniteBundle gen_equilateral(int n, const Rat& d) {
  if (n < 2) throw invalid_input("equilateral needs at least 2 points");
  if (d <= 0) throw invalid_input("equilateral distance must be positive");
  std::vector<std::vector<Rat>> dist(
      static_cast<std::size_t>(n), std::vector<Rat>(static_cast<std::size_t>(n), d));
  for (int i = 0; i < n; ++i)
    dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Rat(0);
  FiniteSpace sp = FiniteSpace::build({}, std::move(dist));
  std::vector<MapTable> maps{identity_map(n)};
  json ann{{"ns-holds", false},
           {"solve-ns", "stall"},
           {"fixed-points", n}};
  return {std::move(sp), std::move(maps), std::move(ann),
          "equidistant points under the identity: every point is fixed but "
          "no set has a strict center"};
}

FiniteBundle gen_path(int n) {
  if (n < 2) throw invalid_input("path needs at least 2 points");
  std::vector<std::vector<Rat>> dist(static_cast<std::size_t>(n),
                                     std::vector<Rat>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          Rat(i > j ? i - j : j - i);
  FiniteSpace sp = FiniteSpace::build({}, std::move(dist));

  int mid_lo = (n - 1) / 2, mid_hi = n / 2;
  std::vector<int> image;
  for (int i = 0; i < n; ++i)
    image.push_back(i < mid_lo ? i + 1 : i > mid_hi ? i - 1 : i);
  std::vector<MapTable> maps{MapTable{std::move(image), "toward-middle"}};

  json ann{{"ns-holds", false}};
  if (n % 2 == 1) {
    ann["solve-ns"] = "common-fixed-point";
    ann["fixed-point"] = mid_lo;
  } else {
    ann["solve-ns"] = "stall";
    ann["stall-reason"] = "ns-no-strict-center";
  }
  return {std::move(sp), std::move(maps), std::move(ann),
          "integer line stepping toward the middle; even lengths descend to "
          "an adjacent pair, which has no strict center"};
}

FiniteBundle gen_rotation3() {
  FiniteBundle base = gen_equilateral(3, Rat(1));
  std::vector<MapTable> maps{MapTable{{0, 1, 2}, "id"},
                             MapTable{{1, 2, 0}, "rot"},
                             MapTable{{2, 0, 1}, "rot2"}};
  json ann{{"group", true},
           {"interlaced", true},
           {"common-fixed-points", 0},
           {"solve-ns", "stall"}};
  return {std::move(base.space), std::move(maps), std::move(ann),
          "rotation group on three equidistant points: interlaced isometries "
          "with no common fixed point"};
}

FiniteBundle gen_star(int leaves) {
  if (leaves < 2) throw invalid_input("star needs at least 2 leaves");
  int n = leaves + 1;
  std::vector<std::vector<Rat>> dist(
      static_cast<std::size_t>(n),
      std::vector<Rat>(static_cast<std::size_t>(n), Rat(2)));
  for (int i = 0; i < n; ++i) {
    dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Rat(0);
    if (i > 0) {
      dist[0][static_cast<std::size_t>(i)] = Rat(1);
      dist[static_cast<std::size_t>(i)][0] = Rat(1);
    }
  }
  FiniteSpace sp = FiniteSpace::build({}, std::move(dist));

  std::vector<int> image{0};
  for (int i = 1; i <= leaves; ++i) image.push_back(1 + i % leaves);
  std::vector<MapTable> maps{MapTable{std::move(image), "rotate-leaves"}};
  json ann{{"nonexpansive", true},
           {"orbit-nonexpansive", true},
           {"solve-ns", "common-fixed-point"},
           {"fixed-point", 0}};
  return {std::move(sp), std::move(maps), std::move(ann),
          "hub and rotating leaves: the hub is the unique point within "
          "distance 1 of everything, so one center shrink isolates it"};
}

FiniteBundle gen_random_space(int n, std::uint64_t seed) {
  if (n < 2) throw invalid_input("random space needs at least 2 points");
  Rng g(seed);
  std::size_t un = static_cast<std::size_t>(n);
  std::vector<std::vector<Rat>> d(un, std::vector<Rat>(un, Rat(0)));
  for (std::size_t i = 0; i < un; ++i)
    for (std::size_t j = i + 1; j < un; ++j)
      d[i][j] = d[j][i] = rat_in_range(g, Rat(1, 2), Rat(2), 4);
  for (std::size_t k = 0; k < un; ++k)
    for (std::size_t i = 0; i < un; ++i)
      for (std::size_t j = 0; j < un; ++j)
        if (i != j) d[i][j] = rat_min(d[i][j], d[i][k] + d[k][j]);
  FiniteSpace sp = FiniteSpace::build({}, std::move(d));

  std::vector<int> image;
  for (int i = 0; i < n; ++i)
    image.push_back(static_cast<int>(g.below(static_cast<std::uint64_t>(n))));
  MapTable t{std::move(image), "random"};
  json ann{{"ns-holds", false},
           {"orbit-nonexpansive", check_orbit_nonexpansive(sp, t).holds},
           {"nonexpansive", check_nonexpansive(sp, t).holds}};
  std::vector<MapTable> maps{std::move(t)};
  return {std::move(sp), std::move(maps), std::move(ann),
          "shortest-path completion of random weights with a random table; "
          "annotations record what the checkers found for this seed"};
}

BoxBundle gen_box_contraction(int k, const Rat& ratio, bool shifted) {
  if (k < 1) throw invalid_input("dimension must be at least 1");
  if (k > kMaxBoxDim)
    throw cap_exceeded("dimension exceeds the box cap",
                       {{"dim", k}, {"max", kMaxBoxDim}});
  if (ratio <= 0 || ratio >= 1)
    throw invalid_input("contraction ratio must lie in (0,1)",
                        {{"ratio", rat_to_string(ratio)}});

  std::size_t uk = static_cast<std::size_t>(k);
  std::vector<Rat> lo(uk, shifted ? Rat(0) : Rat(-1));
  std::vector<Rat> hi(uk, Rat(1));
  Rat fixed = shifted ? Rat(1, 2) : Rat(0);

  std::vector<Expr> coords;
  for (int i = 0; i < k; ++i) {
    Expr e = Expr::scale(ratio, Expr::var(i));
    if (shifted) e = Expr::add(std::move(e), Expr::constant((1 - ratio) / 2));
    coords.push_back(std::move(e));
  }

  json fp = json::array();
  for (int i = 0; i < k; ++i) fp.push_back(rat_to_string(fixed));
  json ann{{"fixed-point", fp},
           {"ratio", rat_to_string(ratio)},
           {"shifted", shifted}};
  return {make_box_space(make_box(std::move(lo), std::move(hi))),
          {BoxMap{std::move(coords)}},
          std::move(ann),
          "coordinate-wise affine contraction with a closed-form fixed point"};
}

BoxBundle gen_box_tropical(int k, std::uint64_t seed) {
  if (k < 1) throw invalid_input("dimension must be at least 1");
  if (k > kMaxBoxDim)
    throw cap_exceeded("dimension exceeds the box cap",
                       {{"dim", k}, {"max", kMaxBoxDim}});

  BoxSpace sp = make_box_space(make_box(
      std::vector<Rat>(static_cast<std::size_t>(k), Rat(-1)),
      std::vector<Rat>(static_cast<std::size_t>(k), Rat(1))));
  Rng g(seed);

  // damped affine leaf: |c| <= 1/2 and |b| <= 1/2 keep the image in [-1,1],
  // and max/min of such leaves stays there too
  auto leaf = [&]() {
    Rat c = rat_in_range(g, Rat(-1, 2), Rat(1, 2), 8);
    Rat b = rat_in_range(g, Rat(-1, 2), Rat(1, 2), 8);
    int j = static_cast<int>(g.below(static_cast<std::uint64_t>(k)));
    return Expr::add(Expr::scale(c, Expr::var(j)), Expr::constant(b));
  };
  auto coordinate = [&]() {
    switch (g.below(4)) {
      case 0: return leaf();
      case 1: return Expr::max_of(leaf(), leaf());
      case 2: return Expr::min_of(leaf(), leaf());
      default: return Expr::max_of(leaf(), Expr::min_of(leaf(), leaf()));
    }
  };

  for (int attempt = 0; attempt < kTropicalRetries; ++attempt) {
    std::vector<Expr> coords;
    for (int i = 0; i < k; ++i) coords.push_back(coordinate());
    BoxMap m{std::move(coords)};
    if (!enclosure_self_map(m, sp.ambient)) continue;
    json ann{{"self-map-verified", true}};
    return {std::move(sp), {std::move(m)}, std::move(ann),
            "random max/min combination of damped affine coordinates; the "
            "interval image was checked against the ambient box"};
  }
  throw cap_exceeded("no self-map candidate passed the enclosure check",
                     {{"retries", kTropicalRetries}});
}

BoxBundle gen_box_interval_pair() {
  BoxSpace sp = make_box_space(make_box({Rat(-1)}, {Rat(1)}));
  std::vector<BoxMap> maps;
  maps.push_back(BoxMap{{Expr::scale(Rat(1, 3), Expr::var(0))}});
  maps.push_back(BoxMap{{Expr::scale(Rat(-1), Expr::var(0))}});
  json ann{{"fixed-point", json::array({"0"})},
           {"solve-ns", "common-fixed-point"}};
  return {std::move(sp), std::move(maps), std::move(ann),
          "a contraction and an isometry sharing the fixed point 0: descent "
          "stalls at the full interval, one center shrink resolves it"};
}

}  // namespace onx
