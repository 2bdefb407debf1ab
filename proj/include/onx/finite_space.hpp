#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "onx/point_set.hpp"
#include "onx/rat.hpp"

namespace onx {

// Finite metric space over points 0..n-1 with an exact rational distance
// matrix. Construction validates symmetry, zero diagonal, positivity off the
// diagonal, and the triangle inequality.
class FiniteSpace {
 public:
  static FiniteSpace build(std::vector<std::string> labels,
                           std::vector<std::vector<Rat>> dist);

  int n() const { return n_; }
  const std::string& label(int i) const { return labels_[static_cast<std::size_t>(i)]; }
  const Rat& d(int i, int j) const {
    return dist_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
                 static_cast<std::size_t>(j)];
  }
  Rat diameter() const;

  // {0} together with every pairwise distance, ascending. Every ball of the
  // space equals a ball at one of these radii, so they generate the lattice.
  const std::vector<Rat>& canonical_radii() const { return radii_; }

  PointSet all_points() const { return PointSet::full(n_); }

 private:
  FiniteSpace() = default;

  int n_ = 0;
  std::vector<std::string> labels_;
  std::vector<Rat> dist_;  // row-major n*n
  std::vector<Rat> radii_;
};

// sup of pairwise distances within A; 0 for singletons. A must be nonempty.
Rat delta(const FiniteSpace& sp, const PointSet& A);

// D(x, A) = max over a in A of d(x, a). A must be nonempty.
Rat radius_from(const FiniteSpace& sp, int x, const PointSet& A);

// Closed ball {y : d(x, y) <= r}; r must be >= 0.
PointSet ball(const FiniteSpace& sp, int x, const Rat& r);

// B[A, r] = intersection over a in A of ball(a, r). A must be nonempty.
PointSet ball_hull(const FiniteSpace& sp, const PointSet& A, const Rat& r);

// Smallest intersection of closed balls containing C: intersect, over every
// point x of the space, the ball at x with radius D(x, C). C must be nonempty.
PointSet cov(const FiniteSpace& sp, const PointSet& C);

inline bool is_admissible(const FiniteSpace& sp, const PointSet& A) {
  return !A.empty() && cov(sp, A) == A;
}

// All nonempty admissible subsets: balls at canonical radii, closed under
// pairwise intersection. Sorted by PointSet::canonical_less.
struct AdmissibleLattice {
  std::vector<PointSet> members;

  bool contains(const PointSet& s) const { return index_.count(s) > 0; }
  // -1 when absent.
  int index_of(const PointSet& s) const {
    auto it = index_.find(s);
    return it == index_.end() ? -1 : it->second;
  }

  void rebuild_index();

 private:
  std::unordered_map<PointSet, int, PointSet::Hash> index_;
};

inline constexpr std::size_t kDefaultLatticeCap = 100000;

// Throws cap_exceeded when more than `cap` distinct members appear.
AdmissibleLattice enumerate_admissible(const FiniteSpace& sp,
                                       std::size_t cap = kDefaultLatticeCap);

}  // namespace onx
