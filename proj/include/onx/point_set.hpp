#pragma once

#include <cstdint>
#include <vector>

#include "onx/error.hpp"

namespace onx {

// Subset of {0, ..., universe-1}, packed into 64-bit words. Universe size is
// fixed at construction; set operations require matching universes.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(int universe) : n_(universe), w_(words(universe), 0) {}

  static PointSet full(int universe) {
    PointSet s(universe);
    for (int i = 0; i < universe; ++i) s.add(i);
    return s;
  }
  static PointSet single(int universe, int i) {
    PointSet s(universe);
    s.add(i);
    return s;
  }
  static PointSet of(int universe, const std::vector<int>& elems) {
    PointSet s(universe);
    for (int i : elems) s.add(i);
    return s;
  }

  int universe() const { return n_; }

  bool contains(int i) const {
    check_index(i);
    return (w_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1u;
  }
  void add(int i) {
    check_index(i);
    w_[static_cast<std::size_t>(i) >> 6] |= std::uint64_t{1} << (i & 63);
  }
  void remove(int i) {
    check_index(i);
    w_[static_cast<std::size_t>(i) >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

  bool empty() const {
    for (auto w : w_)
      if (w) return false;
    return true;
  }
  int size() const {
    int c = 0;
    for (auto w : w_) c += __builtin_popcountll(w);
    return c;
  }
  // Smallest element, or -1 when empty.
  int first() const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k]) return static_cast<int>(k * 64) + __builtin_ctzll(w_[k]);
    return -1;
  }
  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (int i = 0; i < n_; ++i)
      if (contains(i)) out.push_back(i);
    return out;
  }

  PointSet operator&(const PointSet& o) const {
    check_universe(o);
    PointSet r(n_);
    for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] = w_[k] & o.w_[k];
    return r;
  }
  PointSet operator|(const PointSet& o) const {
    check_universe(o);
    PointSet r(n_);
    for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] = w_[k] | o.w_[k];
    return r;
  }
  PointSet& operator&=(const PointSet& o) {
    check_universe(o);
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
    return *this;
  }
  PointSet& operator|=(const PointSet& o) {
    check_universe(o);
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
    return *this;
  }

  bool subset_of(const PointSet& o) const {
    check_universe(o);
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & ~o.w_[k]) return false;
    return true;
  }

  bool operator==(const PointSet& o) const {
    return n_ == o.n_ && w_ == o.w_;
  }
  bool operator!=(const PointSet& o) const { return !(*this == o); }

  // Deterministic total order: by size, then by lowest differing element
  // (the set that contains it comes first). Used for canonical output order.
  static bool canonical_less(const PointSet& a, const PointSet& b) {
    int sa = a.size(), sb = b.size();
    if (sa != sb) return sa < sb;
    for (std::size_t k = 0; k < a.w_.size(); ++k) {
      std::uint64_t diff = a.w_[k] ^ b.w_[k];
      if (diff) {
        std::uint64_t low = diff & (~diff + 1);
        return (a.w_[k] & low) != 0;
      }
    }
    return false;
  }

  std::size_t hash() const {
    std::size_t h = static_cast<std::size_t>(n_) * 0x9e3779b97f4a7c15ull;
    for (auto w : w_) {
      h ^= static_cast<std::size_t>(w) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
  struct Hash {
    std::size_t operator()(const PointSet& s) const { return s.hash(); }
  };

 private:
  static std::size_t words(int n) {
    return static_cast<std::size_t>(n + 63) / 64;
  }
  void check_index(int i) const {
    if (i < 0 || i >= n_)
      throw invalid_input("point index out of range",
                          {{"index", i}, {"universe", n_}});
  }
  void check_universe(const PointSet& o) const {
    if (n_ != o.n_)
      throw invalid_input("point-set universe mismatch",
                          {{"lhs", n_}, {"rhs", o.n_}});
  }

  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace onx
