#pragma once

#include <memory>
#include <vector>

#include "onx/box.hpp"
#include "onx/rat.hpp"

namespace onx {

// lo <= hi always. Degenerate intervals are single points.
struct Interval {
  Rat lo, hi;
  bool contains(const Rat& x) const { return lo <= x && x <= hi; }
  bool subset_of(const Interval& o) const { return o.lo <= lo && hi <= o.hi; }
  bool operator==(const Interval&) const = default;
};

// Immutable expression tree over rational constants, coordinate variables,
// +, -, scalar multiple, max, min. Shared nodes make copies cheap.
class Expr {
 public:
  enum class Kind { Const, Var, Add, Sub, Scale, Max, Min };

  static Expr constant(Rat v);
  static Expr var(int index);
  static Expr add(Expr a, Expr b);
  static Expr sub(Expr a, Expr b);
  static Expr scale(Rat c, Expr e);
  static Expr max_of(Expr a, Expr b);
  static Expr min_of(Expr a, Expr b);

  Kind kind() const { return n_->kind; }
  const Rat& value() const { return n_->value; }  // Const value or Scale factor
  int index() const { return n_->index; }         // Var only
  const Expr& left() const { return n_->kids[0]; }
  const Expr& right() const { return n_->kids[1]; }
  const Expr& child() const { return n_->kids[0]; }  // Scale only

  // Largest variable index used, or -1 when none.
  int max_var() const;

  std::size_t node_count() const;

 private:
  struct Node {
    Kind kind;
    Rat value;
    int index = 0;
    std::vector<Expr> kids;
  };
  explicit Expr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

// Exact evaluation at a rational point. Throws invalid_input when a variable
// index falls outside x.
Rat eval_point(const Expr& e, const std::vector<Rat>& x);

// Interval enclosure of the range over the box. Sound (contains every point
// value) and inclusion-monotone; not minimal in general because repeated
// variables are evaluated independently.
Interval eval_interval(const Expr& e, const Box& domain);

// One expression per output coordinate.
struct BoxMap {
  std::vector<Expr> coords;
  int out_dim() const { return static_cast<int>(coords.size()); }
};

std::vector<Rat> map_point(const BoxMap& m, const std::vector<Rat>& x);

// Componentwise interval enclosure of the image of the box.
Box map_box_enclosure(const BoxMap& m, const Box& domain);

// True when the interval enclosure proves m maps the box into itself.
bool enclosure_self_map(const BoxMap& m, const Box& domain);

}  // namespace onx
