#include "onx/expr.hpp"

#include "onx/error.hpp"

namespace onx {

Expr Expr::constant(Rat v) {
  return Expr(std::make_shared<Node>(Node{Kind::Const, std::move(v), 0, {}}));
}

Expr Expr::var(int index) {
  if (index < 0) throw invalid_input("negative variable index", {{"index", index}});
  return Expr(std::make_shared<Node>(Node{Kind::Var, Rat(0), index, {}}));
}

Expr Expr::add(Expr a, Expr b) {
  return Expr(std::make_shared<Node>(
      Node{Kind::Add, Rat(0), 0, {std::move(a), std::move(b)}}));
}

Expr Expr::sub(Expr a, Expr b) {
  return Expr(std::make_shared<Node>(
      Node{Kind::Sub, Rat(0), 0, {std::move(a), std::move(b)}}));
}

Expr Expr::scale(Rat c, Expr e) {
  return Expr(std::make_shared<Node>(
      Node{Kind::Scale, std::move(c), 0, {std::move(e)}}));
}

Expr Expr::max_of(Expr a, Expr b) {
  return Expr(std::make_shared<Node>(
      Node{Kind::Max, Rat(0), 0, {std::move(a), std::move(b)}}));
}

Expr Expr::min_of(Expr a, Expr b) {
  return Expr(std::make_shared<Node>(
      Node{Kind::Min, Rat(0), 0, {std::move(a), std::move(b)}}));
}

int Expr::max_var() const {
  switch (kind()) {
    case Kind::Const: return -1;
    case Kind::Var: return index();
    case Kind::Scale: return child().max_var();
    default: {
      int l = left().max_var(), r = right().max_var();
      return l > r ? l : r;
    }
  }
}

std::size_t Expr::node_count() const {
  std::size_t c = 1;
  for (const auto& k : n_->kids) c += k.node_count();
  return c;
}

Rat eval_point(const Expr& e, const std::vector<Rat>& x) {
  switch (e.kind()) {
    case Expr::Kind::Const: return e.value();
    case Expr::Kind::Var: {
      int i = e.index();
      if (i >= static_cast<int>(x.size()))
        throw invalid_input("variable index out of range",
                            {{"index", i}, {"dim", x.size()}});
      return x[static_cast<std::size_t>(i)];
    }
    case Expr::Kind::Add: return eval_point(e.left(), x) + eval_point(e.right(), x);
    case Expr::Kind::Sub: return eval_point(e.left(), x) - eval_point(e.right(), x);
    case Expr::Kind::Scale: return e.value() * eval_point(e.child(), x);
    case Expr::Kind::Max: return rat_max(eval_point(e.left(), x), eval_point(e.right(), x));
    case Expr::Kind::Min: return rat_min(eval_point(e.left(), x), eval_point(e.right(), x));
  }
  throw invalid_input("corrupt expression node");
}

Interval eval_interval(const Expr& e, const Box& domain) {
  switch (e.kind()) {
    case Expr::Kind::Const: return {e.value(), e.value()};
    case Expr::Kind::Var: {
      int i = e.index();
      if (i >= domain.dim())
        throw invalid_input("variable index out of range",
                            {{"index", i}, {"dim", domain.dim()}});
      auto k = static_cast<std::size_t>(i);
      return {domain.lo[k], domain.hi[k]};
    }
    case Expr::Kind::Add: {
      Interval a = eval_interval(e.left(), domain), b = eval_interval(e.right(), domain);
      return {a.lo + b.lo, a.hi + b.hi};
    }
    case Expr::Kind::Sub: {
      Interval a = eval_interval(e.left(), domain), b = eval_interval(e.right(), domain);
      return {a.lo - b.hi, a.hi - b.lo};
    }
    case Expr::Kind::Scale: {
      Interval a = eval_interval(e.child(), domain);
      const Rat& c = e.value();
      return c >= 0 ? Interval{c * a.lo, c * a.hi} : Interval{c * a.hi, c * a.lo};
    }
    case Expr::Kind::Max: {
      Interval a = eval_interval(e.left(), domain), b = eval_interval(e.right(), domain);
      return {rat_max(a.lo, b.lo), rat_max(a.hi, b.hi)};
    }
    case Expr::Kind::Min: {
      Interval a = eval_interval(e.left(), domain), b = eval_interval(e.right(), domain);
      return {rat_min(a.lo, b.lo), rat_min(a.hi, b.hi)};
    }
  }
  throw invalid_input("corrupt expression node");
}

std::vector<Rat> map_point(const BoxMap& m, const std::vector<Rat>& x) {
  std::vector<Rat> out;
  out.reserve(m.coords.size());
  for (const auto& e : m.coords) out.push_back(eval_point(e, x));
  return out;
}

Box map_box_enclosure(const BoxMap& m, const Box& domain) {
  Box out;
  out.lo.reserve(m.coords.size());
  out.hi.reserve(m.coords.size());
  for (const auto& e : m.coords) {
    Interval iv = eval_interval(e, domain);
    out.lo.push_back(iv.lo);
    out.hi.push_back(iv.hi);
  }
  return out;
}

bool enclosure_self_map(const BoxMap& m, const Box& domain) {
  if (m.out_dim() != domain.dim()) return false;
  return box_subset(map_box_enclosure(m, domain), domain);
}

}  // namespace onx
