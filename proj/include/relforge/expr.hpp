#ifndef RELFORGE_EXPR_HPP_
#define RELFORGE_EXPR_HPP_

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "relforge/core.hpp"
#include "relforge/monoid.hpp"
#include "relforge/ops.hpp"
#include "relforge/relation.hpp"

namespace relforge {

//! A superposition expression: a finite tree of variable leaves, monoid
//! sums, and applications of one-variable relations.
//!
//! This is the output language of decomposition. Sums evaluate to all
//! combination sums of one value per child (so expression evaluation
//! coincides with relation addition by construction) and applications to
//! the union of images over the child's value set.
class Expr {
 public:
  enum class Kind { var, sum, apply };

  //! Variable leaf; indices are 1-based.
  static Expr var(unsigned index) {
    if (index == 0) fail(errc::bad_index, "variable indices are 1-based");
    Expr e(Kind::var);
    e.var_index_ = index;
    return e;
  }

  //! Sum node; needs at least one child.
  static Expr sum(std::vector<Expr> children) {
    if (children.empty())
      fail(errc::shape_error, "sum needs at least one child");
    Expr e(Kind::sum);
    e.children_ = std::move(children);
    return e;
  }

  //! Application of an arity-1 relation to a subexpression.
  static Expr apply(Relation rel, Expr child) {
    if (rel.arity() != 1)
      fail(errc::arity_mismatch, "apply needs an arity-1 relation");
    Expr e(Kind::apply);
    e.rel_ = std::move(rel);
    e.children_.push_back(std::move(child));
    return e;
  }

  Kind kind() const { return kind_; }

  unsigned var_index() const { return var_index_; }

  std::span<const Expr> children() const { return children_; }

  const Relation& rel() const { return *rel_; }

  const Expr& child() const { return children_.front(); }

  //! Number of top-level summands.
  std::size_t term_count() const {
    return kind_ == Kind::sum ? children_.size() : 1;
  }

  //! Largest variable index used anywhere in the tree.
  unsigned max_var() const {
    unsigned mx = kind_ == Kind::var ? var_index_ : 0;
    for (const Expr& c : children_) mx = std::max(mx, c.max_var());
    return mx;
  }

  friend bool operator==(const Expr&, const Expr&) = default;

 private:
  explicit Expr(Kind k) : kind_(k) {}

  Kind kind_;
  unsigned var_index_ = 0;
  std::vector<Expr> children_;  // one child for apply, >=1 for sum
  std::optional<Relation> rel_;
};

//! Multi-valued evaluation at an argument point.
inline ValueSet evaluate_expr(const Expr& e, std::span<const elem_t> point,
                              const Monoid& m) {
  switch (e.kind()) {
    case Expr::Kind::var: {
      if (e.var_index() > point.size())
        fail(errc::bad_index,
             "variable x" + std::to_string(e.var_index()) + " is outside 1.." +
                 std::to_string(point.size()));
      return ValueSet::single(point[e.var_index() - 1]);
    }
    case Expr::Kind::sum: {
      auto kids = e.children();
      ValueSet acc = evaluate_expr(kids.front(), point, m);
      for (std::size_t i = 1; i < kids.size(); ++i)
        acc = m.set_sum(acc, evaluate_expr(kids[i], point, m));
      return acc;
    }
    case Expr::Kind::apply: {
      if (e.rel().order() != m.order())
        fail(errc::order_mismatch,
             "relation order " + std::to_string(e.rel().order()) +
                 " does not match monoid order " + std::to_string(m.order()));
      const ValueSet inner = evaluate_expr(e.child(), point, m);
      ValueSet out;
      inner.for_each([&](elem_t y) { out |= eval1(e.rel(), y); });
      return out;
    }
  }
  fail(errc::shape_error, "malformed expression node");
}

inline ValueSet evaluate_expr(const Expr& e,
                              std::initializer_list<elem_t> point,
                              const Monoid& m) {
  return evaluate_expr(e, std::span<const elem_t>(point.begin(), point.size()),
                       m);
}

//! Tabulate an expression over all order^arity points.
inline Relation expr_to_relation(const Expr& e, unsigned arity,
                                 const Monoid& m) {
  if (e.max_var() > arity)
    fail(errc::bad_index, "expression uses x" + std::to_string(e.max_var()) +
                              " but arity is " + std::to_string(arity));
  Relation out(arity, m.order());
  std::vector<elem_t> p(arity);
  for (std::size_t i = 0; i < out.point_count(); ++i) {
    out.decode_point(i, p);
    out.set_cell(i, evaluate_expr(e, p, m));
  }
  return out;
}

}  // namespace relforge

#endif  // RELFORGE_EXPR_HPP_
