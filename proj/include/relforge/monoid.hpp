#ifndef RELFORGE_MONOID_HPP_
#define RELFORGE_MONOID_HPP_

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "relforge/core.hpp"
#include "relforge/valueset.hpp"

namespace relforge {

//! A finite commutative monoid with identity pinned at element 0, given by
//! an explicit addition table.
//!
//! Construction validates closure, associativity, identity-at-0 and
//! commutativity exhaustively, and precomputes the indicator-faithfulness
//! degree D: the largest m such that the iterated sums
//! s_0 = 0, s_1 = 1, s_2 = 1+1, ... are pairwise distinct for k = 0..m.
//! D gates which decomposition shape is available (flat needs D >= arity,
//! nested needs D >= 2).
class Monoid {
 public:
  //! Validate and adopt a square addition table.
  static Monoid from_table(const std::vector<std::vector<elem_t>>& table) {
    const std::size_t n = table.size();
    std::vector<elem_t> flat;
    flat.reserve(n * n);
    for (const auto& row : table) {
      if (row.size() != n)
        fail(errc::shape_error, "monoid table is not square");
      flat.insert(flat.end(), row.begin(), row.end());
    }
    return from_flat_table(static_cast<unsigned>(n), std::move(flat));
  }

  //! Same validation over a row-major flat table.
  static Monoid from_flat_table(unsigned order, std::vector<elem_t> flat) {
    if (order == 0) fail(errc::shape_error, "monoid needs at least 1 element");
    if (flat.size() != std::size_t{order} * order)
      fail(errc::shape_error, "monoid table is not order*order");
    for (std::size_t i = 0; i < flat.size(); ++i)
      if (flat[i] >= order)
        fail(errc::range_error,
             "table entry " + std::to_string(flat[i]) + " at cell (" +
                 std::to_string(i / order) + "," + std::to_string(i % order) +
                 ") is outside 0.." + std::to_string(order - 1));

    Monoid m(order, std::move(flat));
    for (elem_t a = 0; a < order; ++a) {
      if (m.add(0, a) != a || m.add(a, 0) != a)
        fail(errc::no_identity_at_zero,
             "element 0 is not an identity at " + std::to_string(a));
    }
    for (elem_t a = 0; a < order; ++a)
      for (elem_t b = 0; b < order; ++b) {
        if (m.add(a, b) != m.add(b, a))
          fail(errc::not_commutative, "first violating pair (" +
                                          std::to_string(a) + "," +
                                          std::to_string(b) + ")");
        for (elem_t c = 0; c < order; ++c)
          if (m.add(m.add(a, b), c) != m.add(a, m.add(b, c)))
            fail(errc::not_associative,
                 "first violating triple (" + std::to_string(a) + "," +
                     std::to_string(b) + "," + std::to_string(c) + ")");
      }
    m.faithfulness_ = m.compute_faithfulness();
    return m;
  }

  //! Z_k: addition mod k.
  static Monoid mod(unsigned k) {
    if (k == 0) fail(errc::shape_error, "mod monoid needs k >= 1");
    std::vector<elem_t> t(std::size_t{k} * k);
    for (elem_t a = 0; a < k; ++a)
      for (elem_t b = 0; b < k; ++b) t[std::size_t{a} * k + b] = (a + b) % k;
    return from_flat_table(k, std::move(t));
  }

  //! Carrier {0..n} with a+b = min(a+b, n).
  static Monoid saturating(unsigned n) {
    const unsigned order = n + 1;
    std::vector<elem_t> t(std::size_t{order} * order);
    for (elem_t a = 0; a < order; ++a)
      for (elem_t b = 0; b < order; ++b)
        t[std::size_t{a} * order + b] = std::min(a + b, n);
    return from_flat_table(order, std::move(t));
  }

  unsigned order() const { return order_; }

  elem_t add(elem_t a, elem_t b) const {
    return table_[std::size_t{a} * order_ + b];
  }

  bool commutative() const { return true; }

  //! Indicator-faithfulness degree D (0 for the one-element monoid).
  unsigned faithfulness() const { return faithfulness_; }

  //! s_k: the k-fold sum 1+1+...+1, with s_0 = 0.
  elem_t iterated_one(unsigned k) const {
    if (order_ < 2 && k > 0)
      fail(errc::order_too_small, "element 1 does not exist at order 1");
    elem_t s = 0;
    for (unsigned i = 0; i < k; ++i) s = add(s, 1);
    return s;
  }

  //! Elementwise sum of two value sets: { a+b | a in x, b in y }.
  //! Empty absorbs, matching the addition rule for undefined points.
  ValueSet set_sum(ValueSet x, ValueSet y) const {
    ValueSet r;
    x.for_each([&](elem_t a) {
      y.for_each([&](elem_t b) { r.insert(add(a, b)); });
    });
    return r;
  }

  //! Row-major addition table.
  const std::vector<elem_t>& table() const { return table_; }

  friend bool operator==(const Monoid& a, const Monoid& b) {
    return a.order_ == b.order_ && a.table_ == b.table_;
  }

 private:
  Monoid(unsigned order, std::vector<elem_t> table)
      : order_(order), table_(std::move(table)) {}

  unsigned compute_faithfulness() const {
    if (order_ < 2) return 0;
    std::vector<bool> seen(order_, false);
    elem_t s = 0;
    seen[0] = true;
    for (unsigned k = 1; k <= order_; ++k) {
      s = add(s, 1);
      if (seen[s]) return k - 1;
      seen[s] = true;
    }
    return order_ - 1;  // unreachable: order values fill up first
  }

  unsigned order_;
  std::vector<elem_t> table_;
  unsigned faithfulness_ = 0;
};

}  // namespace relforge

#endif  // RELFORGE_MONOID_HPP_
