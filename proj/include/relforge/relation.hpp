#ifndef RELFORGE_RELATION_HPP_
#define RELFORGE_RELATION_HPP_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "relforge/core.hpp"
#include "relforge/valueset.hpp"

namespace relforge {

//! An additive relation of M variables over a carrier of a given order:
//! a table from argument points (b1,...,bM) to value sets.
//!
//! The table view and the tuple-set view { (b1,...,bM,b0) | b0 in
//! values(b1,...,bM) } are interconvertible without loss; empty cells are
//! undefined points and are first-class.
//!
//! Points are flattened with b1 most significant, so row k of the printed
//! table holds the points whose leading arity-1 coordinates have
//! lexicographic rank k and columns follow the last coordinate.
class Relation {
 public:
  Relation(unsigned arity, unsigned order)
      : arity_(arity), order_(order), cells_(checked_size(arity, order)) {}

  //! Undefined everywhere.
  static Relation empty(unsigned arity, unsigned order) {
    return Relation(arity, order);
  }

  //! Every cell = the full carrier.
  static Relation universal(unsigned arity, unsigned order) {
    return constant(arity, order, ValueSet::all(order));
  }

  //! Every cell = the given set.
  static Relation constant(unsigned arity, unsigned order, ValueSet v) {
    Relation r(arity, order);
    for (auto& cell : r.cells_) cell = v;
    return r;
  }

  //! The `o` relation: {0} in every point.
  static Relation zero(unsigned arity, unsigned order) {
    return constant(arity, order, ValueSet::single(0));
  }

  //! Arity-1 identity: x -> {x}.
  static Relation identity(unsigned order) {
    Relation r(1, order);
    for (elem_t x = 0; x < order; ++x) r.cells_[x] = ValueSet::single(x);
    return r;
  }

  //! Arity-1 single-valued total relation from its value row.
  static Relation function_row(unsigned order, std::span<const elem_t> row) {
    if (row.size() != order)
      fail(errc::shape_error, "value row length does not match order");
    Relation r(1, order);
    for (elem_t x = 0; x < order; ++x) {
      if (row[x] >= order)
        fail(errc::range_error, "row value " + std::to_string(row[x]) +
                                    " is outside 0.." +
                                    std::to_string(order - 1));
      r.cells_[x] = ValueSet::single(row[x]);
    }
    return r;
  }

  static Relation function_row(unsigned order,
                               std::initializer_list<elem_t> row) {
    return function_row(order, std::span<const elem_t>(row.begin(), row.size()));
  }

  //! Build from the tuple-set view.
  static Relation from_tuples(unsigned arity, unsigned order,
                              const std::vector<std::vector<elem_t>>& tuples) {
    Relation r(arity, order);
    for (const auto& t : tuples) {
      if (t.size() != std::size_t{arity} + 1)
        fail(errc::shape_error, "tuple length must be arity+1");
      for (elem_t e : t)
        if (e >= order)
          fail(errc::range_error,
               "tuple element " + std::to_string(e) + " is outside 0.." +
                   std::to_string(order - 1));
      ValueSet v = r.cells_[r.index_of(std::span(t.data(), arity))];
      v.insert(t[arity]);
      r.cells_[r.index_of(std::span(t.data(), arity))] = v;
    }
    return r;
  }

  unsigned arity() const { return arity_; }
  unsigned order() const { return order_; }
  std::size_t point_count() const { return cells_.size(); }

  ValueSet cell(std::size_t flat) const { return cells_[flat]; }
  void set_cell(std::size_t flat, ValueSet v) { cells_[flat] = v; }

  ValueSet at(std::span<const elem_t> point) const {
    return cells_[index_of(point)];
  }
  ValueSet at(std::initializer_list<elem_t> point) const {
    return at(std::span<const elem_t>(point.begin(), point.size()));
  }
  void set(std::span<const elem_t> point, ValueSet v) {
    cells_[index_of(point)] = v;
  }
  void set(std::initializer_list<elem_t> point, ValueSet v) {
    set(std::span<const elem_t>(point.begin(), point.size()), v);
  }

  std::size_t index_of(std::span<const elem_t> point) const {
    if (point.size() != arity_)
      fail(errc::arity_mismatch, "point has " + std::to_string(point.size()) +
                                     " coordinates, relation arity is " +
                                     std::to_string(arity_));
    std::size_t idx = 0;
    for (elem_t c : point) {
      if (c >= order_)
        fail(errc::range_error, "coordinate " + std::to_string(c) +
                                    " is outside 0.." +
                                    std::to_string(order_ - 1));
      idx = idx * order_ + c;
    }
    return idx;
  }

  //! Decode a flat index into coordinates (b1 first).
  void decode_point(std::size_t flat, std::span<elem_t> out) const {
    for (unsigned i = arity_; i-- > 0;) {
      out[i] = static_cast<elem_t>(flat % order_);
      flat /= order_;
    }
  }

  std::vector<elem_t> point_of(std::size_t flat) const {
    std::vector<elem_t> p(arity_);
    decode_point(flat, p);
    return p;
  }

  //! Tuple-set view, tuples in (point, value) lexicographic order.
  std::vector<std::vector<elem_t>> tuples() const {
    std::vector<std::vector<elem_t>> out;
    std::vector<elem_t> p(arity_);
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      decode_point(i, p);
      cells_[i].for_each([&](elem_t v) {
        std::vector<elem_t> t(p.begin(), p.end());
        t.push_back(v);
        out.push_back(std::move(t));
      });
    }
    return out;
  }

  std::size_t tuple_count() const {
    std::size_t n = 0;
    for (ValueSet c : cells_) n += c.size();
    return n;
  }

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  static std::size_t checked_size(unsigned arity, unsigned order) {
    if (arity == 0) fail(errc::shape_error, "relation arity must be >= 1");
    if (order == 0 || order > ValueSet::max_order)
      fail(errc::shape_error,
           "relation order must be in 1.." + std::to_string(ValueSet::max_order));
    return checked_pow(order, arity);
  }

  unsigned arity_;
  unsigned order_;
  std::vector<ValueSet> cells_;
};

//! Def-2.3 classification of a relation at one argument point.
inline PointClass classify_point(const Relation& r,
                                 std::span<const elem_t> point) {
  return classify(r.at(point));
}
inline PointClass classify_point(const Relation& r,
                                 std::initializer_list<elem_t> point) {
  return classify(r.at(point));
}

//! Value set at a point; empty when the relation is undefined there.
inline ValueSet eval(const Relation& r, std::span<const elem_t> point) {
  return r.at(point);
}
inline ValueSet eval(const Relation& r, std::initializer_list<elem_t> point) {
  return r.at(point);
}

//! Set-valued application: union of eval over the argument product
//! U1 x ... x UM. Empty as soon as one argument set is empty.
inline ValueSet image(const Relation& r, std::span<const ValueSet> args) {
  if (args.size() != r.arity())
    fail(errc::arity_mismatch, "image needs one value set per variable");
  for (ValueSet u : args)
    if (u.empty()) return ValueSet::none();

  ValueSet out;
  std::vector<elem_t> p(r.arity());
  // odometer over the member lists of each argument set
  std::vector<std::vector<elem_t>> members(r.arity());
  for (std::size_t i = 0; i < args.size(); ++i) {
    if ((args[i] & ValueSet::all(r.order())) != args[i])
      fail(errc::range_error, "argument set exceeds the carrier");
    args[i].for_each([&](elem_t v) { members[i].push_back(v); });
  }
  std::vector<std::size_t> pos(r.arity(), 0);
  while (true) {
    for (std::size_t i = 0; i < pos.size(); ++i) p[i] = members[i][pos[i]];
    out |= r.at(p);
    std::size_t i = pos.size();
    while (i-- > 0) {
      if (++pos[i] < members[i].size()) break;
      pos[i] = 0;
      if (i == 0) return out;
    }
  }
}

inline ValueSet image(const Relation& r, std::initializer_list<ValueSet> args) {
  return image(r, std::span<const ValueSet>(args.begin(), args.size()));
}

//! Arity-1 application sugar.
inline ValueSet eval1(const Relation& r, elem_t x) {
  const elem_t p[1] = {x};
  return r.at(std::span<const elem_t>(p, 1));
}

//! All 2^(order^(arity+1)) relations of the given shape, in tuple-bitmask
//! order. Guarded: only meaningful for tiny shapes.
inline std::vector<Relation> enumerate_relations(unsigned arity,
                                                 unsigned order) {
  const std::size_t tuples = checked_pow(order, arity + 1, 20);
  const std::size_t count = std::size_t{1} << tuples;
  std::vector<Relation> out;
  out.reserve(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    Relation r(arity, order);
    for (std::size_t t = 0; t < tuples; ++t)
      if ((mask >> t) & 1) {
        ValueSet v = r.cell(t / order);
        v.insert(static_cast<elem_t>(t % order));
        r.set_cell(t / order, v);
      }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace relforge

#endif  // RELFORGE_RELATION_HPP_
